#include "gca/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace gca {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) fail(ErrorCode::IoError, "cannot read " + path);
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << text;
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json parse_json(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, where + ": " + e.what());
  }
}

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, where + ": missing \"" + key + "\"");
  return j.at(key);
}

void expect_format(const Json& j, const char* format, const std::string& where) {
  const auto& f = field(j, "format", where);
  if (!f.is_string() || f.get<std::string>() != format) {
    fail(ErrorCode::ParseError, where + ": expected format \"" + format + "\"");
  }
}

int to_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(ErrorCode::ParseError, where + ": expected an integer");
  return j.get<int>();
}

std::string to_string_field(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(ErrorCode::ParseError, where + ": expected a string");
  return j.get<std::string>();
}

cplx to_complex(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(ErrorCode::ParseError, where + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

std::vector<int> blocks_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorCode::ParseError, where + ": expected a list of block sizes");
  std::vector<int> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const int b = to_int(j[k], where + "[" + std::to_string(k) + "]");
    if (b < 1) fail(ErrorCode::ParseError, where + "[" + std::to_string(k) + "]: block sizes must be positive");
    out.push_back(b);
  }
  return out;
}

// Index from a name or an integer.
int resolve_index(const Json& j, const std::vector<std::string>& names, const std::string& where) {
  if (j.is_number_integer()) {
    const int v = j.get<int>();
    if (v < 0 || v >= static_cast<int>(names.size())) fail(ErrorCode::ParseError, where + ": index out of range");
    return v;
  }
  const auto name = to_string_field(j, where);
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return static_cast<int>(k);
  fail(ErrorCode::ParseError, where + ": unknown name \"" + name + "\"");
}

Vec vector_from_json(const Json& j, int size, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != size) {
    fail(ErrorCode::ParseError, where + ": expected " + std::to_string(size) + " entries");
  }
  Vec v(size);
  for (int k = 0; k < size; ++k) v(k) = to_complex(j[k], where + "[" + std::to_string(k) + "]");
  return v;
}

}  // namespace

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const Json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    fail(ErrorCode::ParseError, where + ": expected " + std::to_string(rows) + " rows");
  }
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const std::string at = where + " row " + std::to_string(r);
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
      fail(ErrorCode::ParseError, at + ": expected " + std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = to_complex(j[r][c], at + " col " + std::to_string(c));
  }
  return m;
}

// ---------------------------------------------------------------------------

Json spec_to_json(const GradedSpec& spec, const Json& metadata) {
  const auto& L = spec.lattice();
  Json j;
  j["format"] = "graded-spec/1";
  j["semilattice"] = {{"names", L.names()}, {"meet", L.table()}};
  Json comps = Json::object();
  for (int i = 0; i < spec.size(); ++i) comps[L.name(i)] = spec.component(i).blocks();
  j["components"] = std::move(comps);
  Json phi = Json::array();
  for (int i = 0; i < spec.size(); ++i)
    for (int k = 0; k < spec.size(); ++k)
      if (i != k && L.leq(i, k) && spec.has_phi(i, k))
        phi.push_back({{"from", L.name(k)}, {"to", L.name(i)}, {"matrix", matrix_to_json(spec.phi(i, k).matrix())}});
  j["phi"] = std::move(phi);
  j["closure"] = "all";
  j["metadata"] = metadata;
  return j;
}

GradedSpec spec_from_json(const Json& j) {
  expect_format(j, "graded-spec/1", "spec");
  const auto& sl = field(j, "semilattice", "spec");
  const auto& jnames = field(sl, "names", "semilattice");
  const auto& jmeet = field(sl, "meet", "semilattice");
  if (!jnames.is_array()) fail(ErrorCode::ParseError, "semilattice.names: expected a list");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < jnames.size(); ++k) names.push_back(to_string_field(jnames[k], "semilattice.names[" + std::to_string(k) + "]"));
  const int n = static_cast<int>(names.size());
  if (!jmeet.is_array() || static_cast<int>(jmeet.size()) != n) {
    fail(ErrorCode::ParseError, "semilattice.meet: expected " + std::to_string(n) + " rows");
  }
  std::vector<std::vector<int>> meet(n);
  for (int r = 0; r < n; ++r) {
    const std::string at = "semilattice.meet[" + std::to_string(r) + "]";
    if (!jmeet[r].is_array() || static_cast<int>(jmeet[r].size()) != n) fail(ErrorCode::ParseError, at + ": expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) meet[r].push_back(resolve_index(jmeet[r][c], names, at + "[" + std::to_string(c) + "]"));
  }
  const auto L = Semilattice::from_table(meet, names);

  const auto& jcomps = field(j, "components", "spec");
  if (!jcomps.is_object()) fail(ErrorCode::ParseError, "components: expected an object");
  std::vector<AlgebraShape> comps(n);
  std::vector<bool> seen(n, false);
  for (const auto& [key, value] : jcomps.items()) {
    const auto idx = L.index_of(key);
    if (!idx) fail(ErrorCode::ParseError, "components: unknown name \"" + key + "\"");
    comps[*idx] = AlgebraShape(blocks_from_json(value, "components." + key));
    seen[*idx] = true;
  }
  for (int i = 0; i < n; ++i)
    if (!seen[i]) fail(ErrorCode::ParseError, "components: missing \"" + names[i] + "\"");

  std::string closure = "all";
  if (j.contains("closure")) closure = to_string_field(j.at("closure"), "closure");
  if (closure != "all" && closure != "chains") fail(ErrorCode::ParseError, "closure: expected \"all\" or \"chains\"");

  const auto& jphi = field(j, "phi", "spec");
  if (!jphi.is_array()) fail(ErrorCode::ParseError, "phi: expected a list");
  std::map<std::pair<int, int>, StarHom> given;
  for (std::size_t k = 0; k < jphi.size(); ++k) {
    const std::string at = "phi[" + std::to_string(k) + "]";
    const int from = resolve_index(field(jphi[k], "from", at), names, at + ".from");
    const int to = resolve_index(field(jphi[k], "to", at), names, at + ".to");
    if (!L.leq(to, from)) fail(ErrorCode::ParseError, at + ": " + names[to] + " is not below " + names[from]);
    Mat m = matrix_from_json(field(jphi[k], "matrix", at), comps[to].dim(), comps[from].dim(), at + ".matrix");
    if (!given.emplace(std::make_pair(to, from), StarHom(comps[from], comps[to], std::move(m))).second) {
      fail(ErrorCode::ParseError, at + ": duplicate entry");
    }
  }
  if (closure == "chains") {
    for (const auto& [key, h] : given)
      if (key.first == key.second) fail(ErrorCode::ParseError, "phi: diagonal entries are implied under chain closure");
    return close_over_chains(L, comps, given);
  }
  GradedSpec spec(L, comps);
  for (auto& [key, h] : given) spec.set_phi(key.first, key.second, h);
  return spec;
}

Json element_to_json(const GradedSpec& spec, const GradedElement& x) {
  Json j;
  j["format"] = "graded-element/1";
  Json comps = Json::object();
  for (int i = 0; i < spec.size(); ++i) {
    Json v = Json::array();
    const Vec c = x.parts[i].to_vector();
    for (Eigen::Index k = 0; k < c.size(); ++k) v.push_back(complex_to_json(c(k)));
    comps[spec.lattice().name(i)] = std::move(v);
  }
  j["components"] = std::move(comps);
  return j;
}

GradedElement element_from_json(const GradedSpec& spec, const Json& j) {
  expect_format(j, "graded-element/1", "element");
  const auto& jcomps = field(j, "components", "element");
  if (!jcomps.is_object()) fail(ErrorCode::ParseError, "element.components: expected an object");
  auto x = GradedElement::zero(spec);
  for (const auto& [key, value] : jcomps.items()) {
    const auto idx = spec.lattice().index_of(key);
    if (!idx) fail(ErrorCode::ParseError, "element.components: unknown name \"" + key + "\"");
    const auto& s = spec.component(*idx);
    x.parts[*idx] = AlgElement::from_vector(s, vector_from_json(value, s.dim(), "element.components." + key));
  }
  return x;
}

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["format"] = "finite-group/1";
  j["names"] = g.names();
  j["mul"] = g.table();
  return j;
}

FiniteGroup group_from_json(const Json& j) {
  expect_format(j, "finite-group/1", "group");
  const auto& jnames = field(j, "names", "group");
  if (!jnames.is_array()) fail(ErrorCode::ParseError, "group.names: expected a list");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < jnames.size(); ++k) names.push_back(to_string_field(jnames[k], "group.names[" + std::to_string(k) + "]"));
  const auto& jmul = field(j, "mul", "group");
  const int n = static_cast<int>(names.size());
  if (!jmul.is_array() || static_cast<int>(jmul.size()) != n) fail(ErrorCode::ParseError, "group.mul: expected " + std::to_string(n) + " rows");
  std::vector<std::vector<int>> mul(n);
  for (int r = 0; r < n; ++r) {
    const std::string at = "group.mul[" + std::to_string(r) + "]";
    if (!jmul[r].is_array() || static_cast<int>(jmul[r].size()) != n) fail(ErrorCode::ParseError, at + ": expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) mul[r].push_back(resolve_index(jmul[r][c], names, at + "[" + std::to_string(c) + "]"));
  }
  return FiniteGroup::from_table(std::move(mul), std::move(names));
}

Json action_to_json(const GradedAction& act) {
  Json j;
  j["format"] = "graded-action/1";
  j["kind"] = "matrices";
  Json maps = Json::array();
  for (int g = 0; g < act.group.order(); ++g)
    for (int i = 0; i < act.spec.size(); ++i)
      maps.push_back({{"g", act.group.name(g)},
                      {"component", act.spec.lattice().name(i)},
                      {"matrix", matrix_to_json(act.maps[g][i].matrix())}});
  j["maps"] = std::move(maps);
  return j;
}

GradedAction action_from_json(const Json& j, const FiniteGroup& g, const GradedSpec& spec) {
  expect_format(j, "graded-action/1", "action");
  const auto kind = to_string_field(field(j, "kind", "action"), "action.kind");
  if (kind == "trivial") return GradedAction::trivial(g, spec);
  if (kind != "matrices") fail(ErrorCode::ParseError, "action.kind: expected \"matrices\" or \"trivial\"");
  const auto& jmaps = field(j, "maps", "action");
  if (!jmaps.is_array()) fail(ErrorCode::ParseError, "action.maps: expected a list");
  std::vector<std::vector<std::optional<StarHom>>> maps(g.order(), std::vector<std::optional<StarHom>>(spec.size()));
  for (std::size_t k = 0; k < jmaps.size(); ++k) {
    const std::string at = "action.maps[" + std::to_string(k) + "]";
    const int a = resolve_index(field(jmaps[k], "g", at), g.names(), at + ".g");
    const int i = resolve_index(field(jmaps[k], "component", at), spec.lattice().names(), at + ".component");
    const auto& s = spec.component(i);
    if (maps[a][i]) fail(ErrorCode::ParseError, at + ": duplicate entry");
    maps[a][i] = StarHom(s, s, matrix_from_json(field(jmaps[k], "matrix", at), s.dim(), s.dim(), at + ".matrix"));
  }
  GradedAction act{g, spec, {}};
  for (int a = 0; a < g.order(); ++a) {
    std::vector<StarHom> row;
    for (int i = 0; i < spec.size(); ++i) {
      if (!maps[a][i]) fail(ErrorCode::ParseError, "action.maps: no entry for (" + g.name(a) + ", " + spec.lattice().name(i) + ")");
      row.push_back(*maps[a][i]);
    }
    act.maps.push_back(std::move(row));
  }
  return act;
}

// ---------------------------------------------------------------------------

void Report::add_check(const std::string& name, bool passed, double max_residual, const std::string& detail) {
  Json c;
  c["name"] = name;
  c["status"] = passed ? "pass" : "fail";
  c["max_residual"] = max_residual;
  if (!detail.empty()) c["detail"] = detail;
  checks.push_back(std::move(c));
}

bool Report::all_passed() const {
  for (const auto& c : checks)
    if (c["status"] != "pass") return false;
  return true;
}

Json Report::to_json() const {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["input_digest"] = input_digest;
  j["seed"] = seed;
  j["checks"] = checks;
  j["result"] = result;
  if (timing_ms) j["timing_ms"] = *timing_ms;
  return j;
}

Json check_to_json(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["status"] = c.passed ? "pass" : "fail";
  j["max_residual"] = c.max_residual;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

}  // namespace gca
