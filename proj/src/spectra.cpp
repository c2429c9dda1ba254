#include "gca/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace gca {

namespace {

bool values_less(const Vec& a, const Vec& b) {
  for (Eigen::Index t = 0; t < a.size(); ++t) {
    if (std::abs(a(t).real() - b(t).real()) > kCharacterTol) return a(t).real() < b(t).real();
    if (std::abs(a(t).imag() - b(t).imag()) > kCharacterTol) return a(t).imag() < b(t).imag();
  }
  return false;
}

// Total-basis index of the adjoint of each basis element.
std::vector<int> adjoint_index(const GradedSpec& spec) {
  std::vector<int> out(spec.total_dim());
  for (int g = 0; g < spec.total_dim(); ++g) {
    const auto [i, local] = spec.locate(g);
    const auto u = spec.component(i).decode(local);
    out[g] = spec.offset(i) + spec.component(i).encode(u.block, u.col, u.row);
  }
  return out;
}

void require_commutative_components(const GradedSpec& spec) {
  for (int i = 0; i < spec.size(); ++i) {
    if (!spec.component(i).commutative() && !spec.component(i).is_zero()) {
      fail(ErrorCode::ComponentNotCommutative, "component " + spec.lattice().name(i) + " is " + spec.component(i).str());
    }
  }
}

// Index of the unique character within tol of target, or -1.
int unique_match(const std::vector<Character>& pool, const Character& target) {
  int found = -1;
  for (int k = 0; k < static_cast<int>(pool.size()); ++k) {
    if (character_distance(pool[k], target) <= kCharacterTol) {
      if (found >= 0) return -1;
      found = k;
    }
  }
  return found;
}

}  // namespace

double character_distance(const Character& a, const Character& b) {
  if (a.values.size() != b.values.size()) return std::numeric_limits<double>::infinity();
  return a.values.size() == 0 ? 0.0 : (a.values - b.values).cwiseAbs().maxCoeff();
}

double character_residual(const GradedSpec& spec, const ProductTable& table, const Character& chi) {
  const auto adj = adjoint_index(spec);
  const auto row = chi.values.transpose();
  double r = 0.0;
  for (int a = 0; a < table.dim; ++a) {
    const Eigen::RowVectorXcd prod = row * table.left[a];
    for (int b = 0; b < table.dim; ++b) r = std::max(r, std::abs(prod(b) - chi.values(a) * chi.values(b)));
    r = std::max(r, std::abs(chi.values(adj[a]) - std::conj(chi.values(a))));
  }
  return r;
}

std::vector<Character> brute_force_characters(const GradedSpec& spec, std::uint64_t seed) {
  const auto table = product_table(spec);
  const double comm = commutator_residual(table);
  if (comm > kBasisTol) {
    std::ostringstream os;
    os << "total algebra is not commutative (residual " << comm << ")";
    fail(ErrorCode::NotCommutative, os.str());
  }
  const int d = spec.total_dim();
  Rng rng(seed);
  for (int attempt = 1; attempt <= 8; ++attempt) {
    const auto x = GradedElement::random(spec, rng);
    const Vec h = gadd(spec, x, gadjoint(spec, x)).to_vector();
    Mat lh = Mat::Zero(d, d);
    for (int a = 0; a < d; ++a) lh += h(a) * table.left[a];
    Eigen::ComplexEigenSolver<Mat> eig(lh);
    if (eig.info() != Eigen::Success) continue;
    const Vec& lambda = eig.eigenvalues();
    double sep = std::numeric_limits<double>::infinity();
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) sep = std::min(sep, std::abs(lambda(a) - lambda(b)));
    if (sep < kSeparationTol) continue;

    std::vector<Character> chars;
    bool ok = true;
    for (int k = 0; k < d && ok; ++k) {
      const Vec v = eig.eigenvectors().col(k);
      Character chi;
      chi.values.resize(d);
      const double vv = v.squaredNorm();
      for (int a = 0; a < d; ++a) chi.values(a) = v.dot(table.left[a] * v) / vv;
      ok = character_residual(spec, table, chi) <= kCharacterTol;
      chars.push_back(std::move(chi));
    }
    if (!ok) continue;
    std::sort(chars.begin(), chars.end(), [](const Character& a, const Character& b) { return values_less(a.values, b.values); });
    return chars;
  }
  fail(ErrorCode::DegenerateGenerator, "no generic self-adjoint element after 8 attempts");
}

std::vector<Character> graded_characters(const GradedSpec& spec, std::uint64_t seed) {
  require_commutative_components(spec);
  const Mat f = faithful_image_map(spec);
  std::vector<Character> chars;
  for (int i = 0; i < spec.size(); ++i) {
    for (int p = 0; p < spec.component(i).dim(); ++p) {
      Character chi;
      chi.values = f.row(spec.offset(i) + p).transpose();
      chi.tag = std::make_pair(i, p);
      chars.push_back(std::move(chi));
    }
  }
  for (std::size_t a = 0; a < chars.size(); ++a)
    for (std::size_t b = a + 1; b < chars.size(); ++b)
      if (character_distance(chars[a], chars[b]) <= kCharacterTol) {
        fail(ErrorCode::CoverageMismatch, "characters at (" + spec.lattice().name(chars[a].tag->first) + ", " +
                                              std::to_string(chars[a].tag->second) + ") and (" +
                                              spec.lattice().name(chars[b].tag->first) + ", " +
                                              std::to_string(chars[b].tag->second) + ") coincide");
      }
  const auto oracle = brute_force_characters(spec, seed);
  if (oracle.size() != chars.size()) {
    fail(ErrorCode::CoverageMismatch, std::to_string(chars.size()) + " graded characters against " +
                                          std::to_string(oracle.size()) + " from diagonalization");
  }
  std::vector<bool> used(oracle.size(), false);
  for (const auto& chi : chars) {
    const int k = unique_match(oracle, chi);
    if (k < 0 || used[k]) {
      fail(ErrorCode::CoverageMismatch, "character at (" + spec.lattice().name(chi.tag->first) + ", " +
                                            std::to_string(chi.tag->second) + ") has no unique match");
    }
    used[k] = true;
  }
  return chars;
}

std::vector<FinishingPair> finishing_correspondence(const GradedSpec& spec, std::uint64_t seed) {
  const auto& L = spec.lattice();
  for (int i = 0; i < spec.size(); ++i) {
    if (spec.component(i) != AlgebraShape::scalars()) fail(ErrorCode::NotAllScalar, "component " + L.name(i));
    for (int j = 0; j < spec.size(); ++j)
      if (L.leq(i, j) && std::abs(spec.phi(i, j).matrix()(0, 0) - cplx(1.0)) > kCharacterTol)
        fail(ErrorCode::NotAllScalar, "phi(" + L.name(i) + ", " + L.name(j) + ") is not the identity");
  }
  const auto chars = brute_force_characters(spec, seed);
  const auto sets = enumerate_finishing_subsemilattices(L);
  if (chars.size() != sets.size()) {
    fail(ErrorCode::BijectionFailure, std::to_string(chars.size()) + " characters against " +
                                          std::to_string(sets.size()) + " finishing sub-semilattices");
  }
  std::vector<std::optional<FinishingPair>> slots(sets.size());
  for (const auto& chi : chars) {
    IndexSet m;
    for (int i = 0; i < spec.size(); ++i) {
      const cplx v = chi.values(i);
      if (std::abs(v - cplx(1.0)) <= kCharacterTol) {
        m.push_back(i);
      } else if (std::abs(v) > kCharacterTol) {
        fail(ErrorCode::BijectionFailure, "character value on e_" + L.name(i) + " is neither 0 nor 1");
      }
    }
    if (!is_finishing_subsemilattice(L, m)) fail(ErrorCode::BijectionFailure, format_set(L, m) + " is not finishing");
    const auto it = std::find(sets.begin(), sets.end(), m);
    const auto pos = static_cast<std::size_t>(it - sets.begin());
    if (it == sets.end() || slots[pos]) fail(ErrorCode::BijectionFailure, format_set(L, m) + " is hit twice");
    Character inverse;
    inverse.values = Vec::Zero(spec.size());
    for (int i : m) inverse.values(i) = 1.0;
    if (character_distance(inverse, chi) > kCharacterTol) {
      fail(ErrorCode::BijectionFailure, "indicator of " + format_set(L, m) + " does not reproduce its character");
    }
    Character tagged = chi;
    tagged.finishing_set = m;
    slots[pos] = FinishingPair{std::move(tagged), m};
  }
  std::vector<FinishingPair> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

RestrictionMap restriction_spectrum_map(const GradedSpec& spec, const IndexSet& m_in, std::uint64_t seed) {
  const auto& L = spec.lattice();
  const IndexSet m = make_index_set(m_in);
  if (m.empty() || !is_subsemilattice(L, m)) fail(ErrorCode::NotSubsemilattice, format_set(L, m) + " is not meet-closed");
  require_commutative_components(spec);

  RestrictionMap out;
  out.subset = m;
  out.sub = restrict_spec(spec, m);
  std::vector<int> sub_index(spec.size(), -1);
  for (std::size_t r = 0; r < m.size(); ++r) sub_index[m[r]] = static_cast<int>(r);

  // m(i) for every index.
  std::vector<int> least(spec.size(), -1);
  for (int i = 0; i < spec.size(); ++i) {
    IndexSet above;
    for (int j : m)
      if (L.leq(i, j)) above.push_back(j);
    if (above.empty()) fail(ErrorCode::NotCofinal, L.name(i) + " lies below no element of " + format_set(L, m));
    const int candidate = meet_of_set(L, above);
    if (!contains(above, candidate)) fail(ErrorCode::NoLeastElement, "above " + L.name(i));
    least[i] = candidate;
    const Vec one = spec.phi(i, candidate).apply(AlgElement::unit(spec.component(candidate)).to_vector());
    const Vec unit_i = AlgElement::unit(spec.component(i)).to_vector();
    const double r = one.size() == 0 ? 0.0 : (one - unit_i).cwiseAbs().maxCoeff();
    out.unital_residual = std::max(out.unital_residual, r);
    if (r > kCharacterTol) {
      fail(ErrorCode::NonUnitalStructureMap, "phi(" + L.name(i) + ", " + L.name(candidate) + ") is not unital");
    }
  }

  const auto full_chars = graded_characters(spec, seed);
  const auto sub_chars = graded_characters(out.sub, seed);
  const auto oracle = brute_force_characters(spec, seed);
  const auto sub_oracle = brute_force_characters(out.sub, seed);

  // Total-basis coordinates of the M-components inside the full spec.
  std::vector<int> coords;
  for (int i : m)
    for (int a = 0; a < spec.component(i).dim(); ++a) coords.push_back(spec.offset(i) + a);

  for (const auto& chi : full_chars) {
    const auto [i, p] = *chi.tag;
    const int mi = least[i];
    const auto& h = spec.phi(i, mi);
    int point = -1;
    for (int q = 0; q < spec.component(mi).dim(); ++q)
      if (std::abs(h.matrix()(p, q) - cplx(1.0)) <= kCharacterTol) point = q;
    if (point < 0) fail(ErrorCode::NonUnitalStructureMap, "no point of " + L.name(mi) + " above (" + L.name(i) + ", " + std::to_string(p) + ")");
    const auto it = std::find_if(sub_chars.begin(), sub_chars.end(), [&](const Character& c) {
      return c.tag->first == sub_index[mi] && c.tag->second == point;
    });

    RestrictionEntry e;
    e.source = chi;
    e.least = mi;
    e.image = *it;
    e.image_tag = {mi, point};

    const int k = unique_match(oracle, chi);
    if (k < 0) fail(ErrorCode::OracleMismatch, "no diagonalized character matches (" + L.name(i) + ", " + std::to_string(p) + ")");
    Character restricted;
    restricted.values.resize(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t c = 0; c < coords.size(); ++c) restricted.values(static_cast<Eigen::Index>(c)) = oracle[k].values(coords[c]);
    const double r = character_distance(restricted, e.image);
    out.oracle_residual = std::max(out.oracle_residual, r);
    if (r > kCharacterTol || unique_match(sub_oracle, restricted) < 0) {
      fail(ErrorCode::OracleMismatch, "restriction of (" + L.name(i) + ", " + std::to_string(p) + ") disagrees with the oracle");
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

GenusReport genus_of_line_arrangement(int n) {
  if (n < 2) fail(ErrorCode::BadN, "n = " + std::to_string(n) + ", need n >= 2");
  GenusReport g;
  g.n = n;
  const int v = 2 * n;

  std::vector<bool> seen(v, false);
  for (int s = 0; s < v; ++s) {
    if (seen[s]) continue;
    ++g.vertex_orbits;
    for (int j = s; !seen[j]; j = (j + n - 1) % v) seen[j] = true;
  }
  g.gcd = std::gcd(n - 1, v);

  // Edge j runs v_j -> v_{j+1}; edge n+j carries the inverse letter, so its
  // endpoints are glued in reverse: v_j ~ v_{n+j+1}, v_{j+1} ~ v_{n+j}.
  std::vector<int> parent(v);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int j = 0; j < n; ++j) {
    unite(j, (n + j + 1) % v);
    unite((j + 1) % v, (n + j) % v);
  }
  for (int x = 0; x < v; ++x) g.surface_vertices += find(x) == x;

  g.edges = n;
  g.faces = 1;
  g.euler_char = g.surface_vertices - g.edges + g.faces;
  g.genus = (2 - g.euler_char) / 2;
  g.pinched = g.surface_vertices > 1;
  return g;
}

}  // namespace gca
