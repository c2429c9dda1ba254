// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances below are fixed; do not tune them per run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "gca/io.hpp"
#include "gca/ktheory.hpp"
#include "gca/spectra.hpp"

using namespace gca;
using gca::fixtures::Named;

namespace {

constexpr double kNormIdentityTol = 1e-8;   // relative to 1 + |x|^2
constexpr double kNormOracleTol = 1e-8;     // relative
constexpr double kRoundTripTol = 1e-10;
constexpr double kSplitTol = 1e-9;
constexpr double kCharTol = 1e-8;
constexpr int kSamplesPerSpec = 50;
constexpr double kOracleRankTol = 1e-8;     // relative singular value cutoff

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what;
      pass = false;
    }
  }
};

int oracle_rank(const Mat& a) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > kOracleRankTol * s(0)) ++r;
  return r;
}

std::vector<Named> tensor_outputs() {
  return {{"diamond x chain-2", tensor_spec(build_all_scalar(Semilattice::diamond()), build_all_scalar(Semilattice::chain(2)))},
          {"m2-chain x chain-2", tensor_spec(m2_chain(), build_all_scalar(Semilattice::chain(2)))},
          {"m2-chain x mixed-diamond", tensor_spec(m2_chain(), mixed_diamond())},
          {"coset-z4 x m2-chain", tensor_spec(build_demo("coset-z4").spec, m2_chain())}};
}

struct CrossedCase {
  std::string name;
  GradedAction action;
};

std::vector<CrossedCase> crossed_cases() {
  std::vector<CrossedCase> out;
  out.push_back({"C(Z/2) x Z/2", translation_action(FiniteGroup::cyclic(2))});
  out.push_back({"C(Z/3) x Z/3", translation_action(FiniteGroup::cyclic(3))});
  out.push_back({"C(Z/2xZ/2) x Z/2xZ/2", translation_action(FiniteGroup::klein())});
  out.push_back({"C(S3) x S3", translation_action(FiniteGroup::symmetric3())});
  out.push_back({"coset-z4 x Z/4", *build_demo("coset-z4").action});
  out.push_back({"coset-s3 x S3", *build_demo("coset-s3").action});
  out.push_back({"m2-chain x Z/2 trivial", GradedAction::trivial(FiniteGroup::cyclic(2), m2_chain())});
  out.push_back({"mixed-diamond x Z/3 trivial", GradedAction::trivial(FiniteGroup::cyclic(3), mixed_diamond())});
  return out;
}

/// Quotient map A -> A/I for a block ideal, as a graded morphism.
GradedMorphism quotient_morphism(const GradedSpec& spec, const BlockSelection& ideal) {
  const auto rep = verify_ideal_gradation(spec, ideal);
  std::vector<StarHom> rho;
  for (int i = 0; i < spec.size(); ++i) {
    const auto& s = spec.component(i);
    const auto& q = rep.quotient.component(i);
    Mat m = Mat::Zero(q.dim(), s.dim());
    int qk = 0;
    for (int k = 0; k < s.block_count(); ++k) {
      if (std::find(ideal[i].begin(), ideal[i].end(), k) != ideal[i].end()) continue;
      for (int e = 0; e < s.block(k) * s.block(k); ++e) m(q.offset(qk) + e, s.offset(k) + e) = 1.0;
      ++qk;
    }
    rho.emplace_back(s, q, std::move(m));
  }
  return build_morphism(spec, rep.quotient, std::move(rho));
}

struct MorphismCase {
  std::string name;
  GradedMorphism morphism;
  bool expect_kernel = false;
};

std::vector<MorphismCase> morphism_suite() {
  const auto d = build_all_scalar(Semilattice::diamond());
  const auto c = AlgebraShape::scalars();
  std::vector<StarHom> chi;
  for (int i = 0; i < 4; ++i) chi.push_back(i == 1 || i == 3 ? StarHom::identity(c) : StarHom::zero(c, c));
  std::vector<StarHom> zero_rho;
  const auto m2 = m2_chain();
  for (const auto& s : m2.components()) zero_rho.push_back(StarHom::zero(s, s));

  std::vector<MorphismCase> out;
  out.push_back({"pi_bottom on all-scalar diamond", pi_morphism(d, 0)});
  out.push_back({"faithful image of mixed diamond", faithful_morphism(mixed_diamond())});
  out.push_back({"zero m2-chain -> M2", zero_morphism(m2, AlgebraShape({2}))});
  out.push_back({"identity on all-scalar diamond", identity_morphism(d)});
  out.push_back({"coset-s3 pullbacks into C(G)", coset_pullback_morphism(build_coset_spec(FiniteGroup::symmetric3(), {{0}, {0, 2}, {0, 3, 4}, {0, 1, 2, 3, 4, 5}})), true});
  out.push_back({"coset-z4 pullbacks into C(G)", coset_pullback_morphism(build_coset_spec(FiniteGroup::cyclic(4), {{0}, {0, 2}, {0, 1, 2, 3}})), true});
  out.push_back({"character of finishing {a,1}", build_morphism(d, c, chi)});
  out.push_back({"pi_a on mixed diamond", pi_morphism(mixed_diamond(), 1)});
  out.push_back({"identity on coset-z4", identity_morphism(build_demo("coset-z4").spec)});
  out.push_back({"quotient of diamond by its commencing part", quotient_morphism(d, {{0}, {0}, {0}, {}})});
  out.push_back({"quotient of mixed diamond by A_0", quotient_morphism(mixed_diamond(), {{0}, {}, {}, {}})});
  out.push_back({"graded zero on m2-chain", build_morphism(m2, m2, zero_rho)});
  return out;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  Rng rng(kDefaultSeed);
  int specs = 0;
  double worst = 0.0;
  for (const auto& c : fixtures::corpus()) {
    ++specs;
    for (int t = 0; t < kSamplesPerSpec; ++t) {
      const auto x = GradedElement::random(c.spec, rng);
      const double n = gnorm(c.spec, x);
      const double nn = gnorm(c.spec, gmul(c.spec, gadjoint(c.spec, x), x));
      const double rel = std::abs(nn - n * n) / (1 + n * n);
      worst = std::max(worst, rel);
      o.require(rel <= kNormIdentityTol, c.name);
    }
  }
  o.require(specs >= 5, "fewer than 5 specs");
  o.detail << (o.pass ? "" : "; ") << specs << " specs x " << kSamplesPerSpec << ", worst " << worst;
  return o;
}

Outcome criterion2() {
  Outcome o;
  Rng rng(kDefaultSeed);
  double worst = 0.0;
  for (const auto& c : fixtures::corpus()) {
    const auto iso = wedderburn_iso(faithful_basis(c.spec));
    for (int t = 0; t < kSamplesPerSpec; ++t) {
      const auto x = GradedElement::random(c.spec, rng);
      const double a = gnorm(c.spec, x);
      const double b = wedderburn_norm(iso, faithful_image(c.spec, x));
      const double rel = std::abs(a - b) / std::max(1.0, a);
      worst = std::max(worst, rel);
      o.require(rel <= kNormOracleTol, c.name);
    }
  }
  o.detail << (o.pass ? "" : "; ") << "worst relative gap " << worst;
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst = 0.0;
  auto specs = fixtures::corpus();
  for (auto& t : tensor_outputs()) specs.push_back(std::move(t));
  for (const auto& c : specs) {
    const double d = phi_distance(phi_from_q(q_from_phi(c.spec)), c.spec);
    worst = std::max(worst, d);
    o.require(d <= kRoundTripTol, c.name);
  }
  o.detail << (o.pass ? "" : "; ") << specs.size() << " specs, worst " << worst;
  return o;
}

Outcome criterion4() {
  Outcome o;
  int splits = 0;
  auto specs = fixtures::corpus();
  for (auto& t : tensor_outputs()) specs.push_back(std::move(t));
  for (const auto& c : specs) {
    for (int k = 0; k < c.spec.size(); ++k) {
      const auto m = finishing_set(c.spec.lattice(), k);
      const auto s = split_finishing(c.spec, m);
      // p o sigma must be the identity, bit for bit
      const Mat ps = s.projection * s.section;
      o.require(ps == Mat::Identity(ps.rows(), ps.cols()), c.name + " p o sigma");
      o.require(s.multiplicative_residual <= kSplitTol, c.name + " multiplicativity");
      int outside = 0;
      for (int i = 0; i < c.spec.size(); ++i)
        if (!contains(m, i)) outside += c.spec.component(i).dim();
      o.require(c.spec.total_dim() - oracle_rank(s.projection) == outside, c.name + " kernel dim");
      ++splits;
    }
  }
  o.detail << (o.pass ? "" : "; ") << splits << " splits";
  return o;
}

bool same_character_set(const std::vector<Character>& a, const std::vector<Character>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    int hits = 0;
    for (const auto& y : b) {
      const double d = (x.values - y.values).cwiseAbs().maxCoeff();
      if (d <= kCharTol) ++hits;
    }
    if (hits != 1) return false;
  }
  return true;
}

Outcome criterion5() {
  Outcome o;
  const auto d = build_all_scalar(Semilattice::diamond());
  const auto dc = brute_force_characters(d);
  o.require(dc.size() == 4, "diamond character count");
  o.require(enumerate_finishing_subsemilattices(d.lattice()).size() == 4, "diamond finishing count");
  o.require(finishing_correspondence(d).size() == 4, "diamond correspondence");
  for (int n = 2; n <= 8; ++n)
    o.require(brute_force_characters(build_all_scalar(Semilattice::chain(n))).size() == static_cast<std::size_t>(n),
              "chain-" + std::to_string(n));
  int compared = 0;
  auto specs = fixtures::commutative_corpus();
  specs.push_back(tensor_outputs()[0]);
  for (const auto& c : specs) {
    o.require(same_character_set(graded_characters(c.spec), brute_force_characters(c.spec)), c.name);
    ++compared;
  }
  o.detail << (o.pass ? "" : "; ") << "diamond 4, chains 2..8, " << compared << " commutative specs compared";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto d = build_all_scalar(Semilattice::diamond());
  const IndexSet m = {1, 3};  // {a, 1}
  const auto rm = restriction_spectrum_map(d, m);
  // Oracle: restrict each functional to span{e_a, e_1} and read off which
  // character of the sub-algebra it is (sub characters are indicator vectors
  // of up-sets inside {a, 1}).
  const std::vector<std::pair<int, int>> expected = {{0, 1}, {1, 1}, {2, 3}, {3, 3}};
  o.require(rm.entries.size() == 4, "entry count");
  for (std::size_t k = 0; k < rm.entries.size() && k < expected.size(); ++k) {
    const auto& e = rm.entries[k];
    const int src = e.source.tag->first;
    o.require(src == expected[k].first, "source order");
    o.require(e.image_tag.first == expected[k].second, "image of " + d.lattice().name(src));
    Vec restricted(2);
    restricted << cplx(d.lattice().leq(src, 1) ? 1.0 : 0.0), cplx(d.lattice().leq(src, 3) ? 1.0 : 0.0);
    o.require((restricted - e.image.values).cwiseAbs().maxCoeff() <= kCharTol, "oracle values");
  }
  o.detail << (o.pass ? "" : "; ") << "0->a, a->a, b->1, 1->1";
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto specs = fixtures::corpus();
  for (auto& t : tensor_outputs()) specs.push_back(std::move(t));
  for (auto& c : crossed_cases()) specs.push_back({c.name, crossed_product(c.action).spec});
  for (const auto& c : specs) {
    try {
      const auto r = verify_k0(c.spec);
      o.require(r.unimodular && std::abs(r.determinant) == 1, c.name + " unimodular");
      int sum = 0;
      for (int x : r.per_component_ranks) sum += x;
      o.require(sum == r.total_rank, c.name + " rank equality");
    } catch (const Error& e) {
      o.require(false, c.name + ": " + e.what());
    }
  }
  const auto m2 = verify_k0(m2_chain());
  o.require(m2.phi_matrix == std::vector<std::vector<long long>>{{1, 0}, {2, 1}}, "m2-chain phi_matrix");
  o.detail << (o.pass ? "" : "; ") << specs.size() << " specs; m2-chain [[1,0],[2,1]]";
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::klein(), FiniteGroup::symmetric3()}) {
    const auto cr = crossed_product(translation_action(g));
    const auto w = wedderburn(faithful_basis(cr.spec));
    o.require(w.block_dims == std::vector<int>{g.order()}, "C(G) x G for |G| = " + std::to_string(g.order()));
  }
  int outputs = 0;
  for (const auto& c : crossed_cases()) {
    const auto cr = crossed_product(c.action);
    o.require(validate_spec(cr.spec).ok(), c.name + " validate");
    o.require(cr.spec.total_dim() == c.action.group.order() * c.action.spec.total_dim(), c.name + " dimension");
    ++outputs;
  }
  o.detail << (o.pass ? "" : "; ") << "Z/2, Z/3, Z/2xZ/2, S3 single block; " << outputs << " outputs validated";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const auto corpus = fixtures::corpus();
  std::vector<std::pair<const Named*, const Named*>> pairs;
  for (std::size_t a = 0; a < corpus.size(); ++a)
    for (std::size_t b = a; b < corpus.size(); ++b)
      if (corpus[a].spec.total_dim() * corpus[b].spec.total_dim() <= 150) pairs.push_back({&corpus[a], &corpus[b]});
  int intersection_pairs = 0;
  for (const auto& [a, b] : pairs) {
    const auto name = a->name + " x " + b->name;
    const auto t = tensor_spec(a->spec, b->spec);
    o.require(validate_spec(t).ok(), name + " validate");
    o.require(t.total_dim() == a->spec.total_dim() * b->spec.total_dim(), name + " dimension");
    o.require(is_commutative(t) == (is_commutative(a->spec) && is_commutative(b->spec)), name + " commutativity");
    o.require(tensor_intersection_property(a->spec, b->spec).ok(), name + " intersection");
    ++intersection_pairs;
  }
  o.require(intersection_pairs >= 3, "fewer than 3 intersection pairs");
  o.detail << (o.pass ? "" : "; ") << pairs.size() << " tensor outputs, " << intersection_pairs << " intersection tests";
  return o;
}

Outcome criterion10() {
  Outcome o;
  const std::vector<std::pair<int, bool>> table = {{1, false}, {1, true}, {2, false}, {2, true}};
  for (int n = 2; n <= 5; ++n) {
    const auto g = genus_of_line_arrangement(n);
    o.require(g.genus == table[n - 2].first && g.pinched == table[n - 2].second, "n = " + std::to_string(n));
  }
  for (int n = 2; n <= 50; ++n)
    o.require(genus_of_line_arrangement(n).vertex_orbits == std::gcd(n - 1, 2 * n), "orbits n = " + std::to_string(n));
  o.detail << (o.pass ? "" : "; ") << "n = 2..5 table, orbits for n = 2..50";
  return o;
}

/// Total map rebuilt from images of the basis, independently of total().
Mat total_by_basis(const GradedMorphism& m) {
  const auto& spec = m.source();
  Mat t(m.target().dim(), spec.total_dim());
  for (int g = 0; g < spec.total_dim(); ++g) {
    const auto [i, local] = spec.locate(g);
    t.col(g) = m.piece(i).col(local);
  }
  return t;
}

Outcome criterion11(const std::vector<MorphismCase>& suite) {
  Outcome o;
  int with_kernel = 0;
  for (const auto& c : suite) {
    const auto a = analyze_morphism(c.morphism);
    const Mat t = total_by_basis(c.morphism);
    const int r = oracle_rank(t);
    o.require(a.injective == (r == t.cols()), c.name + " injective");
    o.require(a.surjective == (r == t.rows()), c.name + " surjective");
    if (c.expect_kernel) {
      o.require(a.total_kernel_dim > 0 && t.cols() - r > 0, c.name + " kernel");
      ++with_kernel;
    }
  }
  o.require(suite.size() >= 10, "suite smaller than 10");
  o.detail << (o.pass ? "" : "; ") << suite.size() << " morphisms, " << with_kernel << " coset pullbacks with kernel";
  return o;
}

Outcome criterion12(const std::vector<MorphismCase>& suite) {
  Outcome o;
  int graded = 0;
  for (const auto& c : suite) {
    if (!c.morphism.target().is_graded()) continue;
    ++graded;
    const Mat t = total_by_basis(c.morphism);
    int ker_sum = 0;
    for (const auto& rho : c.morphism.graded_pieces()) ker_sum += rho.source().dim() - oracle_rank(rho.matrix());
    o.require(t.cols() - oracle_rank(t) == ker_sum, c.name);
    o.require(analyze_morphism(c.morphism).kernel_sum_matches.value_or(false), c.name + " report");
  }
  o.require(graded >= 3, "fewer than 3 graded morphisms");
  o.detail << (o.pass ? "" : "; ") << graded << " graded morphisms";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C*-norm identity", criterion1},
      {"norm uniqueness oracle", criterion2},
      {"reconstruction round-trip", criterion3},
      {"split exactness", criterion4},
      {"character counts", criterion5},
      {"restriction map", criterion6},
      {"K0", criterion7},
      {"crossed product", criterion8},
      {"tensor product", criterion9},
      {"genus table", criterion10},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  auto report = [&](int k, const std::string& name, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", k, name.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
  };
  for (std::size_t k = 0; k < criteria.size(); ++k) report(static_cast<int>(k + 1), criteria[k].first, criteria[k].second);

  std::vector<MorphismCase> suite;
  try {
    suite = morphism_suite();
  } catch (const std::exception& e) {
    std::printf("morphism suite construction failed: %s\n", e.what());
  }
  report(11, "morphism criteria", [&] { return criterion11(suite); });
  report(12, "kernel decomposition", [&] { return criterion12(suite); });

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 12 criteria failed (%.1f s)\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
