#include <gtest/gtest.h>

#include <functional>

#include "corpus.hpp"
#include "gca/graded.hpp"

using namespace gca;
using gca::fixtures::corpus;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

GradedElement scalars(const GradedSpec& spec, std::vector<cplx> v) {
  Vec x(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) x(k) = v[k];
  return GradedElement::from_vector(spec, x);
}

double gdistance(const GradedSpec& spec, const GradedElement& a, const GradedElement& b) {
  (void)spec;
  return (a.to_vector() - b.to_vector()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Validate, AllScalarPasses) {
  for (const auto& L : {Semilattice::diamond(), Semilattice::chain(5), Semilattice::antichain_over_bottom(3)}) {
    const auto r = validate_spec(build_all_scalar(L));
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.max_residual(), 0.0);
  }
}

TEST(Validate, M2ChainPasses) { EXPECT_TRUE(validate_spec(m2_chain()).ok()); }

TEST(Validate, AxiomBViolationIsReportedWithTuple) {
  const auto r = validate_spec(axiom_b_violation());
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(*r.error, ErrorCode::AxiomBViolation);
  EXPECT_NE(r.error_detail.find("(i, j, m, x, y)"), std::string::npos);
  EXPECT_EQ(code_of([] { ensure_valid(axiom_b_violation()); }), ErrorCode::AxiomBViolation);
}

TEST(Validate, MissingAndNonIdentityDiagonal) {
  GradedSpec missing(Semilattice::chain(2), {AlgebraShape::scalars(), AlgebraShape::scalars()});
  EXPECT_EQ(*validate_spec(missing).error, ErrorCode::MissingHom);

  auto bad_a = build_all_scalar(Semilattice::chain(2));
  bad_a.set_phi(1, 1, StarHom::zero(AlgebraShape::scalars(), AlgebraShape::scalars()));
  EXPECT_EQ(*validate_spec(bad_a).error, ErrorCode::AxiomAViolation);

  auto not_star = build_all_scalar(Semilattice::chain(2));
  not_star.set_phi(0, 1, StarHom(AlgebraShape::scalars(), AlgebraShape::scalars(), Mat::Constant(1, 1, 2.0)));
  EXPECT_EQ(*validate_spec(not_star).error, ErrorCode::HomNotStar);
}

TEST(Validate, ChainClosureDetectsPathDependence) {
  const auto c = AlgebraShape::scalars();
  std::map<std::pair<int, int>, StarHom> cover;
  cover.emplace(std::make_pair(0, 1), StarHom::identity(c));
  cover.emplace(std::make_pair(0, 2), StarHom::zero(c, c));
  cover.emplace(std::make_pair(1, 3), StarHom::identity(c));
  cover.emplace(std::make_pair(2, 3), StarHom::identity(c));
  EXPECT_EQ(code_of([&] { close_over_chains(Semilattice::diamond(), {c, c, c, c}, cover); }),
            ErrorCode::PathDependent);
  cover.erase(std::make_pair(0, 2));
  cover.emplace(std::make_pair(0, 2), StarHom::identity(c));
  const auto s = close_over_chains(Semilattice::diamond(), {c, c, c, c}, cover);
  EXPECT_TRUE(s == build_all_scalar(Semilattice::diamond()));
}

TEST(Validate, EveryCorpusSpecPasses) {
  for (const auto& c : corpus()) EXPECT_TRUE(validate_spec(c.spec).ok()) << c.name;
}

TEST(StructureApplications, Examples) {
  const auto d = build_all_scalar(Semilattice::diamond());
  const auto one = AlgElement::unit(AlgebraShape::scalars());
  const auto q = q_from_phi(d, 1, 2, one, one);
  EXPECT_EQ(q.block(0)(0, 0), cplx(1.0));

  const auto s = m2_chain();
  Rng rng(5);
  const auto m = AlgElement::random(AlgebraShape({2}), rng);
  const auto lambda = cplx(2.0, -1.0) * one;
  EXPECT_LE(distance(q_from_phi(s, 1, 0, lambda, m), cplx(2.0, -1.0) * m), 1e-15);
  const auto x = AlgElement::random(AlgebraShape({2}), rng);
  EXPECT_LE(distance(q_from_phi(s, 0, 0, x, m), x * m), 1e-15);
}

TEST(StructureApplications, AxiomsHoldOnCorpus) {
  for (const auto& c : corpus()) {
    const auto chk = check_q_axioms(q_from_phi(c.spec));
    EXPECT_TRUE(chk.ok(1e-10)) << c.name;
  }
}

TEST(Reconstruction, RoundTrip) {
  for (const auto& c : corpus()) {
    const auto back = phi_from_q(q_from_phi(c.spec));
    EXPECT_LE(phi_distance(back, c.spec), 1e-10) << c.name;
    for (int i = 0; i < c.spec.size(); ++i)
      EXPECT_LE((back.phi(i, i).matrix() - Mat::Identity(c.spec.component(i).dim(), c.spec.component(i).dim()))
                    .cwiseAbs()
                    .maxCoeff(),
                1e-12);
  }
}

TEST(Reconstruction, RejectsBrokenFamily) {
  auto q = q_from_phi(m2_chain());
  q.q(1, 1) *= 2.0;
  EXPECT_EQ(code_of([&] { phi_from_q(q); }), ErrorCode::QAxiomViolation);
}

TEST(Multiplication, AllScalarIdempotents) {
  const auto d = build_all_scalar(Semilattice::diamond());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto p = gmul(d, GradedElement::unit_at(d, i), GradedElement::unit_at(d, j));
      EXPECT_EQ(gdistance(d, p, GradedElement::unit_at(d, d.lattice().meet(i, j))), 0.0);
    }
}

TEST(Multiplication, TopUnitActsThroughPhi) {
  const auto s = mixed_diamond();
  Rng rng(17);
  const auto x = GradedElement::random(s, rng);
  const auto top = GradedElement::unit_at(s, 3);
  const auto p = gmul(s, x, top);
  // Oracle: x_i placed back at index i, since phi(i, 3)(1) = 1 for every i.
  for (int i = 0; i < s.size(); ++i) EXPECT_LE(distance(p.parts[i], x.parts[i]), 1e-14);
}

TEST(MultiplicationProperty, StarAlgebraAxioms) {
  Rng rng(23);
  for (const auto& c : corpus()) {
    for (int t = 0; t < 5; ++t) {
      const auto x = GradedElement::random(c.spec, rng), y = GradedElement::random(c.spec, rng),
                 z = GradedElement::random(c.spec, rng);
      EXPECT_LE(gdistance(c.spec, gadjoint(c.spec, gmul(c.spec, x, y)), gmul(c.spec, gadjoint(c.spec, y), gadjoint(c.spec, x))),
                1e-10);
      EXPECT_LE(gdistance(c.spec, gmul(c.spec, gmul(c.spec, x, y), z), gmul(c.spec, x, gmul(c.spec, y, z))), 1e-10);
    }
  }
}

TEST(Representations, PiRep) {
  const auto s = build_all_scalar(Semilattice::chain(2));
  const auto x = scalars(s, {-1.0, 1.0});
  EXPECT_EQ(pi_rep(s, 1, x).block(0)(0, 0), cplx(1.0));
  EXPECT_EQ(pi_rep(s, 0, x).block(0)(0, 0), cplx(0.0));
  EXPECT_EQ(gnorm(s, x), 1.0);
  const auto d = build_all_scalar(Semilattice::diamond());
  EXPECT_EQ(gnorm(d, GradedElement::unit_at(d, 0)), 1.0);
  EXPECT_EQ(gnorm(d, GradedElement::zero(d)), 0.0);
  // supported at a only: pi_b vanishes
  EXPECT_TRUE(pi_rep(d, 2, GradedElement::unit_at(d, 1)).is_zero());
}

TEST(RepresentationsProperty, MaximalSupportIsPiImage) {
  Rng rng(29);
  for (const auto& c : corpus()) {
    const auto& L = c.spec.lattice();
    for (int m = 0; m < c.spec.size(); ++m) {
      // x supported on the down-set of m: m is maximal in its support.
      auto x = GradedElement::zero(c.spec);
      for (int i = 0; i < c.spec.size(); ++i)
        if (L.leq(i, m)) x.parts[i] = AlgElement::random(c.spec.component(i), rng);
      EXPECT_EQ(distance(pi_rep(c.spec, m, x), x.parts[m]), 0.0);
    }
  }
}

TEST(RepresentationsProperty, FaithfulImage) {
  Rng rng(31);
  for (const auto& c : corpus()) {
    EXPECT_EQ(numerical_rank(faithful_image_map(c.spec)), c.spec.total_dim()) << c.name;
    const auto x = GradedElement::random(c.spec, rng);
    EXPECT_EQ(gnorm(c.spec, x), op_norm(faithful_image(c.spec, x)));
    const Vec via_map = faithful_image_map(c.spec) * x.to_vector();
    EXPECT_LE((via_map - faithful_image(c.spec, x).to_vector()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Norm, ChainStepFunctionOracle) {
  Rng rng(37);
  for (int n = 1; n <= 8; ++n) {
    const auto s = build_all_scalar(Semilattice::chain(n));
    for (int t = 0; t < 10; ++t) {
      const Vec lambda = rng.complex_vector(n);
      // Step function sum_i lambda_i 1_(-inf, i], sampled at t = 0..n-1 and t = n.
      double oracle = 0.0;
      for (int p = 0; p <= n; ++p) {
        cplx v = 0.0;
        for (int i = p; i < n; ++i) v += lambda(i);
        oracle = std::max(oracle, std::abs(v));
      }
      EXPECT_NEAR(gnorm(s, GradedElement::from_vector(s, lambda)), oracle, 1e-12 * (1 + oracle));
    }
  }
}

TEST(Commutativity, Detection) {
  EXPECT_TRUE(is_commutative(build_all_scalar(Semilattice::diamond())));
  EXPECT_FALSE(is_commutative(m2_chain()));
  EXPECT_TRUE(is_commutative(nonunital_chain()));
}

TEST(Split, Examples) {
  const auto d = build_all_scalar(Semilattice::diamond());
  const auto full = split_finishing(d, {0, 1, 2, 3});
  EXPECT_EQ(full.projection, Mat::Identity(4, 4));
  const auto s = split_finishing(d, {1, 3});
  EXPECT_TRUE(project_finishing(d, {1, 3}, GradedElement::unit_at(d, 0)).parts[0].is_zero());
  EXPECT_TRUE(project_finishing(d, {1, 3}, GradedElement::unit_at(d, 2)).parts[1].is_zero());
  EXPECT_EQ(project_finishing(d, {1, 3}, GradedElement::unit_at(d, 1)).parts[0].block(0)(0, 0), cplx(1.0));
  EXPECT_EQ(s.kernel_dim, 2);
  EXPECT_EQ(code_of([&] { split_finishing(d, {0, 1}); }), ErrorCode::NotFinishing);
  // the counterexample behind the rejection
  EXPECT_GT(projection_multiplicative_residual(d, {0, 1}), 0.5);
}

TEST(SplitProperty, ExactOnCorpus) {
  for (const auto& c : corpus()) {
    for (int k = 0; k < c.spec.size(); ++k) {
      const auto m = finishing_set(c.spec.lattice(), k);
      const auto s = split_finishing(c.spec, m);
      EXPECT_TRUE(s.section_exact);
      EXPECT_LE(s.multiplicative_residual, 1e-9);
      int outside = 0;
      for (int i = 0; i < c.spec.size(); ++i)
        if (!contains(m, i)) outside += c.spec.component(i).dim();
      EXPECT_EQ(s.kernel_dim, outside);
    }
  }
}

TEST(Ideals, Examples) {
  const auto d = build_all_scalar(Semilattice::diamond());
  const auto all = verify_ideal_gradation(d, {{0}, {0}, {0}, {0}});
  EXPECT_EQ(all.quotient.total_dim(), 0);
  const auto none = verify_ideal_gradation(d, {{}, {}, {}, {}});
  EXPECT_TRUE(none.quotient == d);
  const auto commencing = verify_ideal_gradation(d, {{0}, {0}, {0}, {}});
  EXPECT_EQ(commencing.quotient.total_dim(), 1);
  EXPECT_EQ(commencing.quotient.component(3), AlgebraShape::scalars());
  EXPECT_TRUE(commencing.quotient_validation.ok());
  EXPECT_EQ(code_of([&] { verify_ideal_gradation(d, {{}, {}, {}, {0}}); }), ErrorCode::NotAnIdeal);
  // a block of a non-commutative component
  const auto m = mixed_diamond();
  EXPECT_EQ(verify_ideal_gradation(m, {{0}, {}, {}, {}}).quotient.total_dim(), 4);
}

TEST(Morphisms, ExamplesOnDiamond) {
  const auto d = build_all_scalar(Semilattice::diamond());
  const auto c = AlgebraShape::scalars();
  const auto pi0 = analyze_morphism(pi_morphism(d, 0));
  EXPECT_TRUE(pi0.surjective);
  EXPECT_FALSE(pi0.injective);
  EXPECT_EQ(pi0.total_kernel_dim, 3);

  const auto id = analyze_morphism(identity_morphism(d));
  EXPECT_TRUE(id.injective && id.surjective);
  EXPECT_TRUE(*id.kernel_sum_matches);

  const auto z = analyze_morphism(zero_morphism(d, c));
  EXPECT_EQ(z.total_kernel_dim, 4);

  // chi of the finishing set {a, 1}
  std::vector<StarHom> chi;
  for (int i = 0; i < 4; ++i) chi.push_back(i == 1 || i == 3 ? StarHom::identity(c) : StarHom::zero(c, c));
  EXPECT_NO_THROW(build_morphism(d, c, chi));
  // {0, a} is not finishing
  std::vector<StarHom> bad;
  for (int i = 0; i < 4; ++i) bad.push_back(i <= 1 ? StarHom::identity(c) : StarHom::zero(c, c));
  EXPECT_EQ(code_of([&] { build_morphism(d, c, bad); }), ErrorCode::IncompatibleFamily);

  const auto f = analyze_morphism(faithful_morphism(mixed_diamond()));
  EXPECT_TRUE(f.injective);
  // target is the direct sum of the components, so equal dimension forces onto
  EXPECT_TRUE(f.surjective);
}

TEST(MorphismsProperty, PiMorphismReproducesPiRep) {
  Rng rng(41);
  for (const auto& c : corpus()) {
    const auto x = GradedElement::random(c.spec, rng);
    for (int i = 0; i < c.spec.size(); ++i) {
      const Vec got = pi_morphism(c.spec, i).apply(x);
      EXPECT_LE((got - pi_rep(c.spec, i, x).to_vector()).cwiseAbs().maxCoeff(), 1e-13);
    }
  }
}
