#include <gtest/gtest.h>

#include <functional>

#include "corpus.hpp"
#include "gca/ktheory.hpp"
#include "gca/products.hpp"

using namespace gca;

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

GradedSpec one_component(const AlgebraShape& s) { return GradedSpec(Semilattice::chain(1), {s}); }

}  // namespace

TEST(Groups, Tables) {
  const auto s3 = FiniteGroup::symmetric3();
  EXPECT_EQ(s3.order(), 6);
  EXPECT_EQ(s3.names(), (std::vector<std::string>{"e", "(23)", "(12)", "(123)", "(132)", "(13)"}));
  const int t = *s3.index_of("(12)"), r = *s3.index_of("(123)");
  EXPECT_NE(s3.mul(t, r), s3.mul(r, t));
  EXPECT_EQ(s3.mul(r, s3.mul(r, r)), s3.identity());
  EXPECT_EQ(FiniteGroup::klein().order(), 4);
  const auto z2z2 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  for (int a = 0; a < 4; ++a) EXPECT_EQ(z2z2.mul(a, a), z2z2.identity());
  EXPECT_EQ(code_of([] { FiniteGroup::from_table({{0, 1}, {0, 1}}); }), ErrorCode::NotAGroup);
}

TEST(Groups, Cosets) {
  const auto z4 = FiniteGroup::cyclic(4);
  EXPECT_TRUE(z4.is_subgroup({0, 2}));
  EXPECT_FALSE(z4.is_subgroup({0, 1}));
  EXPECT_EQ(z4.left_cosets({0, 2}), (std::vector<IndexSet>{{0, 2}, {1, 3}}));
}

TEST(CosetSpecs, Dimensions) {
  const auto z4 = build_demo("coset-z4").spec;
  EXPECT_EQ(z4.component(0).dim(), 4);
  EXPECT_EQ(z4.component(1).dim(), 2);
  EXPECT_EQ(z4.component(2).dim(), 1);
  const auto s3 = build_demo("coset-s3").spec;
  std::vector<int> dims;
  for (int i = 0; i < s3.size(); ++i) dims.push_back(s3.component(i).dim());
  EXPECT_EQ(dims, (std::vector<int>{6, 3, 2, 1}));
  EXPECT_TRUE(validate_spec(s3).ok());
}

TEST(CosetSpecs, Errors) {
  const auto s3 = FiniteGroup::symmetric3();
  const int e = s3.identity(), t = *s3.index_of("(12)"), u = *s3.index_of("(23)");
  EXPECT_EQ(code_of([&] { build_coset_spec(s3, {{e, t, u}}); }), ErrorCode::NotASubgroup);
  // {e,(12)} and {e,(23)} without their intersection {e}
  EXPECT_EQ(code_of([&] { build_coset_spec(s3, {{e, t}, {e, u}}); }), ErrorCode::NotIntersectionClosed);
}

TEST(CosetSpecs, PullbackHasKernel) {
  const auto s3 = FiniteGroup::symmetric3();
  const int e = s3.identity(), t = *s3.index_of("(12)");
  const auto cs = build_coset_spec(s3, {{e}, {e, t}});
  const auto a = analyze_morphism(coset_pullback_morphism(cs));
  // f - phi(K, H)(f) is killed for each f on G/H.
  EXPECT_EQ(a.total_kernel_dim, 3);
  EXPECT_FALSE(a.injective);
}

TEST(Actions, CosetTranslationIsValid) {
  for (const char* name : {"coset-z4", "coset-s3"}) {
    const auto d = build_demo(name);
    const auto chk = validate_action(*d.action);
    EXPECT_EQ(chk.composition_residual, 0.0);
    EXPECT_EQ(chk.equivariance_residual, 0.0);
  }
}

TEST(Actions, RejectsNonEquivariant) {
  // Z/2 swapping the points of C^2 in a chain where phi(0, 1) = (1, 0) is not swap-invariant.
  const auto spec = nonunital_chain();
  const auto g = FiniteGroup::cyclic(2);
  auto act = GradedAction::trivial(g, spec);
  Mat swap = Mat::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  act.maps[1][0] = StarHom(AlgebraShape({1, 1}), AlgebraShape({1, 1}), swap);
  EXPECT_EQ(code_of([&] { validate_action(act); }), ErrorCode::ActionInvalid);
}

TEST(Tensor, AllScalarProduct) {
  const auto t = tensor_spec(build_all_scalar(Semilattice::diamond()), build_all_scalar(Semilattice::chain(2)));
  EXPECT_TRUE(t.all_scalar());
  EXPECT_EQ(t.size(), 8);
  EXPECT_TRUE(t == build_all_scalar(product_semilattice(Semilattice::diamond(), Semilattice::chain(2))));
}

TEST(Tensor, M2ChainWithScalarChain) {
  const auto t = tensor_spec(m2_chain(), build_all_scalar(Semilattice::chain(2)));
  EXPECT_TRUE(validate_spec(t).ok());
  EXPECT_EQ(t.total_dim(), 10);
}

TEST(TensorProperty, CorpusPairs) {
  const auto c = fixtures::corpus();
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a; b < 5; ++b) {
      SCOPED_TRACE(c[a].name + " x " + c[b].name);
      const auto t = tensor_spec(c[a].spec, c[b].spec);
      EXPECT_TRUE(validate_spec(t).ok());
      EXPECT_EQ(t.total_dim(), c[a].spec.total_dim() * c[b].spec.total_dim());
      EXPECT_EQ(is_commutative(t), is_commutative(c[a].spec) && is_commutative(c[b].spec));
      EXPECT_TRUE(tensor_intersection_property(c[a].spec, c[b].spec).ok());
    }
}

TEST(Crossed, TrivialGroupReproducesInput) {
  for (const auto& c : fixtures::corpus()) {
    if (c.spec.total_dim() > 16) continue;
    SCOPED_TRACE(c.name);
    const auto cr = crossed_product(GradedAction::trivial(FiniteGroup::cyclic(1), c.spec));
    EXPECT_TRUE(cr.validation.ok());
    EXPECT_EQ(cr.spec.total_dim(), c.spec.total_dim());
    EXPECT_EQ(verify_k0(cr.spec).total_block_dims, verify_k0(c.spec).total_block_dims);
  }
}

TEST(Crossed, RegularRepresentationIsOneBlock) {
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::klein(), FiniteGroup::symmetric3()}) {
    const auto act = translation_action(g);
    const auto cr = crossed_product(act);
    ASSERT_EQ(cr.spec.size(), 1);
    EXPECT_EQ(cr.spec.component(0), AlgebraShape({g.order()}));
    const auto w = wedderburn(faithful_basis(cr.spec));
    EXPECT_EQ(w.block_dims, std::vector<int>{g.order()});
  }
}

TEST(Crossed, CosetS3) {
  const auto d = build_demo("coset-s3");
  const auto cr = crossed_product(*d.action);
  EXPECT_TRUE(cr.validation.ok());
  for (int i = 0; i < d.spec.size(); ++i) EXPECT_EQ(cr.spec.component(i).dim(), 6 * d.spec.component(i).dim());
  EXPECT_EQ(cr.independence_rank, cr.expected_rank);
  EXPECT_LE(cr.multiplier_residual, 1e-9);
}

TEST(Crossed, TrivialActionOnNonCommutative) {
  const auto cr = crossed_product(GradedAction::trivial(FiniteGroup::cyclic(2), m2_chain()));
  EXPECT_EQ(cr.spec.total_dim(), 2 * m2_chain().total_dim());
  // M_2 x Z/2 with trivial action is M_2 ⊕ M_2.
  EXPECT_EQ(cr.spec.component(0), AlgebraShape({2, 2}));
}

TEST(Crossed, OneComponentShapes) {
  const auto cr = crossed_product(GradedAction::trivial(FiniteGroup::cyclic(3), one_component(AlgebraShape::scalars())));
  EXPECT_EQ(cr.spec.component(0), AlgebraShape({1, 1, 1}));
}
