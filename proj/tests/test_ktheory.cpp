#include <gtest/gtest.h>

#include <functional>

#include "corpus.hpp"
#include "gca/ktheory.hpp"

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

std::vector<AlgElement> full_basis(const AlgebraShape& s) {
  std::vector<AlgElement> out;
  for (int b = 0; b < s.dim(); ++b) out.push_back(AlgElement::basis(s, b));
  return out;
}

}  // namespace

TEST(Wedderburn, FullShape) {
  const auto w = wedderburn(full_basis(AlgebraShape({2, 3})));
  EXPECT_EQ(w.block_dims, (std::vector<int>{2, 3}));
  EXPECT_EQ(w.center_dim, 2);
  EXPECT_LE(w.projection_residual, kWedderburnTol);
}

TEST(Wedderburn, Diagonals) {
  const auto w = wedderburn(full_basis(AlgebraShape({1, 1, 1, 1})));
  EXPECT_EQ(w.block_dims, (std::vector<int>{1, 1, 1, 1}));
}

TEST(Wedderburn, M2ChainTotalAlgebra) {
  const auto spec = m2_chain();
  const auto iso = wedderburn_iso(faithful_basis(spec));
  EXPECT_EQ(iso.shape, AlgebraShape({2, 1}));
  EXPECT_LE(iso.unit_residual, kWedderburnTol);
}

TEST(Wedderburn, RejectsNonClosedSpans) {
  const AlgebraShape m2({2});
  // span{E_11, E_12}: not *-closed
  EXPECT_EQ(code_of([&] { wedderburn({AlgElement::basis(m2, 0), AlgElement::basis(m2, 1)}); }),
            ErrorCode::NotStarClosed);
  // span{E_12 + E_21}: squares to the unit, not closed under products
  EXPECT_EQ(code_of([&] { wedderburn({AlgElement::basis(m2, 1) + AlgElement::basis(m2, 2)}); }),
            ErrorCode::NotSubalgebra);
}

TEST(WedderburnProperty, IsomorphismIsMultiplicative) {
  Rng rng(47);
  for (const auto& c : corpus()) {
    SCOPED_TRACE(c.name);
    const auto basis = faithful_basis(c.spec);
    const auto iso = wedderburn_iso(basis);
    EXPECT_EQ(iso.shape.dim(), c.spec.total_dim());
    for (int t = 0; t < 5; ++t) {
      const auto x = faithful_image(c.spec, GradedElement::random(c.spec, rng));
      const auto y = faithful_image(c.spec, GradedElement::random(c.spec, rng));
      const auto tx = AlgElement::from_vector(iso.shape, iso.to_shape * x.to_vector());
      const auto ty = AlgElement::from_vector(iso.shape, iso.to_shape * y.to_vector());
      const Vec txy = iso.to_shape * (x * y).to_vector();
      EXPECT_LE((txy - (tx * ty).to_vector()).cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_LE((iso.from_shape * tx.to_vector() - x.to_vector()).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(K0, AllScalarDiamond) {
  const auto r = verify_k0(build_all_scalar(Semilattice::diamond()));
  EXPECT_EQ(r.per_component_ranks, (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(r.total_rank, 4);
  EXPECT_TRUE(r.unimodular);
  EXPECT_EQ(r.k1_rank, 0);
}

TEST(K0, M2Chain) {
  const auto r = verify_k0(m2_chain());
  EXPECT_EQ(r.per_component_ranks, (std::vector<int>{1, 1}));
  EXPECT_EQ(r.total_rank, 2);
  EXPECT_EQ(r.phi_matrix, (std::vector<std::vector<long long>>{{1, 0}, {2, 1}}));
  EXPECT_EQ(r.determinant, 1);
}

TEST(K0, SingleM3) {
  GradedSpec s(Semilattice::chain(1), {AlgebraShape({3})});
  const auto r = verify_k0(s);
  EXPECT_EQ(r.phi_matrix, (std::vector<std::vector<long long>>{{1}}));
}

TEST(K0, EveryCorpusSpec) {
  for (const auto& c : corpus()) {
    SCOPED_TRACE(c.name);
    const auto r = verify_k0(c.spec);
    EXPECT_TRUE(r.unimodular);
    EXPECT_EQ(std::abs(r.determinant), 1);
    EXPECT_EQ(static_cast<int>(r.phi_matrix.size()), r.total_rank);
  }
}

TEST(K0, IntegerDeterminant) {
  EXPECT_EQ(integer_determinant({{2, 1}, {1, 1}}), 1);
  EXPECT_EQ(integer_determinant({{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(integer_determinant({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}), 0);
  EXPECT_EQ(integer_determinant({{0, 0, 2}, {0, 3, 0}, {5, 0, 0}}), -30);
}

TEST(K0Property, SeedIndependent) {
  for (const auto& c : corpus()) {
    const auto a = verify_k0(c.spec, 1), b = verify_k0(c.spec, 99);
    EXPECT_EQ(a.total_block_dims, b.total_block_dims) << c.name;
    EXPECT_EQ(a.phi_matrix, b.phi_matrix) << c.name;
  }
}
