#include <gtest/gtest.h>

#include <omp.h>

#include "corpus.hpp"
#include "gca/kernels/kernels.hpp"

using namespace gca;
namespace k = gca::kernels;

namespace {

std::vector<fixtures::Named> kernel_corpus() {
  auto out = fixtures::corpus();
  out.push_back({"axiom-b-violation", axiom_b_violation()});
  out.push_back({"tensor", tensor_spec(m2_chain(), mixed_diamond())});
  return out;
}

void expect_same(const k::AxiomBResult& a, const k::AxiomBResult& b) {
  EXPECT_NEAR(a.max_residual, b.max_residual, 1e-14);
  EXPECT_EQ(std::tie(a.i, a.j, a.m, a.x, a.y), std::tie(b.i, b.j, b.m, b.x, b.y));
}

}  // namespace

TEST(Kernels, AxiomBSerialMatchesParallel) {
  for (const auto& c : kernel_corpus()) {
    SCOPED_TRACE(c.name);
    expect_same(k::serial::axiom_b(c.spec), k::parallel::axiom_b(c.spec));
  }
}

TEST(Kernels, AxiomBViolationLocated) {
  const auto r = k::serial::axiom_b(axiom_b_violation());
  EXPECT_GT(r.max_residual, 0.5);
  EXPECT_EQ(r.m, 0);
}

TEST(Kernels, ProductTableSerialMatchesParallel) {
  for (const auto& c : kernel_corpus()) {
    SCOPED_TRACE(c.name);
    const auto a = k::serial::product_table(c.spec), b = k::parallel::product_table(c.spec);
    ASSERT_EQ(a.dim, b.dim);
    for (int x = 0; x < a.dim; ++x) EXPECT_LE((a.left[x] - b.left[x]).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Kernels, QAssociativitySerialMatchesParallel) {
  for (const auto& c : kernel_corpus()) {
    SCOPED_TRACE(c.name);
    const auto q = q_from_phi(c.spec);
    EXPECT_NEAR(k::serial::q_associativity(q), k::parallel::q_associativity(q), 1e-14);
  }
  auto broken = q_from_phi(mixed_diamond());
  broken.q(1, 2) *= cplx(0.0, 1.0);
  EXPECT_GT(k::serial::q_associativity(broken), 0.1);
  EXPECT_NEAR(k::serial::q_associativity(broken), k::parallel::q_associativity(broken), 1e-14);
}

TEST(Kernels, PairProductsSerialMatchesParallel) {
  Rng rng(43);
  std::vector<AlgElement> elems;
  for (int t = 0; t < 12; ++t) elems.push_back(AlgElement::random(AlgebraShape({1, 3, 2}), rng));
  const auto a = k::serial::pair_products(elems), b = k::parallel::pair_products(elems);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t t = 0; t < a.size(); ++t) EXPECT_LE((a[t] - b[t]).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Kernels, ParallelIndependentOfThreadCount) {
  const auto spec = tensor_spec(mixed_diamond(), mixed_diamond());
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = k::parallel::axiom_b(spec);
  omp_set_num_threads(std::max(2, saved));
  const auto many = k::parallel::axiom_b(spec);
  omp_set_num_threads(saved);
  EXPECT_EQ(one.max_residual, many.max_residual);
  EXPECT_EQ(std::tie(one.i, one.j, one.m, one.x, one.y), std::tie(many.i, many.j, many.m, many.x, many.y));
}
