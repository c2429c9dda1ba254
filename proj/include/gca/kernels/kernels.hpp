#pragma once

// Data-parallel inner loops of the library. Each kernel exists twice with the
// same signature: an OpenMP version used by the library, and a direct serial
// transcription of the defining formula kept as the reference the tests
// compare against. Parallel results are merged in a fixed order, so they do
// not depend on the thread count.

#include <vector>

#include "gca/graded.hpp"

namespace gca::kernels {

/// Worst axiom b) residual and the (i, j, m, x, y) tuple where it occurs;
/// x and y are local basis indices of A_i and A_j.
struct AxiomBResult {
  double max_residual = 0.0;
  int i = -1, j = -1, m = -1, x = -1, y = -1;
};

/// Products of a list of block-algebra elements, all pairs: entry
/// [a * n + b] is vec(elems[a] * elems[b]).
using PairProducts = std::vector<Vec>;

namespace serial {
AxiomBResult axiom_b(const GradedSpec& spec);
ProductTable product_table(const GradedSpec& spec);
double q_associativity(const QFamily& q);
PairProducts pair_products(const std::vector<AlgElement>& elems);
}  // namespace serial

namespace parallel {
AxiomBResult axiom_b(const GradedSpec& spec);
ProductTable product_table(const GradedSpec& spec);
double q_associativity(const QFamily& q);
PairProducts pair_products(const std::vector<AlgElement>& elems);
}  // namespace parallel

}  // namespace gca::kernels
