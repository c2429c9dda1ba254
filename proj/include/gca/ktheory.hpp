#pragma once

#include <cstdint>
#include <vector>

#include "gca/graded.hpp"

namespace gca {

/// Tolerance on projection identities and eigenvalue separation.
inline constexpr double kWedderburnTol = 1e-7;
/// Integrality tolerance for block sizes and K0 ranks.
inline constexpr double kIntegralTol = 1e-6;
inline constexpr int kRetryBudget = 8;

/// Minimal central projections of a *-subalgebra of an ambient block algebra,
/// ordered by their ambient diagonals (lexicographically, larger entry first).
struct WedderburnData {
  AlgebraShape ambient;
  int span_dim = 0;
  AlgElement unit;
  std::vector<AlgElement> central_projections;
  std::vector<int> block_dims;
  int center_dim = 0;
  /// Worst residual among idempotency, self-adjointness, orthogonality,
  /// centrality and the unit sum.
  double projection_residual = 0.0;
  int attempts = 0;
};

/// The span of basis must be a unital *-closed subalgebra of the common
/// ambient shape. Throws NotSubalgebra, NotStarClosed, NotUnitalSpan,
/// DegenerateGenerator or NonIntegralBlock.
WedderburnData wedderburn(const std::vector<AlgElement>& basis, std::uint64_t seed = kDefaultSeed);

/// Explicit *-isomorphism between the span and the block algebra `shape`,
/// built from a system of matrix units.
struct WedderburnIso {
  WedderburnData data;
  AlgebraShape shape;
  Mat to_shape;    // shape.dim() x ambient.dim(): coordinates of a span element
  Mat from_shape;  // ambient.dim() x shape.dim(): column b is the image of E_b
  /// Worst defect of the matrix-unit relations E_ij E_kl = δ_jk E_il and E_ij* = E_ji.
  double unit_residual = 0.0;
};

WedderburnIso wedderburn_iso(const std::vector<AlgElement>& basis, std::uint64_t seed = kDefaultSeed);

/// Norm of an element of the span computed in block coordinates: the largest
/// block operator norm after transport through the isomorphism.
double wedderburn_norm(const WedderburnIso& iso, const AlgElement& x);

/// Ambient images of the total basis under faithful_image.
std::vector<AlgElement> faithful_basis(const GradedSpec& spec);

struct K0Report {
  std::vector<int> per_component_ranks;
  int total_rank = 0;
  std::vector<int> total_block_dims;
  /// Rows: E_11 of every block of every component, in index order.
  /// Columns: Wedderburn blocks of the total algebra.
  std::vector<std::vector<long long>> phi_matrix;
  long long determinant = 0;
  bool unimodular = false;
  int k1_rank = 0;  // finite-dimensional algebras have vanishing K1
  double projection_residual = 0.0;
  double rounding_residual = 0.0;
};

/// Throws RankMismatch, NotUnimodular, NonIntegralBlock or a Wedderburn error.
K0Report verify_k0(const GradedSpec& spec, std::uint64_t seed = kDefaultSeed);

/// Exact determinant by fraction-free elimination.
long long integer_determinant(const std::vector<std::vector<long long>>& m);

}  // namespace gca
