#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace gca {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Basis-level residual tolerance (absolute).
inline constexpr double kBasisTol = 1e-9;
/// Rank tolerance, relative to the largest singular value.
inline constexpr double kRankTol = 1e-8;

/// Numerical rank: singular values above rel_tol * sigma_max.
int numerical_rank(const Mat& a, double rel_tol = kRankTol);

/// Orthonormal basis (columns) of the column space of a.
Mat column_space(const Mat& a, double rel_tol = kRankTol);

/// Orthonormal basis (columns) of the null space of a.
/// Singular values count as zero below rel_tol * max(sigma_max, scale); pass the
/// size of the operands when a may be pure rounding noise.
Mat null_space(const Mat& a, double rel_tol = kRankTol, double scale = 0.0);

double spectral_norm(const Mat& a);

/// Least-squares solution of a x = b together with the residual norm.
struct LeastSquares {
  Mat x;
  double residual = 0.0;
};
LeastSquares solve_least_squares(const Mat& a, const Mat& b);

/// Dimension of the intersection of two column spans.
int intersection_dim(const Mat& u, const Mat& w, double rel_tol = kRankTol);

/// Deterministic random source threaded through every randomized routine.
/// Draws are built from raw 64-bit words so streams match across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1)
  double symmetric() { return 2.0 * uniform() - 1.0; }  // [-1, 1)
  cplx complex_symmetric() {
    const double re = symmetric();
    return {re, symmetric()};
  }
  Vec complex_vector(int n);

 private:
  std::mt19937_64 engine_;
};

/// Default seed; overridable through the GCA_SEED environment variable.
inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eedULL;
std::uint64_t seed_from_env();

}  // namespace gca
