#pragma once

#include <string>
#include <vector>

#include "gca/linalg.hpp"

namespace gca {

/// A finite-dimensional C*-algebra M_{d_1} ⊕ ... ⊕ M_{d_r}, given by its
/// block sizes. The canonical basis is the family of matrix units E^{(k)}_{pq},
/// ordered block-ascending, then row-major inside each block.
class AlgebraShape {
 public:
  AlgebraShape() = default;  // the zero algebra
  explicit AlgebraShape(std::vector<int> blocks);

  static AlgebraShape zero() { return AlgebraShape(); }
  static AlgebraShape scalars() { return AlgebraShape({1}); }

  const std::vector<int>& blocks() const noexcept { return blocks_; }
  int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
  int block(int k) const { return blocks_[k]; }
  int dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return blocks_.empty(); }
  /// All blocks 1x1.
  bool commutative() const;
  /// Side length of the block-diagonal matrix realizing the algebra.
  int side() const;

  /// First canonical-basis index of block k.
  int offset(int k) const { return offsets_[k]; }

  struct Unit {
    int block, row, col;
  };
  Unit decode(int index) const;
  int encode(int block, int row, int col) const { return offsets_[block] + row * blocks_[block] + col; }

  bool operator==(const AlgebraShape& o) const { return blocks_ == o.blocks_; }
  bool operator!=(const AlgebraShape& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

/// Block direct sum of shapes.
AlgebraShape concat(const std::vector<AlgebraShape>& shapes);

class AlgElement {
 public:
  AlgElement() = default;
  static AlgElement zero(const AlgebraShape& shape);
  static AlgElement unit(const AlgebraShape& shape);
  static AlgElement basis(const AlgebraShape& shape, int index);
  static AlgElement from_vector(const AlgebraShape& shape, const Vec& v);
  static AlgElement from_blocks(const AlgebraShape& shape, std::vector<Mat> blocks);
  static AlgElement random(const AlgebraShape& shape, Rng& rng);

  const AlgebraShape& shape() const noexcept { return shape_; }
  const Mat& block(int k) const { return blocks_[k]; }
  Mat& block(int k) { return blocks_[k]; }
  const std::vector<Mat>& blocks() const noexcept { return blocks_; }

  Vec to_vector() const;
  /// Block-diagonal matrix of side shape().side().
  Mat to_dense() const;
  bool is_zero(double tol = 0.0) const;

  AlgElement& operator+=(const AlgElement& o);
  AlgElement& operator-=(const AlgElement& o);
  AlgElement& operator*=(cplx s);

 private:
  AlgebraShape shape_;
  std::vector<Mat> blocks_;
};

AlgElement operator+(AlgElement x, const AlgElement& y);
AlgElement operator-(AlgElement x, const AlgElement& y);
AlgElement operator*(cplx s, AlgElement x);
AlgElement operator*(const AlgElement& x, const AlgElement& y);
AlgElement adjoint(const AlgElement& x);

/// Max-norm distance over blocks (Frobenius inside each block).
double distance(const AlgElement& x, const AlgElement& y);

/// Operator norm: the largest singular value over all blocks.
double op_norm(const AlgElement& x);

/// Self-adjoint up to tol*(1+|x|) and every block eigenvalue >= -tol*(1+|x|).
bool is_positive(const AlgElement& x, double tol = kBasisTol);

/// Linear map between two algebra shapes, stored as its dim(target) x
/// dim(source) matrix over the canonical bases. Column b is the image of the
/// b-th matrix unit.
class StarHom {
 public:
  StarHom() = default;
  StarHom(AlgebraShape source, AlgebraShape target, Mat matrix);

  static StarHom identity(const AlgebraShape& shape);
  static StarHom zero(const AlgebraShape& source, const AlgebraShape& target);
  static StarHom from_images(const AlgebraShape& source, const AlgebraShape& target,
                             const std::vector<AlgElement>& images);

  const AlgebraShape& source() const noexcept { return source_; }
  const AlgebraShape& target() const noexcept { return target_; }
  const Mat& matrix() const noexcept { return matrix_; }

  AlgElement apply(const AlgElement& x) const;
  Vec apply(const Vec& x) const { return matrix_ * x; }
  AlgElement image_of_basis(int index) const;

 private:
  AlgebraShape source_;
  AlgebraShape target_;
  Mat matrix_;
};

struct HomCheck {
  bool multiplicative = true;
  bool star_preserving = true;
  double max_residual = 0.0;
  /// Basis pair (or single index for *-failures) where the worst residual occurred.
  int worst_a = -1;
  int worst_b = -1;
  bool ok() const { return multiplicative && star_preserving; }
};

/// Checks multiplicativity and *-preservation on all canonical basis pairs.
HomCheck check_starhom(const StarHom& h, double tol = kBasisTol);

/// Throws NotMultiplicative or NotStarPreserving when check_starhom fails.
HomCheck validate_starhom(const StarHom& h, double tol = kBasisTol);

/// g ∘ h; requires h.target() == g.source().
StarHom compose(const StarHom& g, const StarHom& h);

int image_dim(const StarHom& h);
int kernel_dim(const StarHom& h);

/// Tensor shape: blocks d_i * e_j, outer loop over the left factor.
AlgebraShape tensor_shape(const AlgebraShape& a, const AlgebraShape& b);
AlgElement tensor(const AlgElement& x, const AlgElement& y);
/// f ⊗ g as a hom between the tensor shapes (Kronecker structure).
StarHom tensor(const StarHom& f, const StarHom& g);

}  // namespace gca
