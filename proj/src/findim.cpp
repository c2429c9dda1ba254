#include "gca/findim.hpp"

#include <algorithm>
#include <sstream>

#include "gca/error.hpp"

namespace gca {

AlgebraShape::AlgebraShape(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  offsets_.reserve(blocks_.size());
  for (int d : blocks_) {
    if (d < 1) fail(ErrorCode::ShapeMismatch, "block sizes must be positive");
    offsets_.push_back(dim_);
    dim_ += d * d;
  }
}

bool AlgebraShape::commutative() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](int d) { return d == 1; });
}

int AlgebraShape::side() const {
  int s = 0;
  for (int d : blocks_) s += d;
  return s;
}

AlgebraShape::Unit AlgebraShape::decode(int index) const {
  if (index < 0 || index >= dim_) fail(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(index));
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const int k = static_cast<int>(it - offsets_.begin()) - 1;
  const int local = index - offsets_[k];
  return {k, local / blocks_[k], local % blocks_[k]};
}

std::string AlgebraShape::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < blocks_.size(); ++k) os << (k ? "," : "") << blocks_[k];
  os << "]";
  return os.str();
}

AlgebraShape concat(const std::vector<AlgebraShape>& shapes) {
  std::vector<int> blocks;
  for (const auto& s : shapes) blocks.insert(blocks.end(), s.blocks().begin(), s.blocks().end());
  return AlgebraShape(std::move(blocks));
}

AlgElement AlgElement::zero(const AlgebraShape& shape) {
  AlgElement x;
  x.shape_ = shape;
  for (int d : shape.blocks()) x.blocks_.push_back(Mat::Zero(d, d));
  return x;
}

AlgElement AlgElement::unit(const AlgebraShape& shape) {
  AlgElement x;
  x.shape_ = shape;
  for (int d : shape.blocks()) x.blocks_.push_back(Mat::Identity(d, d));
  return x;
}

AlgElement AlgElement::basis(const AlgebraShape& shape, int index) {
  auto x = zero(shape);
  const auto u = shape.decode(index);
  x.blocks_[u.block](u.row, u.col) = 1.0;
  return x;
}

AlgElement AlgElement::from_vector(const AlgebraShape& shape, const Vec& v) {
  if (v.size() != shape.dim()) fail(ErrorCode::ShapeMismatch, "vector length differs from dim " + shape.str());
  auto x = zero(shape);
  for (int k = 0; k < shape.block_count(); ++k) {
    const int d = shape.block(k);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) x.blocks_[k](p, q) = v(shape.offset(k) + p * d + q);
  }
  return x;
}

AlgElement AlgElement::from_blocks(const AlgebraShape& shape, std::vector<Mat> blocks) {
  if (static_cast<int>(blocks.size()) != shape.block_count()) fail(ErrorCode::ShapeMismatch, "block count");
  for (int k = 0; k < shape.block_count(); ++k) {
    if (blocks[k].rows() != shape.block(k) || blocks[k].cols() != shape.block(k)) {
      fail(ErrorCode::ShapeMismatch, "block " + std::to_string(k) + " size");
    }
  }
  AlgElement x;
  x.shape_ = shape;
  x.blocks_ = std::move(blocks);
  return x;
}

AlgElement AlgElement::random(const AlgebraShape& shape, Rng& rng) {
  return from_vector(shape, rng.complex_vector(shape.dim()));
}

Vec AlgElement::to_vector() const {
  Vec v(shape_.dim());
  for (int k = 0; k < shape_.block_count(); ++k) {
    const int d = shape_.block(k);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) v(shape_.offset(k) + p * d + q) = blocks_[k](p, q);
  }
  return v;
}

Mat AlgElement::to_dense() const {
  const int n = shape_.side();
  Mat m = Mat::Zero(n, n);
  int at = 0;
  for (const auto& b : blocks_) {
    m.block(at, at, b.rows(), b.cols()) = b;
    at += static_cast<int>(b.rows());
  }
  return m;
}

bool AlgElement::is_zero(double tol) const {
  return std::all_of(blocks_.begin(), blocks_.end(), [tol](const Mat& b) { return b.size() == 0 || b.cwiseAbs().maxCoeff() <= tol; });
}

namespace {

void require_same(const AlgebraShape& a, const AlgebraShape& b) {
  if (a != b) fail(ErrorCode::ShapeMismatch, a.str() + " vs " + b.str());
}

}  // namespace

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  require_same(shape_, o.shape_);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  require_same(shape_, o.shape_);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
  return *this;
}

AlgElement& AlgElement::operator*=(cplx s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

AlgElement operator+(AlgElement x, const AlgElement& y) { return x += y; }
AlgElement operator-(AlgElement x, const AlgElement& y) { return x -= y; }
AlgElement operator*(cplx s, AlgElement x) { return x *= s; }

AlgElement operator*(const AlgElement& x, const AlgElement& y) {
  require_same(x.shape(), y.shape());
  std::vector<Mat> blocks;
  blocks.reserve(x.blocks().size());
  for (std::size_t k = 0; k < x.blocks().size(); ++k) blocks.push_back(x.block(k) * y.block(k));
  return AlgElement::from_blocks(x.shape(), std::move(blocks));
}

AlgElement adjoint(const AlgElement& x) {
  std::vector<Mat> blocks;
  for (const auto& b : x.blocks()) blocks.push_back(b.adjoint());
  return AlgElement::from_blocks(x.shape(), std::move(blocks));
}

double distance(const AlgElement& x, const AlgElement& y) {
  require_same(x.shape(), y.shape());
  double d = 0.0;
  for (std::size_t k = 0; k < x.blocks().size(); ++k) d = std::max(d, (x.block(k) - y.block(k)).norm());
  return d;
}

double op_norm(const AlgElement& x) {
  double n = 0.0;
  for (const auto& b : x.blocks()) n = std::max(n, spectral_norm(b));
  return n;
}

bool is_positive(const AlgElement& x, double tol) {
  const double scale = tol * (1.0 + op_norm(x));
  if (op_norm(x - adjoint(x)) > scale) return false;
  for (const auto& b : x.blocks()) {
    const Mat h = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -scale) return false;
  }
  return true;
}

StarHom::StarHom(AlgebraShape source, AlgebraShape target, Mat matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim()) {
    fail(ErrorCode::ShapeMismatch, "hom matrix is " + std::to_string(matrix_.rows()) + "x" +
                                       std::to_string(matrix_.cols()) + ", expected " +
                                       std::to_string(target_.dim()) + "x" + std::to_string(source_.dim()));
  }
}

StarHom StarHom::identity(const AlgebraShape& shape) {
  return StarHom(shape, shape, Mat::Identity(shape.dim(), shape.dim()));
}

StarHom StarHom::zero(const AlgebraShape& source, const AlgebraShape& target) {
  return StarHom(source, target, Mat::Zero(target.dim(), source.dim()));
}

StarHom StarHom::from_images(const AlgebraShape& source, const AlgebraShape& target,
                             const std::vector<AlgElement>& images) {
  if (static_cast<int>(images.size()) != source.dim()) fail(ErrorCode::ShapeMismatch, "one image per basis element");
  Mat m(target.dim(), source.dim());
  for (int b = 0; b < source.dim(); ++b) {
    require_same(images[b].shape(), target);
    m.col(b) = images[b].to_vector();
  }
  return StarHom(source, target, std::move(m));
}

AlgElement StarHom::apply(const AlgElement& x) const {
  require_same(x.shape(), source_);
  return AlgElement::from_vector(target_, matrix_ * x.to_vector());
}

AlgElement StarHom::image_of_basis(int index) const { return AlgElement::from_vector(target_, matrix_.col(index)); }

HomCheck check_starhom(const StarHom& h, double tol) {
  HomCheck out;
  const auto& s = h.source();
  std::vector<AlgElement> images;
  images.reserve(s.dim());
  for (int a = 0; a < s.dim(); ++a) images.push_back(h.image_of_basis(a));

  double worst_mul = 0.0;
  for (int a = 0; a < s.dim(); ++a) {
    const auto ua = s.decode(a);
    for (int b = 0; b < s.dim(); ++b) {
      const auto ub = s.decode(b);
      AlgElement lhs = AlgElement::zero(h.target());
      if (ua.block == ub.block && ua.col == ub.row) lhs = images[s.encode(ua.block, ua.row, ub.col)];
      const double r = distance(lhs, images[a] * images[b]);
      if (r > worst_mul) {
        worst_mul = r;
        out.worst_a = a;
        out.worst_b = b;
      }
    }
  }
  double worst_star = 0.0;
  int star_at = -1;
  for (int a = 0; a < s.dim(); ++a) {
    const auto ua = s.decode(a);
    const double r = distance(images[s.encode(ua.block, ua.col, ua.row)], adjoint(images[a]));
    if (r > worst_star) {
      worst_star = r;
      star_at = a;
    }
  }
  out.multiplicative = worst_mul <= tol;
  out.star_preserving = worst_star <= tol;
  if (out.multiplicative && !out.star_preserving) {
    out.worst_a = star_at;
    out.worst_b = -1;
  }
  out.max_residual = std::max(worst_mul, worst_star);
  return out;
}

HomCheck validate_starhom(const StarHom& h, double tol) {
  const auto c = check_starhom(h, tol);
  if (!c.multiplicative) {
    fail(ErrorCode::NotMultiplicative, "basis pair (" + std::to_string(c.worst_a) + ", " +
                                           std::to_string(c.worst_b) + "), residual " + std::to_string(c.max_residual));
  }
  if (!c.star_preserving) {
    fail(ErrorCode::NotStarPreserving, "basis element " + std::to_string(c.worst_a) + ", residual " +
                                           std::to_string(c.max_residual));
  }
  return c;
}

StarHom compose(const StarHom& g, const StarHom& h) {
  require_same(h.target(), g.source());
  return StarHom(h.source(), g.target(), g.matrix() * h.matrix());
}

int image_dim(const StarHom& h) { return numerical_rank(h.matrix()); }
int kernel_dim(const StarHom& h) { return h.source().dim() - image_dim(h); }

AlgebraShape tensor_shape(const AlgebraShape& a, const AlgebraShape& b) {
  std::vector<int> blocks;
  for (int d : a.blocks())
    for (int e : b.blocks()) blocks.push_back(d * e);
  return AlgebraShape(std::move(blocks));
}

AlgElement tensor(const AlgElement& x, const AlgElement& y) {
  const auto shape = tensor_shape(x.shape(), y.shape());
  std::vector<Mat> blocks;
  for (const auto& xb : x.blocks()) {
    for (const auto& yb : y.blocks()) {
      Mat k(xb.rows() * yb.rows(), xb.cols() * yb.cols());
      for (Eigen::Index p = 0; p < xb.rows(); ++p)
        for (Eigen::Index q = 0; q < xb.cols(); ++q)
          k.block(p * yb.rows(), q * yb.cols(), yb.rows(), yb.cols()) = xb(p, q) * yb;
      blocks.push_back(std::move(k));
    }
  }
  return AlgElement::from_blocks(shape, std::move(blocks));
}

StarHom tensor(const StarHom& f, const StarHom& g) {
  const auto src = tensor_shape(f.source(), g.source());
  const auto tgt = tensor_shape(f.target(), g.target());
  std::vector<AlgElement> images(src.dim());
  // Basis unit E^{(ij)}_{(p e + r),(q e + s)} = E^{(i)}_{pq} ⊗ E^{(j)}_{rs}.
  for (int a = 0; a < f.source().dim(); ++a) {
    const auto ua = f.source().decode(a);
    const auto fa = f.image_of_basis(a);
    for (int b = 0; b < g.source().dim(); ++b) {
      const auto ub = g.source().decode(b);
      const int e = g.source().block(ub.block);
      const int blk = ua.block * g.source().block_count() + ub.block;
      images[src.encode(blk, ua.row * e + ub.row, ua.col * e + ub.col)] = tensor(fa, g.image_of_basis(b));
    }
  }
  return StarHom::from_images(src, tgt, images);
}

}  // namespace gca
