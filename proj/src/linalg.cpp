#include "gca/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace gca {

namespace {

Eigen::JacobiSVD<Mat> thin_svd(const Mat& a, unsigned options) { return Eigen::JacobiSVD<Mat>(a, options); }

}  // namespace

int numerical_rank(const Mat& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::VectorXd s;
  if (a.rows() > 2 * a.cols()) {
    Eigen::HouseholderQR<Mat> qr(a);
    Mat r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
    s = thin_svd(r, 0).singularValues();
  } else {
    s = thin_svd(a, 0).singularValues();
  }
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > rel_tol * s(0)) ++r;
  return r;
}

Mat column_space(const Mat& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return Mat(a.rows(), 0);
  auto svd = thin_svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > 0.0)
    for (int k = 0; k < s.size(); ++k)
      if (s(k) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

Mat null_space(const Mat& a, double rel_tol, double scale) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Mat(0, 0);
  if (a.rows() == 0) return Mat::Identity(n, n);
  Mat work = a;
  if (a.rows() > n) {
    Eigen::HouseholderQR<Mat> qr(a);
    work = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  }
  Eigen::JacobiSVD<Mat> svd(work, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  const double top = s.size() > 0 ? std::max(s(0), scale) : 0.0;
  if (top > 0.0)
    for (int k = 0; k < s.size(); ++k)
      if (s(k) > rel_tol * top) ++r;
  return svd.matrixV().rightCols(n - r);
}

double spectral_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

LeastSquares solve_least_squares(const Mat& a, const Mat& b) {
  LeastSquares out;
  if (a.cols() == 0) {
    out.x = Mat(0, b.cols());
    out.residual = b.norm();
    return out;
  }
  out.x = a.colPivHouseholderQr().solve(b);
  out.residual = (a * out.x - b).norm();
  return out;
}

int intersection_dim(const Mat& u, const Mat& w, double rel_tol) {
  Mat both(u.rows(), u.cols() + w.cols());
  both << u, w;
  return numerical_rank(u, rel_tol) + numerical_rank(w, rel_tol) - numerical_rank(both, rel_tol);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Vec Rng::complex_vector(int n) {
  Vec v(n);
  for (int k = 0; k < n; ++k) v(k) = complex_symmetric();
  return v;
}

std::uint64_t seed_from_env() {
  if (const char* s = std::getenv("GCA_SEED")) {
    try {
      return std::stoull(s, nullptr, 0);
    } catch (...) {
    }
  }
  return kDefaultSeed;
}

}  // namespace gca
