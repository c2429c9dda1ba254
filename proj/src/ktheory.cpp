#include "gca/ktheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gca/kernels/kernels.hpp"

namespace gca {

namespace {

// The span with an orthonormal basis q_m (Hilbert-Schmidt inner product) and
// its left and right multiplication matrices in that basis.
struct SpanAlgebra {
  AlgebraShape ambient;
  Mat q;                   // ambient.dim() x d
  std::vector<AlgElement> elems;
  std::vector<Mat> left;   // left[m].col(l) = coords(q_m q_l)
  std::vector<Mat> right;  // right[m].col(l) = coords(q_l q_m)
  Vec unit;

  int dim() const { return static_cast<int>(q.cols()); }
  AlgElement element(const Vec& c) const { return AlgElement::from_vector(ambient, q * c); }
  Vec coords(const AlgElement& x) const { return q.adjoint() * x.to_vector(); }
  Vec adjoint_coords(const Vec& c) const { return coords(adjoint(element(c))); }
  Mat left_mult(const Vec& c) const {
    Mat out = Mat::Zero(dim(), dim());
    for (int m = 0; m < dim(); ++m)
      if (c(m) != cplx(0.0)) out += c(m) * left[m];
    return out;
  }
};

SpanAlgebra analyze_span(const std::vector<AlgElement>& basis) {
  SpanAlgebra s;
  if (basis.empty()) return s;
  s.ambient = basis.front().shape();
  Mat b(s.ambient.dim(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].shape() != s.ambient) fail(ErrorCode::ShapeMismatch, "span elements live in different shapes");
    b.col(static_cast<Eigen::Index>(k)) = basis[k].to_vector();
  }
  s.q = column_space(b);
  const int d = s.dim();
  for (int m = 0; m < d; ++m) s.elems.push_back(AlgElement::from_vector(s.ambient, s.q.col(m)));

  const auto products = kernels::parallel::pair_products(s.elems);
  s.left.assign(d, Mat(d, d));
  s.right.assign(d, Mat(d, d));
  double closure = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int l = 0; l < d; ++l) {
      const Vec& v = products[static_cast<std::size_t>(m) * d + l];
      const Vec c = s.q.adjoint() * v;
      closure = std::max(closure, (v - s.q * c).norm());
      s.left[m].col(l) = c;
      s.right[l].col(m) = c;
    }
  }
  if (closure > kWedderburnTol) {
    std::ostringstream os;
    os << "span is not closed under multiplication (residual " << closure << ")";
    fail(ErrorCode::NotSubalgebra, os.str());
  }
  double star = 0.0;
  for (const auto& e : s.elems) {
    const Vec v = adjoint(e).to_vector();
    star = std::max(star, (v - s.q * (s.q.adjoint() * v)).norm());
  }
  if (star > kWedderburnTol) {
    std::ostringstream os;
    os << "span is not closed under the involution (residual " << star << ")";
    fail(ErrorCode::NotStarClosed, os.str());
  }

  // Unit: sum c_m L_m = I and sum c_m R_m = I.
  Mat a(2 * d * d, d);
  Vec rhs(2 * d * d);
  const Mat id = Mat::Identity(d, d);
  for (int m = 0; m < d; ++m) {
    a.col(m).head(d * d) = s.left[m].reshaped();
    a.col(m).tail(d * d) = s.right[m].reshaped();
  }
  rhs.head(d * d) = id.reshaped();
  rhs.tail(d * d) = id.reshaped();
  const auto ls = solve_least_squares(a, rhs);
  if (ls.residual > kWedderburnTol) {
    std::ostringstream os;
    os << "span has no unit (residual " << ls.residual << ")";
    fail(ErrorCode::NotUnitalSpan, os.str());
  }
  s.unit = ls.x.col(0);
  return s;
}

// Groups of consecutive sorted eigenvalues separated by more than tol.
std::vector<std::pair<int, int>> clusters(const Eigen::VectorXd& sorted, double tol) {
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < sorted.size(); ++k) {
    if (k == 0 || sorted(k) - sorted(k - 1) > tol) out.push_back({k, 0});
    ++out.back().second;
  }
  return out;
}

Eigen::SelfAdjointEigenSolver<Mat> hermitian_eigen(const Mat& m) {
  const Mat h = 0.5 * (m + m.adjoint());
  return Eigen::SelfAdjointEigenSolver<Mat>(h);
}

struct Analysis {
  SpanAlgebra span;
  WedderburnData data;
  std::vector<Mat> corners;  // orthonormal coordinates of each corner p_k * span
  Rng rng{kDefaultSeed};
};

bool diagonal_greater(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index t = 0; t < a.size(); ++t) {
    if (std::abs(a(t) - b(t)) > kIntegralTol) return a(t) > b(t);
  }
  return false;
}

Analysis analyze(const std::vector<AlgElement>& basis, std::uint64_t seed) {
  Analysis an;
  an.rng = Rng(seed);
  an.span = analyze_span(basis);
  auto& s = an.span;
  auto& data = an.data;
  data.ambient = s.ambient;
  data.span_dim = s.dim();
  const int d = s.dim();
  if (d == 0) return an;
  data.unit = s.element(s.unit);

  Mat commutator(d * d, d);
  double scale = 0.0;
  for (int m = 0; m < d; ++m) {
    commutator.col(m) = (s.left[m] - s.right[m]).reshaped();
    scale = std::max(scale, s.left[m].norm());
  }
  // a commutative span leaves only rounding noise here
  const Mat center = null_space(commutator, kRankTol, scale);
  data.center_dim = static_cast<int>(center.cols());

  for (int attempt = 1; attempt <= kRetryBudget; ++attempt) {
    data.attempts = attempt;
    const Vec w = center * an.rng.complex_vector(data.center_dim);
    const Vec h = 0.5 * (w + s.adjoint_coords(w));
    const auto eig = hermitian_eigen(s.left_mult(h));
    const auto groups = clusters(eig.eigenvalues(), kWedderburnTol);
    if (static_cast<int>(groups.size()) != data.center_dim) continue;

    std::vector<AlgElement> projections;
    std::vector<int> dims;
    std::vector<Mat> corners;
    bool ok = true;
    for (const auto& [start, count] : groups) {
      const Mat v = eig.eigenvectors().middleCols(start, count);
      const Vec p = v * (v.adjoint() * s.unit);
      const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(count))));
      if (std::abs(std::sqrt(static_cast<double>(count)) - n) > kIntegralTol) {
        fail(ErrorCode::NonIntegralBlock, "corner of dimension " + std::to_string(count) + " is not a square");
      }
      if (numerical_rank(s.left_mult(p)) != count) {
        ok = false;
        break;
      }
      projections.push_back(s.element(p));
      dims.push_back(n);
      corners.push_back(v);
    }
    if (!ok) continue;

    double res = 0.0;
    auto sum = AlgElement::zero(s.ambient);
    for (std::size_t a = 0; a < projections.size(); ++a) {
      const auto& p = projections[a];
      sum += p;
      res = std::max(res, distance(p * p, p));
      res = std::max(res, distance(adjoint(p), p));
      for (std::size_t b = a + 1; b < projections.size(); ++b)
        res = std::max(res, op_norm(p * projections[b]));
      for (const auto& e : s.elems) res = std::max(res, distance(p * e, e * p));
    }
    res = std::max(res, distance(sum, data.unit));
    if (res > kWedderburnTol) continue;

    std::vector<int> order(projections.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Eigen::VectorXd> diags;
    for (const auto& p : projections) diags.push_back(p.to_dense().diagonal().real());
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return diagonal_greater(diags[a], diags[b]); });
    for (int k : order) {
      data.central_projections.push_back(projections[k]);
      data.block_dims.push_back(dims[k]);
      an.corners.push_back(corners[k]);
    }
    data.projection_residual = res;
    return an;
  }
  fail(ErrorCode::DegenerateGenerator, "no generic central element after " + std::to_string(kRetryBudget) + " attempts");
}

}  // namespace

WedderburnData wedderburn(const std::vector<AlgElement>& basis, std::uint64_t seed) {
  return analyze(basis, seed).data;
}

WedderburnIso wedderburn_iso(const std::vector<AlgElement>& basis, std::uint64_t seed) {
  auto an = analyze(basis, seed);
  const auto& s = an.span;
  WedderburnIso iso;
  iso.shape = AlgebraShape(an.data.block_dims);
  const int amb = s.ambient.dim();
  iso.from_shape = Mat::Zero(amb, iso.shape.dim());
  iso.to_shape = Mat::Zero(iso.shape.dim(), amb);

  for (int k = 0; k < static_cast<int>(an.data.block_dims.size()); ++k) {
    const int n = an.data.block_dims[k];
    const Vec pk = s.coords(an.data.central_projections[k]);
    const Mat& corner = an.corners[k];

    // Minimal projections e_1..e_n splitting p_k.
    std::vector<AlgElement> e;
    if (n == 1) {
      e.push_back(an.data.central_projections[k]);
    } else {
      const Mat lp = s.left_mult(pk);
      for (int attempt = 1; attempt <= kRetryBudget && e.empty(); ++attempt) {
        Vec r(s.dim());
        for (int m = 0; m < s.dim(); ++m) r(m) = an.rng.symmetric();
        const Vec a = lp * (lp * (r + s.adjoint_coords(r)));  // p (r + r*) p; p is central
        const auto eig = hermitian_eigen(corner.adjoint() * s.left_mult(a) * corner);
        const auto groups = clusters(eig.eigenvalues(), kWedderburnTol);
        if (static_cast<int>(groups.size()) != n) continue;
        if (!std::all_of(groups.begin(), groups.end(), [&](const auto& g) { return g.second == n; })) continue;
        for (const auto& [start, count] : groups) {
          const Mat w = corner * eig.eigenvectors().middleCols(start, count);
          e.push_back(s.element(w * (w.adjoint() * pk)));
        }
      }
      if (e.empty()) fail(ErrorCode::DegenerateGenerator, "no generic element in block " + std::to_string(k));
    }

    // Partial isometries v_j with v_j v_j* = e_1 and v_j* v_j = e_j.
    std::vector<AlgElement> v{e[0]};
    const double e1_norm2 = e[0].to_vector().squaredNorm();
    for (int j = 1; j < n; ++j) {
      AlgElement best;
      double best_norm = -1.0;
      for (const auto& q : s.elems) {
        auto c = e[0] * q * e[j];
        const double nrm = c.to_vector().norm();
        if (nrm > best_norm) {
          best_norm = nrm;
          best = std::move(c);
        }
      }
      const double scale = (e[0].to_vector().dot((best * adjoint(best)).to_vector())).real() / e1_norm2;
      if (!(scale > kWedderburnTol)) fail(ErrorCode::DegenerateGenerator, "block " + std::to_string(k) + " has no off-diagonal unit");
      v.push_back((1.0 / std::sqrt(scale)) * best);
    }

    std::vector<AlgElement> units;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) units.push_back(adjoint(v[i]) * v[j]);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto& eij = units[i * n + j];
        iso.unit_residual = std::max(iso.unit_residual, distance(adjoint(eij), units[j * n + i]));
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m) {
            const auto expect = j == l ? units[i * n + m] : AlgElement::zero(s.ambient);
            iso.unit_residual = std::max(iso.unit_residual, distance(eij * units[l * n + m], expect));
          }
        const int col = iso.shape.encode(k, i, j);
        const Vec ev = eij.to_vector();
        iso.from_shape.col(col) = ev;
        iso.to_shape.row(col) = ev.adjoint() / e1_norm2;
      }
    }
  }
  iso.data = std::move(an.data);
  return iso;
}

double wedderburn_norm(const WedderburnIso& iso, const AlgElement& x) {
  if (x.shape() != iso.data.ambient) fail(ErrorCode::ShapeMismatch, "element is not in the ambient shape");
  return op_norm(AlgElement::from_vector(iso.shape, iso.to_shape * x.to_vector()));
}

std::vector<AlgElement> faithful_basis(const GradedSpec& spec) {
  const Mat f = faithful_image_map(spec);
  const auto shape = faithful_shape(spec);
  std::vector<AlgElement> out;
  for (int g = 0; g < spec.total_dim(); ++g) out.push_back(AlgElement::from_vector(shape, f.col(g)));
  return out;
}

long long integer_determinant(const std::vector<std::vector<long long>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<__int128>> a(n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(m[r].size()) != n) fail(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
    a[r].assign(m[r].begin(), m[r].end());
  }
  __int128 sign = 1;
  __int128 prev = 1;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    while (pivot < n && a[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < n; ++c) a[r][c] = (a[r][c] * a[k][k] - a[r][k] * a[k][c]) / prev;
      a[r][k] = 0;
    }
    prev = a[k][k];
  }
  return static_cast<long long>(n == 0 ? 1 : sign * a[n - 1][n - 1]);
}

K0Report verify_k0(const GradedSpec& spec, std::uint64_t seed) {
  K0Report report;
  for (const auto& s : spec.components()) report.per_component_ranks.push_back(s.block_count());
  const auto data = wedderburn(faithful_basis(spec), seed);
  report.total_rank = static_cast<int>(data.block_dims.size());
  report.total_block_dims = data.block_dims;
  report.projection_residual = data.projection_residual;

  std::vector<double> block_trace;
  for (const auto& p : data.central_projections) block_trace.push_back(p.to_dense().trace().real());
  for (int i = 0; i < spec.size(); ++i) {
    const auto& s = spec.component(i);
    for (int b = 0; b < s.block_count(); ++b) {
      const auto gen = GradedElement::at(spec, i, AlgElement::basis(s, s.offset(b)));
      const auto image = faithful_image(spec, gen);
      std::vector<long long> row;
      for (int k = 0; k < report.total_rank; ++k) {
        const double rank = (data.central_projections[k] * image).to_dense().trace().real() * data.block_dims[k] / block_trace[k];
        const double rounded = std::round(rank);
        report.rounding_residual = std::max(report.rounding_residual, std::abs(rank - rounded));
        if (std::abs(rank - rounded) > kIntegralTol) {
          std::ostringstream os;
          os << "rank " << rank << " of generator (" << spec.lattice().name(i) << ", block " << b << ") in block " << k;
          fail(ErrorCode::NonIntegralBlock, os.str());
        }
        row.push_back(static_cast<long long>(rounded));
      }
      report.phi_matrix.push_back(std::move(row));
    }
  }
  const int component_sum = std::accumulate(report.per_component_ranks.begin(), report.per_component_ranks.end(), 0);
  if (component_sum != report.total_rank) {
    fail(ErrorCode::RankMismatch, "components have " + std::to_string(component_sum) + " blocks, total algebra has " +
                                      std::to_string(report.total_rank));
  }
  report.determinant = integer_determinant(report.phi_matrix);
  report.unimodular = report.determinant == 1 || report.determinant == -1;
  if (!report.unimodular) fail(ErrorCode::NotUnimodular, "determinant " + std::to_string(report.determinant));
  return report;
}

}  // namespace gca
