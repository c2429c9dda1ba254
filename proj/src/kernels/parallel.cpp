#include <algorithm>

#include "gca/kernels/kernels.hpp"

namespace gca::kernels::parallel {

namespace {

// images[m * n + j][y] = phi(m, j)(E_y) for m <= j. Built before any parallel
// region so that a missing morphism throws on the calling thread.
std::vector<std::vector<AlgElement>> basis_images(const GradedSpec& spec) {
  const int n = spec.size();
  std::vector<std::vector<AlgElement>> images(static_cast<std::size_t>(n) * n);
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      if (spec.lattice().leq(m, j)) {
        const auto& h = spec.phi(m, j);
        auto& row = images[static_cast<std::size_t>(m) * n + j];
        for (int y = 0; y < spec.component(j).dim(); ++y) row.push_back(h.image_of_basis(y));
      }
  return images;
}

// Max over blocks of the Frobenius norm of a canonical-basis vector.
double block_max_norm(const AlgebraShape& s, const Vec& v) {
  double r = 0.0;
  for (int k = 0; k < s.block_count(); ++k) r = std::max(r, v.segment(s.offset(k), s.block(k) * s.block(k)).norm());
  return r;
}

}  // namespace

AxiomBResult axiom_b(const GradedSpec& spec) {
  const auto& L = spec.lattice();
  const int n = spec.size();
  const auto images = basis_images(spec);
  std::vector<const StarHom*> phi(static_cast<std::size_t>(n) * n, nullptr);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      if (L.leq(m, k)) phi[static_cast<std::size_t>(m) * n + k] = &spec.phi(m, k);
  auto img = [&](int m, int j) -> const std::vector<AlgElement>& { return images[static_cast<std::size_t>(m) * n + j]; };

  std::vector<AxiomBResult> per_pair(static_cast<std::size_t>(n) * n);
#pragma omp parallel for schedule(dynamic)
  for (int item = 0; item < n * n; ++item) {
    const int i = item / n;
    const int j = item % n;
    const int k = L.meet(i, j);
    AxiomBResult& best = per_pair[item];
    for (int m = 0; m < n; ++m) {
      if (!L.leq(m, k)) continue;
      const StarHom& down = *phi[static_cast<std::size_t>(m) * n + k];
      for (int x = 0; x < spec.component(i).dim(); ++x) {
        for (int y = 0; y < spec.component(j).dim(); ++y) {
          const auto lhs = down.apply(img(k, i)[x] * img(k, j)[y]);
          const auto rhs = img(m, i)[x] * img(m, j)[y];
          const double r = distance(lhs, rhs);
          if (r > best.max_residual || best.i < 0) best = {r, i, j, m, x, y};
        }
      }
    }
  }
  // Items are in lexicographic (i, j) order, so a strict comparison keeps the
  // smallest tuple among equal residuals.
  AxiomBResult out;
  for (const auto& r : per_pair)
    if (r.i >= 0 && (r.max_residual > out.max_residual || out.i < 0)) out = r;
  return out;
}

ProductTable product_table(const GradedSpec& spec) {
  const auto& L = spec.lattice();
  const int n = spec.size();
  const int d = spec.total_dim();
  const auto images = basis_images(spec);
  std::vector<std::pair<int, int>> where(d);
  for (int g = 0; g < d; ++g) where[g] = spec.locate(g);

  ProductTable t;
  t.dim = d;
  t.left.assign(d, Mat());
#pragma omp parallel for schedule(dynamic)
  for (int a = 0; a < d; ++a) {
    const auto [j, x] = where[a];
    Mat left = Mat::Zero(d, d);
    for (int b = 0; b < d; ++b) {
      const auto [k, y] = where[b];
      const int m = L.meet(j, k);
      const auto p = images[static_cast<std::size_t>(m) * n + j][x] * images[static_cast<std::size_t>(m) * n + k][y];
      left.col(b).segment(spec.offset(m), spec.component(m).dim()) = p.to_vector();
    }
    t.left[a] = std::move(left);
  }
  return t;
}

double q_associativity(const QFamily& q) {
  const auto& L = q.lattice;
  const int n = L.size();
  std::vector<double> worst(static_cast<std::size_t>(n) * n * n, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int item = 0; item < n * n * n; ++item) {
    const int i = item / (n * n);
    const int j = (item / n) % n;
    const int k = item % n;
    const int ij = L.meet(i, j);
    const int jk = L.meet(j, k);
    const auto& out_shape = q.components[L.meet(ij, k)];
    const int di = q.components[i].dim();
    const int dj = q.components[j].dim();
    const int dk = q.components[k].dim();
    const int dij = q.components[ij].dim();
    const int djk = q.components[jk].dim();
    const int dout = out_shape.dim();
    if (di * dj * dk == 0 || dout == 0) continue;
    const Mat& q_ij = q.q(i, j);
    const Mat& q_jk = q.q(j, k);
    const Mat& q_left = q.q(ij, k);
    const Mat& q_right = q.q(i, jk);
    // lhs[z].col(x * dj + y) = q(q(E_x, E_y), E_z); rhs[x].col(y * dk + z) = q(E_x, q(E_y, E_z)).
    std::vector<Mat> lhs(dk), rhs(di);
    for (int z = 0; z < dk; ++z) {
      Mat slice(dout, dij);
      for (int c = 0; c < dij; ++c) slice.col(c) = q_left.col(c * dk + z);
      lhs[z] = slice * q_ij;
    }
    for (int x = 0; x < di; ++x) rhs[x] = q_right.middleCols(x * djk, djk) * q_jk;
    double w = 0.0;
    for (int x = 0; x < di; ++x)
      for (int y = 0; y < dj; ++y)
        for (int z = 0; z < dk; ++z)
          w = std::max(w, block_max_norm(out_shape, lhs[z].col(x * dj + y) - rhs[x].col(y * dk + z)));
    worst[item] = w;
  }
  double out = 0.0;
  for (double w : worst) out = std::max(out, w);
  return out;
}

PairProducts pair_products(const std::vector<AlgElement>& elems) {
  const int n = static_cast<int>(elems.size());
  PairProducts out(static_cast<std::size_t>(n) * n);
#pragma omp parallel for schedule(dynamic)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out[static_cast<std::size_t>(a) * n + b] = (elems[a] * elems[b]).to_vector();
  return out;
}

}  // namespace gca::kernels::parallel
