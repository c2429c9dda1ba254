// Reference kernels: each one evaluates its defining formula directly, one
// basis element at a time, with no caching.

#include "gca/kernels/kernels.hpp"

namespace gca::kernels::serial {

AxiomBResult axiom_b(const GradedSpec& spec) {
  AxiomBResult out;
  const auto& L = spec.lattice();
  const int n = spec.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = L.meet(i, j);
      for (int m = 0; m < n; ++m) {
        if (!L.leq(m, k)) continue;
        for (int x = 0; x < spec.component(i).dim(); ++x) {
          const auto ex = AlgElement::basis(spec.component(i), x);
          for (int y = 0; y < spec.component(j).dim(); ++y) {
            const auto ey = AlgElement::basis(spec.component(j), y);
            const auto lhs = spec.phi(m, k).apply(spec.phi(k, i).apply(ex) * spec.phi(k, j).apply(ey));
            const auto rhs = spec.phi(m, i).apply(ex) * spec.phi(m, j).apply(ey);
            const double r = distance(lhs, rhs);
            if (r > out.max_residual || out.i < 0) out = {r, i, j, m, x, y};
          }
        }
      }
    }
  }
  return out;
}

ProductTable product_table(const GradedSpec& spec) {
  ProductTable t;
  t.dim = spec.total_dim();
  for (int a = 0; a < t.dim; ++a) {
    Mat left(t.dim, t.dim);
    const auto ea = GradedElement::basis(spec, a);
    for (int b = 0; b < t.dim; ++b) left.col(b) = gmul(spec, ea, GradedElement::basis(spec, b)).to_vector();
    t.left.push_back(std::move(left));
  }
  return t;
}

double q_associativity(const QFamily& q) {
  const auto& L = q.lattice;
  const int n = L.size();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const auto& si = q.components[i];
        const auto& sj = q.components[j];
        const auto& sk = q.components[k];
        for (int x = 0; x < si.dim(); ++x) {
          const auto ex = AlgElement::basis(si, x);
          for (int y = 0; y < sj.dim(); ++y) {
            const auto ey = AlgElement::basis(sj, y);
            const auto xy = q.apply(i, j, ex, ey);
            for (int z = 0; z < sk.dim(); ++z) {
              const auto ez = AlgElement::basis(sk, z);
              const auto lhs = q.apply(L.meet(i, j), k, xy, ez);
              const auto rhs = q.apply(i, L.meet(j, k), ex, q.apply(j, k, ey, ez));
              worst = std::max(worst, distance(lhs, rhs));
            }
          }
        }
      }
    }
  }
  return worst;
}

PairProducts pair_products(const std::vector<AlgElement>& elems) {
  PairProducts out;
  out.reserve(elems.size() * elems.size());
  for (const auto& a : elems)
    for (const auto& b : elems) out.push_back((a * b).to_vector());
  return out;
}

}  // namespace gca::kernels::serial
