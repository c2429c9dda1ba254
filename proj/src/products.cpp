#include "gca/products.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "gca/ktheory.hpp"

namespace gca {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> mul, std::vector<std::string> names) {
  const int n = static_cast<int>(mul.size());
  if (n == 0) fail(ErrorCode::NotAGroup, "empty table");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n) fail(ErrorCode::NotAGroup, "table is not square");
    for (int v : row)
      if (v < 0 || v >= n) fail(ErrorCode::NotAGroup, "entry " + std::to_string(v) + " out of range");
  }
  if (names.empty())
    for (int a = 0; a < n; ++a) names.push_back(std::to_string(a));
  if (static_cast<int>(names.size()) != n) fail(ErrorCode::NotAGroup, "name count differs from order");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) {
          fail(ErrorCode::NotAGroup, "not associative at (" + names[a] + ", " + names[b] + ", " + names[c] + ")");
        }
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = mul[a][b] == b && mul[b][a] == b;
    if (ok) e = a;
  }
  if (e < 0) fail(ErrorCode::NotAGroup, "no identity element");
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (mul[a][b] == e && mul[b][a] == e) inv[a] = b;
    if (inv[a] < 0) fail(ErrorCode::NotAGroup, names[a] + " has no inverse");
  }
  return FiniteGroup(std::move(mul), std::move(names), e, std::move(inv));
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) fail(ErrorCode::NotAGroup, "cyclic group of order " + std::to_string(n));
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  return from_table(std::move(mul));
}

FiniteGroup FiniteGroup::klein() { return direct_product(cyclic(2), cyclic(2)); }

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[a][perms[b][k]];
      mul[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  std::vector<std::string> names;
  for (const auto& q : perms) {
    std::string s;
    std::array<bool, 3> seen{};
    for (int k = 0; k < 3; ++k) {
      if (seen[k] || q[k] == k) continue;
      s += "(";
      for (int j = k; !seen[j]; j = q[j]) {
        seen[j] = true;
        s += std::to_string(j + 1);
      }
      s += ")";
    }
    names.push_back(s.empty() ? "e" : s);
  }
  return from_table(std::move(mul), std::move(names));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int m = h.order();
  const int n = g.order() * m;
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back("(" + g.name(a / m) + "," + h.name(a % m) + ")");
    for (int b = 0; b < n; ++b) mul[a][b] = g.mul(a / m, b / m) * m + h.mul(a % m, b % m);
  }
  return from_table(std::move(mul), std::move(names));
}

std::optional<int> FiniteGroup::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

bool FiniteGroup::is_subgroup(const IndexSet& h) const {
  if (h.empty() || !contains(h, identity_)) return false;
  for (int a : h) {
    if (a < 0 || a >= order() || !contains(h, inverse_[a])) return false;
    for (int b : h)
      if (!contains(h, mul_[a][b])) return false;
  }
  return true;
}

std::vector<IndexSet> FiniteGroup::left_cosets(const IndexSet& h) const {
  std::vector<IndexSet> out;
  for (int g = 0; g < order(); ++g) {
    IndexSet c;
    for (int x : h) c.push_back(mul_[g][x]);
    c = make_index_set(c);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------

GradedAction GradedAction::trivial(const FiniteGroup& g, const GradedSpec& spec) {
  GradedAction act{g, spec, {}};
  for (int a = 0; a < g.order(); ++a) {
    std::vector<StarHom> row;
    for (const auto& s : spec.components()) row.push_back(StarHom::identity(s));
    act.maps.push_back(std::move(row));
  }
  return act;
}

namespace {

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

ActionCheck validate_action(const GradedAction& act, double tol) {
  const auto& g = act.group;
  const auto& spec = act.spec;
  const auto& L = spec.lattice();
  ActionCheck c;
  if (static_cast<int>(act.maps.size()) != g.order()) fail(ErrorCode::ActionInvalid, "one row of maps per group element required");
  for (int a = 0; a < g.order(); ++a) {
    if (static_cast<int>(act.maps[a].size()) != spec.size()) fail(ErrorCode::ActionInvalid, "one map per index required");
    for (int i = 0; i < spec.size(); ++i) {
      const auto& h = act.maps[a][i];
      if (h.source() != spec.component(i) || h.target() != spec.component(i)) {
        fail(ErrorCode::ActionInvalid, "alpha_" + g.name(a) + " on " + L.name(i) + " does not preserve the component");
      }
    }
  }
  for (int i = 0; i < spec.size(); ++i) {
    const int d = spec.component(i).dim();
    c.identity_residual = std::max(c.identity_residual, max_abs(act.maps[g.identity()][i].matrix() - Mat::Identity(d, d)));
    for (int a = 0; a < g.order(); ++a) {
      const auto& h = act.maps[a][i];
      c.hom_residual = std::max(c.hom_residual, check_starhom(h, tol).max_residual);
      if (numerical_rank(h.matrix()) != d) c.invertible = false;
      for (int b = 0; b < g.order(); ++b)
        c.composition_residual = std::max(
            c.composition_residual, max_abs(h.matrix() * act.maps[b][i].matrix() - act.maps[g.mul(a, b)][i].matrix()));
      for (int j = 0; j < spec.size(); ++j)
        if (i != j && L.leq(i, j))
          c.equivariance_residual =
              std::max(c.equivariance_residual,
                       max_abs(h.matrix() * spec.phi(i, j).matrix() - spec.phi(i, j).matrix() * act.maps[a][j].matrix()));
    }
  }
  std::ostringstream os;
  if (c.identity_residual > tol) os << "alpha_e is not the identity (" << c.identity_residual << ")";
  else if (c.composition_residual > tol) os << "alpha_g alpha_h != alpha_gh (" << c.composition_residual << ")";
  else if (c.hom_residual > tol) os << "some alpha_g is not a *-homomorphism (" << c.hom_residual << ")";
  else if (!c.invertible) os << "some alpha_g is not invertible";
  else if (c.equivariance_residual > tol) os << "action does not commute with the structure morphisms (" << c.equivariance_residual << ")";
  if (!os.str().empty()) fail(ErrorCode::ActionInvalid, os.str());
  return c;
}

// ---------------------------------------------------------------------------

GradedSpec tensor_spec(const GradedSpec& a, const GradedSpec& b) {
  ensure_valid(a);
  ensure_valid(b);
  const auto L = product_semilattice(a.lattice(), b.lattice());
  const int nb = b.size();
  std::vector<AlgebraShape> comps;
  for (int l = 0; l < a.size(); ++l)
    for (int m = 0; m < nb; ++m) comps.push_back(tensor_shape(a.component(l), b.component(m)));
  GradedSpec out(L, std::move(comps));
  for (int p = 0; p < L.size(); ++p)
    for (int q = 0; q < L.size(); ++q)
      if (p != q && L.leq(p, q)) out.set_phi(p, q, tensor(a.phi(p / nb, q / nb), b.phi(p % nb, q % nb)));
  ensure_valid(out);
  return out;
}

IntersectionCheck tensor_intersection_property(const GradedSpec& a, const GradedSpec& b) {
  const Mat fa = faithful_image_map(a);
  const Mat fb = faithful_image_map(b);
  IntersectionCheck c;
  for (int l = 0; l < a.size(); ++l) {
    const Mat al = fa.middleCols(a.offset(l), a.component(l).dim());
    const Mat u = Eigen::kroneckerProduct(al, fb);
    for (int m = 0; m < b.size(); ++m) {
      const Mat bm = fb.middleCols(b.offset(m), b.component(m).dim());
      const Mat w = Eigen::kroneckerProduct(fa, bm);
      const int expect = numerical_rank(Eigen::kroneckerProduct(al, bm));
      ++c.pairs;
      if (intersection_dim(u, w) != expect) ++c.failures;
    }
  }
  return c;
}

// ---------------------------------------------------------------------------

namespace {

// A function G -> A_i, stored pointwise.
using ConvElement = std::vector<AlgElement>;

struct Convolution {
  const FiniteGroup& g;
  const AlgebraShape& shape;
  const std::vector<StarHom>& alpha;  // alpha[s] on this component

  ConvElement zero() const { return ConvElement(g.order(), AlgElement::zero(shape)); }
  ConvElement basis(int s, int x) const {
    auto f = zero();
    f[s] = AlgElement::basis(shape, x);
    return f;
  }
  // (f h)(s) = sum_r f(r) alpha_r(h(r^-1 s))
  ConvElement product(const ConvElement& f, const ConvElement& h) const {
    auto out = zero();
    for (int r = 0; r < g.order(); ++r) {
      if (f[r].is_zero()) continue;
      for (int s = 0; s < g.order(); ++s) {
        const auto& hv = h[g.mul(g.inverse(r), s)];
        if (!hv.is_zero()) out[s] += f[r] * alpha[r].apply(hv);
      }
    }
    return out;
  }
  // f*(s) = alpha_s(f(s^-1)*)
  ConvElement star(const ConvElement& f) const {
    auto out = zero();
    for (int s = 0; s < g.order(); ++s) out[s] = alpha[s].apply(adjoint(f[g.inverse(s)]));
    return out;
  }
  // Left regular representation on l^2(G, C^side): block (t, s^-1 t) of
  // R(a delta_s) is alpha_{t^-1}(a).
  Mat regular(const ConvElement& f) const {
    const int side = shape.side();
    const int n = g.order();
    Mat out = Mat::Zero(n * side, n * side);
    for (int s = 0; s < n; ++s) {
      if (f[s].is_zero()) continue;
      for (int t = 0; t < n; ++t) {
        out.block(t * side, g.mul(g.inverse(s), t) * side, side, side) += alpha[g.inverse(t)].apply(f[s]).to_dense();
      }
    }
    return out;
  }
};

double conv_distance(const ConvElement& a, const ConvElement& b) {
  double d = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) d = std::max(d, distance(a[s], b[s]));
  return d;
}

}  // namespace

CrossedReport crossed_product(const GradedAction& act, std::uint64_t seed) {
  validate_action(act);
  const auto& g = act.group;
  const auto& spec = act.spec;
  const auto& L = spec.lattice();
  const int n = spec.size();
  const int order = g.order();
  CrossedReport report;

  // alpha[i][s]
  std::vector<std::vector<StarHom>> alpha(n);
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < order; ++s) alpha[i].push_back(act.maps[s][i]);

  std::vector<AlgebraShape> shapes;
  std::vector<Mat> coords, coords_inv;  // conv basis -> block coordinates, and back
  for (int i = 0; i < n; ++i) {
    const auto& shape = spec.component(i);
    const int d = shape.dim();
    const Convolution conv{g, shape, alpha[i]};
    std::vector<ConvElement> basis;
    for (int s = 0; s < order; ++s)
      for (int x = 0; x < d; ++x) basis.push_back(conv.basis(s, x));
    if (d == 0) {
      shapes.emplace_back();
      coords.emplace_back(0, 0);
      coords_inv.emplace_back(0, 0);
      continue;
    }

    std::vector<Mat> reg;
    for (const auto& f : basis) reg.push_back(conv.regular(f));
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const auto fa_star = conv.star(basis[a]);
      report.regular_rep_residual = std::max(report.regular_rep_residual, max_abs(conv.regular(fa_star) - reg[a].adjoint()));
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const auto ab = conv.product(basis[a], basis[b]);
        report.involution_residual =
            std::max(report.involution_residual, conv_distance(conv.star(ab), conv.product(conv.star(basis[b]), fa_star)));
        report.regular_rep_residual = std::max(report.regular_rep_residual, max_abs(conv.regular(ab) - reg[a] * reg[b]));
        for (std::size_t c = 0; c < basis.size(); ++c) {
          report.convolution_residual =
              std::max(report.convolution_residual,
                       conv_distance(conv.product(ab, basis[c]), conv.product(basis[a], conv.product(basis[b], basis[c]))));
        }
      }
    }

    const AlgebraShape ambient({order * shape.side()});
    std::vector<AlgElement> span;
    Mat rmat(ambient.dim(), order * d);
    for (int k = 0; k < order * d; ++k) {
      span.push_back(AlgElement::from_blocks(ambient, {reg[k]}));
      rmat.col(k) = span.back().to_vector();
    }
    if (numerical_rank(rmat) != order * d) {
      fail(ErrorCode::ActionInvalid, "regular representation of component " + L.name(i) + " is not faithful");
    }
    const auto iso = wedderburn_iso(span, seed);
    report.realization_residual = std::max(report.realization_residual, iso.unit_residual);
    const Mat k = iso.to_shape * rmat;
    shapes.push_back(iso.shape);
    coords.push_back(k);
    coords_inv.push_back(k.inverse());
  }

  GradedSpec out(L, shapes);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && L.leq(i, j)) {
        const Mat pointwise = Eigen::kroneckerProduct(Mat::Identity(order, order), spec.phi(i, j).matrix());
        out.set_phi(i, j, StarHom(shapes[j], shapes[i], coords[i] * pointwise * coords_inv[j]));
      }

  // Total crossed product: functions G -> total algebra.
  auto alpha_total = [&](int s, const GradedElement& x) {
    GradedElement y;
    for (int i = 0; i < n; ++i) y.parts.push_back(act.maps[s][i].apply(x.parts[i]));
    return y;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = L.meet(i, j);
      for (int x = 0; x < spec.component(i).dim(); ++x) {
        const auto ex = GradedElement::at(spec, i, AlgElement::basis(spec.component(i), x));
        for (int y = 0; y < spec.component(j).dim(); ++y) {
          const auto ey = GradedElement::at(spec, j, AlgElement::basis(spec.component(j), y));
          for (int r = 0; r < order; ++r) {
            auto p = gmul(spec, ex, alpha_total(r, ey));
            p.parts[k] = AlgElement::zero(spec.component(k));
            report.inclusion_residual = std::max(report.inclusion_residual, p.to_vector().norm());
          }
        }
      }
      if (i == j || !L.leq(i, j)) continue;
      // f = E_x delta_r in A_j x G acting on h = E_y delta_t in A_i x G.
      for (int x = 0; x < spec.component(j).dim(); ++x) {
        const auto ex = GradedElement::at(spec, j, AlgElement::basis(spec.component(j), x));
        const auto phix = spec.phi(i, j).image_of_basis(x);
        for (int y = 0; y < spec.component(i).dim(); ++y) {
          const auto ey_i = AlgElement::basis(spec.component(i), y);
          const auto ey = GradedElement::at(spec, i, ey_i);
          for (int r = 0; r < order; ++r) {
            const auto left_total = gmul(spec, ex, alpha_total(r, ey)).parts[i];
            const auto left_pointwise = phix * alpha[i][r].apply(ey_i);
            const auto right_total = gmul(spec, ey, alpha_total(r, ex)).parts[i];
            const auto right_pointwise = ey_i * alpha[i][r].apply(phix);
            report.multiplier_residual = std::max(
                {report.multiplier_residual, distance(left_total, left_pointwise), distance(right_total, right_pointwise)});
          }
        }
      }
    }
  }

  // Independence of the components inside the regular representation of the
  // total crossed product.
  const auto fshape = faithful_shape(spec);
  const int side = fshape.side();
  std::vector<Mat> comp_vectors(n);
  int rank_sum = 0;
  Mat all(static_cast<Eigen::Index>(order) * side * order * side, order * spec.total_dim());
  for (int i = 0; i < n; ++i) {
    const int d = spec.component(i).dim();
    Mat vi(all.rows(), order * d);
    for (int s = 0; s < order; ++s) {
      for (int x = 0; x < d; ++x) {
        const auto ex = GradedElement::at(spec, i, AlgElement::basis(spec.component(i), x));
        Mat r = Mat::Zero(order * side, order * side);
        for (int t = 0; t < order; ++t)
          r.block(t * side, g.mul(g.inverse(s), t) * side, side, side) =
              faithful_image(spec, alpha_total(g.inverse(t), ex)).to_dense();
        vi.col(s * d + x) = r.reshaped();
      }
    }
    rank_sum += numerical_rank(vi);
    all.middleCols(order * spec.offset(i), order * d) = vi;
  }
  report.independence_rank = numerical_rank(all);
  report.expected_rank = order * spec.total_dim();

  const double tol = kBasisTol;
  std::ostringstream os;
  if (report.convolution_residual > tol || report.involution_residual > tol) {
    os << "convolution algebra fails the *-algebra axioms (" << report.convolution_residual << ", "
       << report.involution_residual << ")";
  } else if (report.regular_rep_residual > tol) {
    os << "regular representation is not a *-homomorphism (" << report.regular_rep_residual << ")";
  } else if (report.multiplier_residual > tol) {
    os << "pointwise structure maps disagree with multiplication (" << report.multiplier_residual << ")";
  } else if (report.inclusion_residual > tol) {
    os << "products leave the expected component (" << report.inclusion_residual << ")";
  } else if (report.independence_rank != rank_sum || report.independence_rank != report.expected_rank) {
    os << "components are not independent: rank " << report.independence_rank << " of " << report.expected_rank;
  }
  if (!os.str().empty()) fail(ErrorCode::ActionInvalid, os.str());

  report.validation = ensure_valid(out);
  report.spec = std::move(out);
  return report;
}

}  // namespace gca
