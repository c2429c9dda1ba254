#include "gca/graded.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "gca/kernels/kernels.hpp"

namespace gca {

namespace {

std::string pair_name(const Semilattice& L, int i, int j) { return "phi(" + L.name(i) + ", " + L.name(j) + ")"; }

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

GradedSpec::GradedSpec(Semilattice lattice, std::vector<AlgebraShape> components)
    : lattice_(std::move(lattice)), components_(std::move(components)) {
  const int n = lattice_.size();
  if (static_cast<int>(components_.size()) != n) {
    fail(ErrorCode::ShapeMismatch, std::to_string(components_.size()) + " components for " + std::to_string(n) +
                                       " semilattice elements");
  }
  phi_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    offsets_.push_back(total_dim_);
    total_dim_ += components_[i].dim();
    phi_[slot(i, i)] = StarHom::identity(components_[i]);
  }
}

void GradedSpec::set_phi(int i, int j, StarHom h) {
  if (i < 0 || j < 0 || i >= size() || j >= size() || !lattice_.leq(i, j)) {
    fail(ErrorCode::IndexOutOfRange, "structure morphism (" + std::to_string(i) + ", " + std::to_string(j) +
                                         ") needs i <= j");
  }
  if (h.source() != components_[j] || h.target() != components_[i]) {
    fail(ErrorCode::ShapeMismatch, pair_name(lattice_, i, j) + " maps " + h.source().str() + " -> " +
                                       h.target().str() + ", expected " + components_[j].str() + " -> " +
                                       components_[i].str());
  }
  phi_[slot(i, j)] = std::move(h);
}

bool GradedSpec::has_phi(int i, int j) const { return phi_[slot(i, j)].has_value(); }

const StarHom& GradedSpec::phi(int i, int j) const {
  const auto& p = phi_[slot(i, j)];
  if (!p) fail(ErrorCode::MissingHom, pair_name(lattice_, i, j));
  return *p;
}

std::pair<int, int> GradedSpec::locate(int global) const {
  if (global < 0 || global >= total_dim_) fail(ErrorCode::IndexOutOfRange, "total basis index " + std::to_string(global));
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  int i = static_cast<int>(it - offsets_.begin()) - 1;
  while (components_[i].dim() == 0) --i;  // zero components share their successor's offset
  return {i, global - offsets_[i]};
}

bool GradedSpec::all_scalar() const {
  return std::all_of(components_.begin(), components_.end(), [](const AlgebraShape& s) { return s == AlgebraShape::scalars(); });
}

bool GradedSpec::components_commutative() const {
  return std::all_of(components_.begin(), components_.end(), [](const AlgebraShape& s) { return s.commutative(); });
}

bool GradedSpec::operator==(const GradedSpec& other) const {
  if (!(lattice_ == other.lattice_) || components_ != other.components_) return false;
  for (std::size_t s = 0; s < phi_.size(); ++s) {
    if (phi_[s].has_value() != other.phi_[s].has_value()) return false;
    if (phi_[s] && phi_[s]->matrix() != other.phi_[s]->matrix()) return false;
  }
  return true;
}

GradedSpec close_over_chains(Semilattice lattice, std::vector<AlgebraShape> components,
                             const std::map<std::pair<int, int>, StarHom>& covering, double tol) {
  GradedSpec spec(lattice, std::move(components));
  const auto& L = spec.lattice();
  const int n = L.size();
  for (const auto& [key, h] : covering) {
    if (!L.covers(key.first, key.second)) {
      fail(ErrorCode::ParseError, pair_name(L, key.first, key.second) + " is not a covering pair");
    }
  }
  std::vector<std::optional<StarHom>> memo(static_cast<std::size_t>(n) * n);
  std::function<const StarHom&(int, int)> resolve = [&](int i, int j) -> const StarHom& {
    auto& slot = memo[static_cast<std::size_t>(i) * n + j];
    if (slot) return *slot;
    if (i == j) {
      slot = StarHom::identity(spec.component(i));
      return *slot;
    }
    std::optional<StarHom> first;
    for (int c = 0; c < n; ++c) {
      if (!L.covers(i, c) || !L.leq(c, j)) continue;
      const auto it = covering.find({i, c});
      if (it == covering.end()) fail(ErrorCode::MissingHom, pair_name(L, i, c) + " (covering pair)");
      StarHom candidate = compose(it->second, resolve(c, j));
      if (!first) {
        first = std::move(candidate);
      } else if (max_abs(first->matrix() - candidate.matrix()) > tol) {
        fail(ErrorCode::PathDependent, pair_name(L, i, j) + " differs along the chain through " + L.name(c));
      }
    }
    slot = std::move(first);
    return *slot;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && L.leq(i, j)) spec.set_phi(i, j, resolve(i, j));
  return spec;
}

double SpecReport::max_residual() const {
  double r = 0.0;
  for (const auto& c : checks) r = std::max(r, c.max_residual);
  return r;
}

SpecReport validate_spec(const GradedSpec& spec, double tol) {
  SpecReport report;
  const auto& L = spec.lattice();
  const int n = spec.size();
  auto raise = [&](ErrorCode code, const std::string& detail) {
    if (!report.error) {
      report.error = code;
      report.error_detail = detail;
    }
  };

  CheckResult present{"phi-present", true, 0.0, ""};
  for (int i = 0; i < n && present.passed; ++i) {
    for (int j = 0; j < n; ++j) {
      if (L.leq(i, j) && !spec.has_phi(i, j)) {
        present.passed = false;
        present.detail = pair_name(L, i, j);
        break;
      }
    }
  }
  report.checks.push_back(present);
  if (!present.passed) {
    raise(ErrorCode::MissingHom, present.detail);
    return report;
  }

  CheckResult axiom_a{"axiom-a", true, 0.0, ""};
  for (int i = 0; i < n; ++i) {
    const double r = max_abs(spec.phi(i, i).matrix() - Mat::Identity(spec.component(i).dim(), spec.component(i).dim()));
    if (r > axiom_a.max_residual) {
      axiom_a.max_residual = r;
      axiom_a.detail = pair_name(L, i, i);
    }
  }
  axiom_a.passed = axiom_a.max_residual <= tol;
  report.checks.push_back(axiom_a);
  if (!axiom_a.passed) raise(ErrorCode::AxiomAViolation, axiom_a.detail + " is not the identity");

  CheckResult star{"phi-star-hom", true, 0.0, ""};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || !L.leq(i, j)) continue;
      const auto c = check_starhom(spec.phi(i, j), tol);
      if (c.max_residual > star.max_residual) {
        star.max_residual = c.max_residual;
        star.detail = pair_name(L, i, j);
      }
    }
  }
  star.passed = star.max_residual <= tol;
  report.checks.push_back(star);
  if (!star.passed) raise(ErrorCode::HomNotStar, star.detail + " is not a *-homomorphism");

  const auto b = kernels::parallel::axiom_b(spec);
  CheckResult axiom_b{"axiom-b", b.max_residual <= tol, b.max_residual, ""};
  if (b.i >= 0) {
    std::ostringstream os;
    os << "(i, j, m, x, y) = (" << L.name(b.i) << ", " << L.name(b.j) << ", " << L.name(b.m) << ", " << b.x << ", "
       << b.y << ")";
    axiom_b.detail = os.str();
  }
  report.checks.push_back(axiom_b);
  if (!axiom_b.passed) raise(ErrorCode::AxiomBViolation, axiom_b.detail);
  return report;
}

SpecReport ensure_valid(const GradedSpec& spec, double tol) {
  auto report = validate_spec(spec, tol);
  if (report.error) fail(*report.error, report.error_detail);
  return report;
}

// ---------------------------------------------------------------------------

GradedElement GradedElement::zero(const GradedSpec& spec) {
  GradedElement x;
  for (const auto& s : spec.components()) x.parts.push_back(AlgElement::zero(s));
  return x;
}

GradedElement GradedElement::unit_at(const GradedSpec& spec, int i) {
  return at(spec, i, AlgElement::unit(spec.component(i)));
}

GradedElement GradedElement::at(const GradedSpec& spec, int i, AlgElement x) {
  auto out = zero(spec);
  if (x.shape() != spec.component(i)) fail(ErrorCode::ShapeMismatch, "component " + spec.lattice().name(i));
  out.parts[i] = std::move(x);
  return out;
}

GradedElement GradedElement::basis(const GradedSpec& spec, int global) {
  const auto [i, local] = spec.locate(global);
  return at(spec, i, AlgElement::basis(spec.component(i), local));
}

GradedElement GradedElement::from_vector(const GradedSpec& spec, const Vec& v) {
  if (v.size() != spec.total_dim()) fail(ErrorCode::ShapeMismatch, "vector length differs from total dimension");
  GradedElement x;
  for (int i = 0; i < spec.size(); ++i) {
    const auto& s = spec.component(i);
    x.parts.push_back(AlgElement::from_vector(s, v.segment(spec.offset(i), s.dim())));
  }
  return x;
}

GradedElement GradedElement::random(const GradedSpec& spec, Rng& rng) {
  return from_vector(spec, rng.complex_vector(spec.total_dim()));
}

Vec GradedElement::to_vector() const {
  int d = 0;
  for (const auto& p : parts) d += p.shape().dim();
  Vec v(d);
  int at = 0;
  for (const auto& p : parts) {
    v.segment(at, p.shape().dim()) = p.to_vector();
    at += p.shape().dim();
  }
  return v;
}

IndexSet GradedElement::support(double tol) const {
  IndexSet s;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (!parts[i].is_zero(tol)) s.push_back(static_cast<int>(i));
  return s;
}

namespace {

void require_element(const GradedSpec& spec, const GradedElement& x) {
  if (static_cast<int>(x.parts.size()) != spec.size()) fail(ErrorCode::SpecMismatch, "component count");
  for (int i = 0; i < spec.size(); ++i) {
    if (x.parts[i].shape() != spec.component(i)) fail(ErrorCode::SpecMismatch, "component " + spec.lattice().name(i));
  }
}

}  // namespace

GradedElement gadd(const GradedSpec& spec, const GradedElement& x, const GradedElement& y) {
  require_element(spec, x);
  require_element(spec, y);
  GradedElement out = x;
  for (int i = 0; i < spec.size(); ++i) out.parts[i] += y.parts[i];
  return out;
}

GradedElement gscale(const GradedSpec& spec, cplx s, const GradedElement& x) {
  require_element(spec, x);
  GradedElement out = x;
  for (auto& p : out.parts) p *= s;
  return out;
}

GradedElement gmul(const GradedSpec& spec, const GradedElement& x, const GradedElement& y) {
  require_element(spec, x);
  require_element(spec, y);
  const auto& L = spec.lattice();
  const int n = spec.size();
  auto out = GradedElement::zero(spec);
  const auto sx = x.support();
  const auto sy = y.support();
  for (int k = 0; k < n; ++k) {
    if (spec.component(k).is_zero()) continue;
    std::vector<std::optional<AlgElement>> left(n), right(n);
    for (int i : sx)
      if (L.leq(k, i)) left[i] = spec.phi(k, i).apply(x.parts[i]);
    for (int j : sy)
      if (L.leq(k, j)) right[j] = spec.phi(k, j).apply(y.parts[j]);
    for (int i : sx) {
      if (!left[i]) continue;
      for (int j : sy) {
        if (right[j] && L.meet(i, j) == k) out.parts[k] += *left[i] * *right[j];
      }
    }
  }
  return out;
}

GradedElement gadjoint(const GradedSpec& spec, const GradedElement& x) {
  require_element(spec, x);
  GradedElement out;
  for (const auto& p : x.parts) out.parts.push_back(adjoint(p));
  return out;
}

AlgElement pi_rep(const GradedSpec& spec, int i, const GradedElement& x) {
  require_element(spec, x);
  auto out = AlgElement::zero(spec.component(i));
  for (int j = 0; j < spec.size(); ++j) {
    if (spec.lattice().leq(i, j)) out += spec.phi(i, j).apply(x.parts[j]);
  }
  return out;
}

double gnorm(const GradedSpec& spec, const GradedElement& x) {
  double n = 0.0;
  for (int i = 0; i < spec.size(); ++i) n = std::max(n, op_norm(pi_rep(spec, i, x)));
  return n;
}

AlgebraShape faithful_shape(const GradedSpec& spec) { return concat(spec.components()); }

AlgElement faithful_image(const GradedSpec& spec, const GradedElement& x) {
  std::vector<Mat> blocks;
  for (int i = 0; i < spec.size(); ++i) {
    const auto p = pi_rep(spec, i, x);
    blocks.insert(blocks.end(), p.blocks().begin(), p.blocks().end());
  }
  return AlgElement::from_blocks(faithful_shape(spec), std::move(blocks));
}

Mat faithful_image_map(const GradedSpec& spec) {
  // Component dimensions are unchanged in the concatenated shape, so the
  // offsets coincide and block (i, j) of the matrix is phi(i, j) for i <= j.
  const int d = spec.total_dim();
  Mat m = Mat::Zero(d, d);
  for (int i = 0; i < spec.size(); ++i)
    for (int j = 0; j < spec.size(); ++j)
      if (spec.lattice().leq(i, j))
        m.block(spec.offset(i), spec.offset(j), spec.component(i).dim(), spec.component(j).dim()) = spec.phi(i, j).matrix();
  return m;
}

Vec ProductTable::multiply(const Vec& x, const Vec& y) const {
  Vec out = Vec::Zero(dim);
  for (int a = 0; a < dim; ++a)
    if (x(a) != cplx(0.0)) out += x(a) * (left[a] * y);
  return out;
}

ProductTable product_table(const GradedSpec& spec) { return kernels::parallel::product_table(spec); }

double commutator_residual(const ProductTable& table) {
  double r = 0.0;
  for (int a = 0; a < table.dim; ++a)
    for (int b = a + 1; b < table.dim; ++b) r = std::max(r, (table.left[a].col(b) - table.left[b].col(a)).norm());
  return r;
}

bool is_commutative(const GradedSpec& spec, double tol) { return commutator_residual(product_table(spec)) <= tol; }

// ---------------------------------------------------------------------------

AlgElement QFamily::apply(int i, int j, const AlgElement& x, const AlgElement& y) const {
  const Vec xv = x.to_vector();
  const Vec yv = y.to_vector();
  Vec kron(xv.size() * yv.size());
  for (Eigen::Index a = 0; a < xv.size(); ++a) kron.segment(a * yv.size(), yv.size()) = xv(a) * yv;
  return AlgElement::from_vector(components[lattice.meet(i, j)], q(i, j) * kron);
}

AlgElement q_from_phi(const GradedSpec& spec, int i, int j, const AlgElement& x, const AlgElement& y) {
  const int k = spec.lattice().meet(i, j);
  return spec.phi(k, i).apply(x) * spec.phi(k, j).apply(y);
}

QFamily q_from_phi(const GradedSpec& spec) {
  QFamily q;
  q.lattice = spec.lattice();
  q.components = spec.components();
  const int n = spec.size();
  q.values.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = spec.lattice().meet(i, j);
      const auto& ai = spec.component(i);
      const auto& aj = spec.component(j);
      Mat& out = q.q(i, j);
      out = Mat::Zero(spec.component(k).dim(), ai.dim() * aj.dim());
      std::vector<AlgElement> right;
      for (int b = 0; b < aj.dim(); ++b) right.push_back(spec.phi(k, j).image_of_basis(b));
      for (int a = 0; a < ai.dim(); ++a) {
        const auto left = spec.phi(k, i).image_of_basis(a);
        for (int b = 0; b < aj.dim(); ++b) out.col(a * aj.dim() + b) = (left * right[b]).to_vector();
      }
    }
  }
  return q;
}

QCheck check_q_axioms(const QFamily& q) {
  QCheck c;
  const int n = q.lattice.size();
  for (int i = 0; i < n; ++i) {
    const auto& s = q.components[i];
    for (int a = 0; a < s.dim(); ++a) {
      const auto ea = AlgElement::basis(s, a);
      for (int b = 0; b < s.dim(); ++b) {
        const Vec expect = (ea * AlgElement::basis(s, b)).to_vector();
        c.a_residual = std::max(c.a_residual, (q.q(i, i).col(a * s.dim() + b) - expect).norm());
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& si = q.components[i];
      const auto& sj = q.components[j];
      const auto& sk = q.components[q.lattice.meet(i, j)];
      for (int a = 0; a < si.dim(); ++a) {
        const auto ua = si.decode(a);
        const int a_star = si.encode(ua.block, ua.col, ua.row);
        for (int b = 0; b < sj.dim(); ++b) {
          const auto ub = sj.decode(b);
          const int b_star = sj.encode(ub.block, ub.col, ub.row);
          const auto lhs = AlgElement::from_vector(sk, q.q(i, j).col(a * sj.dim() + b));
          const auto rhs = adjoint(AlgElement::from_vector(sk, q.q(j, i).col(b_star * si.dim() + a_star)));
          c.b_residual = std::max(c.b_residual, distance(lhs, rhs));
        }
      }
    }
  }
  c.c_residual = kernels::parallel::q_associativity(q);
  return c;
}

GradedSpec phi_from_q(const QFamily& q, double tol) {
  const auto check = check_q_axioms(q);
  if (!check.ok(tol)) {
    std::ostringstream os;
    os << "residuals a'=" << check.a_residual << " b'=" << check.b_residual << " c'=" << check.c_residual;
    fail(ErrorCode::QAxiomViolation, os.str());
  }
  GradedSpec spec(q.lattice, q.components);
  const int n = q.lattice.size();
  for (int i = 0; i < n; ++i) {
    const auto& si = q.components[i];
    const Vec unit = AlgElement::unit(si).to_vector();
    for (int j = 0; j < n; ++j) {
      if (i == j || !q.lattice.leq(i, j)) continue;
      const auto& sj = q.components[j];
      // q(j, i) : A_j x A_i -> A_i; column b * dim(A_i) + c holds q(E_b, E_c).
      Mat m = Mat::Zero(si.dim(), sj.dim());
      for (int b = 0; b < sj.dim(); ++b)
        for (int c = 0; c < si.dim(); ++c)
          if (unit(c) != cplx(0.0)) m.col(b) += unit(c) * q.q(j, i).col(b * si.dim() + c);
      spec.set_phi(i, j, StarHom(sj, si, std::move(m)));
    }
  }
  return spec;
}

double phi_distance(const GradedSpec& a, const GradedSpec& b) {
  if (!(a.lattice() == b.lattice()) || a.components() != b.components()) {
    fail(ErrorCode::SpecMismatch, "specs differ in semilattice or components");
  }
  double d = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (a.lattice().leq(i, j)) d = std::max(d, max_abs(a.phi(i, j).matrix() - b.phi(i, j).matrix()));
  return d;
}

}  // namespace gca
