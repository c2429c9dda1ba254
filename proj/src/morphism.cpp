#include <algorithm>
#include <cmath>
#include <sstream>

#include "gca/graded.hpp"

namespace gca {

GradedSpec restrict_spec(const GradedSpec& spec, const IndexSet& m) {
  const auto sub_lattice = induced_semilattice(spec.lattice(), m);
  std::vector<AlgebraShape> comps;
  for (int i : m) comps.push_back(spec.component(i));
  GradedSpec sub(sub_lattice, std::move(comps));
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b)
      if (a != b && spec.lattice().leq(m[a], m[b]) && spec.has_phi(m[a], m[b]))
        sub.set_phi(static_cast<int>(a), static_cast<int>(b), spec.phi(m[a], m[b]));
  return sub;
}

namespace {

// Coordinate projection onto the components listed in m.
Mat coordinate_projection(const GradedSpec& spec, const IndexSet& m, int sub_dim) {
  Mat p = Mat::Zero(sub_dim, spec.total_dim());
  int row = 0;
  for (int i : m) {
    for (int a = 0; a < spec.component(i).dim(); ++a) p(row++, spec.offset(i) + a) = 1.0;
  }
  return p;
}

double multiplicative_residual(const GradedSpec& spec, const GradedSpec& sub, const Mat& p) {
  const auto full = product_table(spec);
  const auto part = product_table(sub);
  // Row index in the sub basis of each total basis element, or -1.
  std::vector<int> to_sub(spec.total_dim(), -1);
  for (int r = 0; r < p.rows(); ++r)
    for (int c = 0; c < p.cols(); ++c)
      if (p(r, c) != cplx(0.0)) to_sub[c] = r;
  double res = 0.0;
  for (int a = 0; a < spec.total_dim(); ++a) {
    const Mat projected = p * full.left[a];
    for (int b = 0; b < spec.total_dim(); ++b) {
      Vec rhs = Vec::Zero(sub.total_dim());
      if (to_sub[a] >= 0 && to_sub[b] >= 0) rhs = part.left[to_sub[a]].col(to_sub[b]);
      res = std::max(res, (projected.col(b) - rhs).norm());
    }
  }
  return res;
}

}  // namespace

double projection_multiplicative_residual(const GradedSpec& spec, const IndexSet& m) {
  const auto sub = restrict_spec(spec, m);
  return multiplicative_residual(spec, sub, coordinate_projection(spec, m, sub.total_dim()));
}

FinishingSplit split_finishing(const GradedSpec& spec, const IndexSet& m, double tol) {
  (void)tol;
  if (!is_finishing_subsemilattice(spec.lattice(), m)) {
    fail(ErrorCode::NotFinishing, format_set(spec.lattice(), m) + " is not a finishing sub-semilattice");
  }
  FinishingSplit s;
  s.subset = m;
  s.sub = restrict_spec(spec, m);
  s.projection = coordinate_projection(spec, m, s.sub.total_dim());
  s.section = s.projection.transpose();
  const Mat ps = s.projection * s.section;
  s.section_exact = ps == Mat::Identity(ps.rows(), ps.cols());
  s.multiplicative_residual = multiplicative_residual(spec, s.sub, s.projection);
  s.kernel_dim = spec.total_dim() - numerical_rank(s.projection);
  s.section_rank = numerical_rank(s.section);
  return s;
}

GradedElement project_finishing(const GradedSpec& spec, const IndexSet& m, const GradedElement& x) {
  if (!is_finishing_subsemilattice(spec.lattice(), m)) {
    fail(ErrorCode::NotFinishing, format_set(spec.lattice(), m) + " is not a finishing sub-semilattice");
  }
  if (static_cast<int>(x.parts.size()) != spec.size()) fail(ErrorCode::SpecMismatch, "component count");
  GradedElement out;
  for (int i : m) out.parts.push_back(x.parts[i]);
  return out;
}

GradedElement finishing_section(const GradedSpec& spec, const IndexSet& m, const GradedElement& x_sub) {
  if (!is_finishing_subsemilattice(spec.lattice(), m)) {
    fail(ErrorCode::NotFinishing, format_set(spec.lattice(), m) + " is not a finishing sub-semilattice");
  }
  if (x_sub.parts.size() != m.size()) fail(ErrorCode::SpecMismatch, "component count");
  auto out = GradedElement::zero(spec);
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (x_sub.parts[a].shape() != spec.component(m[a])) fail(ErrorCode::SpecMismatch, "component shape");
    out.parts[m[a]] = x_sub.parts[a];
  }
  return out;
}

// ---------------------------------------------------------------------------

IdealReport verify_ideal_gradation(const GradedSpec& spec, const BlockSelection& ideal, double tol) {
  const int n = spec.size();
  if (static_cast<int>(ideal.size()) != n) fail(ErrorCode::ShapeMismatch, "block selection needs one entry per index");
  std::vector<std::vector<bool>> chosen(n);
  for (int i = 0; i < n; ++i) {
    chosen[i].assign(spec.component(i).block_count(), false);
    for (int k : ideal[i]) {
      if (k < 0 || k >= spec.component(i).block_count()) {
        fail(ErrorCode::IndexOutOfRange, "block " + std::to_string(k) + " of " + spec.lattice().name(i));
      }
      chosen[i][k] = true;
    }
  }

  IdealReport report;
  std::vector<bool> in_ideal(spec.total_dim(), false);
  for (int g = 0; g < spec.total_dim(); ++g) {
    const auto [i, local] = spec.locate(g);
    in_ideal[g] = chosen[i][spec.component(i).decode(local).block];
    if (in_ideal[g]) ++report.ideal_dim;
  }
  report.quotient_dim = spec.total_dim() - report.ideal_dim;

  auto outside_norm = [&](const auto& v) {
    double s = 0.0;
    for (int g = 0; g < spec.total_dim(); ++g)
      if (!in_ideal[g]) s += std::norm(v(g));
    return std::sqrt(s);
  };
  const auto table = product_table(spec);
  for (int a = 0; a < spec.total_dim(); ++a) {
    if (!in_ideal[a]) continue;
    for (int b = 0; b < spec.total_dim(); ++b) {
      report.ideal_residual = std::max(report.ideal_residual, outside_norm(table.left[a].col(b)));
      report.ideal_residual = std::max(report.ideal_residual, outside_norm(table.left[b].col(a)));
    }
  }
  if (report.ideal_residual > tol) {
    std::ostringstream os;
    os << "selected blocks are not a two-sided ideal (residual " << report.ideal_residual << ")";
    fail(ErrorCode::NotAnIdeal, os.str());
  }

  // Quotient components keep the unselected blocks; coordinate maps embed and
  // restrict between A_i and its quotient.
  std::vector<AlgebraShape> qcomps;
  std::vector<Mat> restrict_map(n), embed_map(n);
  for (int i = 0; i < n; ++i) {
    const auto& s = spec.component(i);
    std::vector<int> kept;
    for (int k = 0; k < s.block_count(); ++k)
      if (!chosen[i][k]) kept.push_back(s.block(k));
    qcomps.emplace_back(kept);
    const auto& q = qcomps.back();
    restrict_map[i] = Mat::Zero(q.dim(), s.dim());
    int qk = 0;
    for (int k = 0; k < s.block_count(); ++k) {
      if (chosen[i][k]) continue;
      for (int e = 0; e < s.block(k) * s.block(k); ++e) restrict_map[i](q.offset(qk) + e, s.offset(k) + e) = 1.0;
      ++qk;
    }
    embed_map[i] = restrict_map[i].transpose();
  }
  GradedSpec quotient(spec.lattice(), qcomps);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && spec.lattice().leq(i, j))
        quotient.set_phi(i, j, StarHom(qcomps[j], qcomps[i], restrict_map[i] * spec.phi(i, j).matrix() * embed_map[j]));

  // The images of the quotient components must stay independent in the total
  // quotient algebra.
  const Mat fq = faithful_image_map(quotient);
  int rank_sum = 0;
  for (int i = 0; i < n; ++i) rank_sum += numerical_rank(fq.middleCols(quotient.offset(i), qcomps[i].dim()));
  report.quotient_rank = numerical_rank(fq);
  if (report.quotient_rank != rank_sum || report.quotient_rank != report.quotient_dim) {
    fail(ErrorCode::QuotientDegenerate, "quotient components are not independent: rank " +
                                            std::to_string(report.quotient_rank) + " of " +
                                            std::to_string(report.quotient_dim));
  }
  report.quotient_validation = validate_spec(quotient, tol);
  if (!report.quotient_validation.ok()) {
    fail(ErrorCode::QuotientDegenerate, "descended structure morphisms fail validation: " +
                                            report.quotient_validation.error_detail);
  }
  report.quotient = std::move(quotient);
  return report;
}

// ---------------------------------------------------------------------------

Vec MorphismTarget::multiply(const Vec& a, const Vec& b) const {
  if (graded_) {
    return gmul(*graded_, GradedElement::from_vector(*graded_, a), GradedElement::from_vector(*graded_, b)).to_vector();
  }
  return (AlgElement::from_vector(shape_, a) * AlgElement::from_vector(shape_, b)).to_vector();
}

Mat GradedMorphism::total() const {
  Mat t(target_.dim(), source_.total_dim());
  for (int i = 0; i < source_.size(); ++i) t.middleCols(source_.offset(i), source_.component(i).dim()) = pieces_[i];
  return t;
}

namespace {

// psi_{j∧k}(q(x, y)) against psi_j(x) psi_k(y) on all basis pairs; pieces are
// dim(target) x dim(A_i) matrices.
void check_compatible(const GradedSpec& spec, const MorphismTarget& target, const std::vector<Mat>& pieces,
                      double tol) {
  const auto& L = spec.lattice();
  const auto q = q_from_phi(spec);
  double worst = 0.0;
  std::string where;
  for (int j = 0; j < spec.size(); ++j) {
    for (int k = 0; k < spec.size(); ++k) {
      const int m = L.meet(j, k);
      const int dk = spec.component(k).dim();
      const Mat lhs = pieces[m] * q.q(j, k);
      for (int x = 0; x < spec.component(j).dim(); ++x) {
        for (int y = 0; y < dk; ++y) {
          const double r = (lhs.col(x * dk + y) - target.multiply(pieces[j].col(x), pieces[k].col(y))).norm();
          if (r > worst) {
            worst = r;
            where = "(" + L.name(j) + ", " + L.name(k) + ", " + std::to_string(x) + ", " + std::to_string(y) + ")";
          }
        }
      }
    }
  }
  if (worst > tol) {
    std::ostringstream os;
    os << "family fails compatibility at (j, k, x, y) = " << where << ", residual " << worst;
    fail(ErrorCode::IncompatibleFamily, os.str());
  }
}

}  // namespace

GradedMorphism build_morphism(const GradedSpec& spec, const AlgebraShape& target, std::vector<StarHom> psi, double tol) {
  if (static_cast<int>(psi.size()) != spec.size()) fail(ErrorCode::ShapeMismatch, "one map per index required");
  std::vector<Mat> pieces;
  for (int i = 0; i < spec.size(); ++i) {
    if (psi[i].source() != spec.component(i) || psi[i].target() != target) {
      fail(ErrorCode::ShapeMismatch, "map at " + spec.lattice().name(i) + " has the wrong shape");
    }
    validate_starhom(psi[i], tol);
    pieces.push_back(psi[i].matrix());
  }
  MorphismTarget t(target);
  check_compatible(spec, t, pieces, tol);
  return GradedMorphism(spec, std::move(t), std::move(pieces), {});
}

GradedMorphism build_morphism(const GradedSpec& spec, const GradedSpec& target, std::vector<StarHom> rho, double tol) {
  if (!(spec.lattice() == target.lattice())) fail(ErrorCode::SpecMismatch, "semilattices differ");
  if (static_cast<int>(rho.size()) != spec.size()) fail(ErrorCode::ShapeMismatch, "one map per index required");
  std::vector<Mat> pieces;
  for (int i = 0; i < spec.size(); ++i) {
    if (rho[i].source() != spec.component(i) || rho[i].target() != target.component(i)) {
      fail(ErrorCode::ShapeMismatch, "map at " + spec.lattice().name(i) + " has the wrong shape");
    }
    validate_starhom(rho[i], tol);
    Mat p = Mat::Zero(target.total_dim(), spec.component(i).dim());
    p.middleRows(target.offset(i), target.component(i).dim()) = rho[i].matrix();
    pieces.push_back(std::move(p));
  }
  MorphismTarget t(target);
  check_compatible(spec, t, pieces, tol);
  return GradedMorphism(spec, std::move(t), std::move(pieces), std::move(rho));
}

GradedMorphism identity_morphism(const GradedSpec& spec) {
  std::vector<StarHom> rho;
  for (const auto& s : spec.components()) rho.push_back(StarHom::identity(s));
  return build_morphism(spec, spec, std::move(rho));
}

GradedMorphism zero_morphism(const GradedSpec& spec, const AlgebraShape& target) {
  std::vector<StarHom> psi;
  for (const auto& s : spec.components()) psi.push_back(StarHom::zero(s, target));
  return build_morphism(spec, target, std::move(psi));
}

GradedMorphism pi_morphism(const GradedSpec& spec, int i) {
  std::vector<StarHom> psi;
  for (int j = 0; j < spec.size(); ++j) {
    psi.push_back(spec.lattice().leq(i, j) ? spec.phi(i, j) : StarHom::zero(spec.component(j), spec.component(i)));
  }
  return build_morphism(spec, spec.component(i), std::move(psi));
}

GradedMorphism faithful_morphism(const GradedSpec& spec) {
  const auto shape = faithful_shape(spec);
  const Mat f = faithful_image_map(spec);
  std::vector<StarHom> psi;
  for (int j = 0; j < spec.size(); ++j) {
    psi.emplace_back(spec.component(j), shape, f.middleCols(spec.offset(j), spec.component(j).dim()));
  }
  return build_morphism(spec, shape, std::move(psi));
}

MorphismAnalysis analyze_morphism(const GradedMorphism& m) {
  MorphismAnalysis a;
  const auto& spec = m.source();
  int image_sum = 0;
  for (int i = 0; i < spec.size(); ++i) {
    const int r = numerical_rank(m.piece(i));
    a.image_dims.push_back(r);
    a.ker_dims.push_back(spec.component(i).dim() - r);
    image_sum += r;
  }
  a.joint_rank = numerical_rank(m.total());
  a.total_kernel_dim = spec.total_dim() - a.joint_rank;
  a.images_direct = image_sum == a.joint_rank;
  a.injective = a.total_kernel_dim == 0;
  a.surjective = a.joint_rank == m.target().dim();
  if (m.target().is_graded()) {
    const auto& target = m.target().graded();
    bool inj = true, sur = true;
    int ker_sum = 0;
    for (int i = 0; i < spec.size(); ++i) {
      const auto& rho = m.graded_pieces()[i];
      const int r = numerical_rank(rho.matrix());
      inj = inj && r == spec.component(i).dim();
      sur = sur && r == target.component(i).dim();
      ker_sum += spec.component(i).dim() - r;
    }
    a.componentwise_injective = inj;
    a.componentwise_surjective = sur;
    a.kernel_sum_matches = ker_sum == a.total_kernel_dim;
  }
  return a;
}

}  // namespace gca
