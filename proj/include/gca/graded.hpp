#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gca/error.hpp"
#include "gca/findim.hpp"
#include "gca/semilattice.hpp"

namespace gca {

/// Semilattice-graded C*-algebra given by its components A_i and structure
/// morphisms phi(i, j) : A_j -> A_i for every comparable pair i <= j.
///
/// Components are finite-dimensional, hence unital, so the multiplier algebra
/// M(A_i) is A_i itself and every structure morphism lands in A_i. The total
/// algebra has the direct sum of the components as its vector space; its
/// canonical basis lists the components in index order.
class GradedSpec {
 public:
  GradedSpec() = default;
  /// phi(i, i) starts as the identity; every other pair starts missing.
  GradedSpec(Semilattice lattice, std::vector<AlgebraShape> components);

  const Semilattice& lattice() const noexcept { return lattice_; }
  int size() const noexcept { return lattice_.size(); }
  const AlgebraShape& component(int i) const { return components_[i]; }
  const std::vector<AlgebraShape>& components() const noexcept { return components_; }

  /// Requires i <= j, h.source() == A_j and h.target() == A_i.
  void set_phi(int i, int j, StarHom h);
  bool has_phi(int i, int j) const;
  /// Throws MissingHom.
  const StarHom& phi(int i, int j) const;

  int total_dim() const noexcept { return total_dim_; }
  int offset(int i) const { return offsets_[i]; }
  /// Component and local basis index of a total-basis index.
  std::pair<int, int> locate(int global) const;

  bool all_scalar() const;
  bool components_commutative() const;

  bool operator==(const GradedSpec& other) const;

 private:
  std::size_t slot(int i, int j) const { return static_cast<std::size_t>(i) * lattice_.size() + j; }

  Semilattice lattice_ = Semilattice::chain(1);
  std::vector<AlgebraShape> components_;
  std::vector<std::optional<StarHom>> phi_;
  std::vector<int> offsets_;
  int total_dim_ = 0;
};

/// Builds a spec from structure morphisms given on covering pairs only,
/// composing along maximal chains. Every pair reachable by several chains must
/// give the same composite to within tol, else PathDependent.
GradedSpec close_over_chains(Semilattice lattice, std::vector<AlgebraShape> components,
                             const std::map<std::pair<int, int>, StarHom>& covering, double tol = kBasisTol);

struct CheckResult {
  std::string name;
  bool passed = true;
  double max_residual = 0.0;
  std::string detail;
};

struct SpecReport {
  std::vector<CheckResult> checks;
  std::optional<ErrorCode> error;
  std::string error_detail;
  bool ok() const { return !error.has_value(); }
  double max_residual() const;
};

/// Checks that every phi(i, j) is present, phi(i, i) is the identity, each
/// phi is a *-homomorphism, and axiom b) on all basis pairs:
///   phi(m,k)(phi(k,i)(x) phi(k,j)(y)) = phi(m,i)(x) phi(m,j)(y),  k = i∧j, m <= k.
/// The companion requirement phi(k,i)(x) phi(k,j)(y) ∈ A_k holds trivially
/// because every structure morphism already lands in a component.
SpecReport validate_spec(const GradedSpec& spec, double tol = kBasisTol);

/// Throws the first error found by validate_spec.
SpecReport ensure_valid(const GradedSpec& spec, double tol = kBasisTol);

/// Element of the total algebra: one component per index.
struct GradedElement {
  std::vector<AlgElement> parts;

  static GradedElement zero(const GradedSpec& spec);
  /// Unit of A_i placed at index i (the element e_i).
  static GradedElement unit_at(const GradedSpec& spec, int i);
  static GradedElement at(const GradedSpec& spec, int i, AlgElement x);
  static GradedElement basis(const GradedSpec& spec, int global);
  static GradedElement from_vector(const GradedSpec& spec, const Vec& v);
  static GradedElement random(const GradedSpec& spec, Rng& rng);

  Vec to_vector() const;
  IndexSet support(double tol = 0.0) const;
};

GradedElement gadd(const GradedSpec& spec, const GradedElement& x, const GradedElement& y);
GradedElement gscale(const GradedSpec& spec, cplx s, const GradedElement& x);
/// (xy)_k = sum over i∧j = k of phi(k,i)(x_i) phi(k,j)(y_j).
GradedElement gmul(const GradedSpec& spec, const GradedElement& x, const GradedElement& y);
GradedElement gadjoint(const GradedSpec& spec, const GradedElement& x);

/// pi_i(x) = sum over j >= i of phi(i,j)(x_j).
AlgElement pi_rep(const GradedSpec& spec, int i, const GradedElement& x);

/// sup_i |pi_i(x)|, the unique C*-norm of the total algebra.
double gnorm(const GradedSpec& spec, const GradedElement& x);

/// Target shape of the faithful representation: all components side by side.
AlgebraShape faithful_shape(const GradedSpec& spec);
/// Block-diagonal concatenation of every pi_i(x).
AlgElement faithful_image(const GradedSpec& spec, const GradedElement& x);
/// Matrix of x -> faithful_image(x), dim(faithful_shape) x total_dim.
Mat faithful_image_map(const GradedSpec& spec);

/// Left-multiplication matrices of the total basis: column b of left[a] is
/// the product of basis elements a and b.
struct ProductTable {
  int dim = 0;
  std::vector<Mat> left;
  Vec multiply(const Vec& x, const Vec& y) const;
};
ProductTable product_table(const GradedSpec& spec);

/// Largest |ab - ba| over total basis pairs.
double commutator_residual(const ProductTable& table);
bool is_commutative(const GradedSpec& spec, double tol = kBasisTol);

// ---------------------------------------------------------------------------
// Structure applications q(i,j) : A_i x A_j -> A_{i∧j}

/// q(i,j) stored on basis pairs: a dim(A_{i∧j}) x (dim A_i * dim A_j) matrix,
/// column a * dim(A_j) + b holding q(E_a, E_b).
struct QFamily {
  Semilattice lattice = Semilattice::chain(1);
  std::vector<AlgebraShape> components;
  std::vector<Mat> values;  // index i * n + j

  const Mat& q(int i, int j) const { return values[static_cast<std::size_t>(i) * lattice.size() + j]; }
  Mat& q(int i, int j) { return values[static_cast<std::size_t>(i) * lattice.size() + j]; }
  AlgElement apply(int i, int j, const AlgElement& x, const AlgElement& y) const;
};

/// phi(i∧j, i)(x) phi(i∧j, j)(y).
AlgElement q_from_phi(const GradedSpec& spec, int i, int j, const AlgElement& x, const AlgElement& y);
QFamily q_from_phi(const GradedSpec& spec);

struct QCheck {
  double a_residual = 0.0;  // q(i,i)(x,y) = xy
  double b_residual = 0.0;  // q(i,j)(x,y) = q(j,i)(y*,x*)*
  double c_residual = 0.0;  // q(i∧j,k)(q(i,j)(x,y),z) = q(i,j∧k)(x,q(j,k)(y,z))
  bool ok(double tol) const { return a_residual <= tol && b_residual <= tol && c_residual <= tol; }
};
QCheck check_q_axioms(const QFamily& q);

/// Recovers phi(i,j)(y) = q(j,i)(y, 1_{A_i}); throws QAxiomViolation.
GradedSpec phi_from_q(const QFamily& q, double tol = kBasisTol);

/// Largest entrywise difference between the structure morphisms of two specs
/// over the same semilattice and components.
double phi_distance(const GradedSpec& a, const GradedSpec& b);

// ---------------------------------------------------------------------------
// Finishing splits and ideals

/// Spec restricted to a meet-closed subset M (the sub-algebra A_M).
GradedSpec restrict_spec(const GradedSpec& spec, const IndexSet& m);

struct FinishingSplit {
  IndexSet subset;
  GradedSpec sub;
  Mat projection;  // dim(A_M) x total_dim, zeroes the components outside M
  Mat section;     // total_dim x dim(A_M), the inclusion
  double multiplicative_residual = 0.0;
  bool section_exact = false;  // projection * section == I bit-exactly
  int kernel_dim = 0;
  int section_rank = 0;
};

/// Split exact sequence along a finishing sub-semilattice M. Throws NotFinishing.
FinishingSplit split_finishing(const GradedSpec& spec, const IndexSet& m, double tol = kBasisTol);
GradedElement project_finishing(const GradedSpec& spec, const IndexSet& m, const GradedElement& x);
GradedElement finishing_section(const GradedSpec& spec, const IndexSet& m, const GradedElement& x_sub);

/// Multiplicativity residual of the coordinate projection onto any
/// meet-closed M, without requiring M to be finishing.
double projection_multiplicative_residual(const GradedSpec& spec, const IndexSet& m);

/// Ideal given per index as a subset of the blocks of A_i.
using BlockSelection = std::vector<std::vector<int>>;

struct IdealReport {
  double ideal_residual = 0.0;
  int ideal_dim = 0;
  int quotient_dim = 0;
  int quotient_rank = 0;
  GradedSpec quotient;
  SpecReport quotient_validation;
};

/// Checks that the selected blocks span a two-sided ideal of the total
/// algebra, builds the quotient spec with the descended structure morphisms
/// and validates it. Throws NotAnIdeal or QuotientDegenerate.
IdealReport verify_ideal_gradation(const GradedSpec& spec, const BlockSelection& ideal, double tol = kBasisTol);

// ---------------------------------------------------------------------------
// Graded morphisms

/// Codomain of a graded morphism: a plain block algebra, or the total algebra
/// of another graded spec over the same semilattice.
class MorphismTarget {
 public:
  explicit MorphismTarget(AlgebraShape shape) : shape_(std::move(shape)) {}
  explicit MorphismTarget(GradedSpec spec) : graded_(std::move(spec)) {}

  bool is_graded() const noexcept { return graded_.has_value(); }
  const GradedSpec& graded() const { return *graded_; }
  const AlgebraShape& shape() const { return shape_; }
  int dim() const { return graded_ ? graded_->total_dim() : shape_.dim(); }
  Vec multiply(const Vec& a, const Vec& b) const;

 private:
  AlgebraShape shape_;
  std::optional<GradedSpec> graded_;
};

class GradedMorphism {
 public:
  GradedMorphism(GradedSpec source, MorphismTarget target, std::vector<Mat> pieces, std::vector<StarHom> graded_pieces)
      : source_(std::move(source)),
        target_(std::move(target)),
        pieces_(std::move(pieces)),
        graded_pieces_(std::move(graded_pieces)) {}

  const GradedSpec& source() const noexcept { return source_; }
  const MorphismTarget& target() const noexcept { return target_; }
  /// psi_i as a dim(target) x dim(A_i) matrix.
  const Mat& piece(int i) const { return pieces_[i]; }
  /// For graded targets: rho_i : A_i -> B_i.
  const std::vector<StarHom>& graded_pieces() const noexcept { return graded_pieces_; }
  /// The unique linear extension, dim(target) x total_dim.
  Mat total() const;
  Vec apply(const GradedElement& x) const { return total() * x.to_vector(); }

 private:
  GradedSpec source_;
  MorphismTarget target_;
  std::vector<Mat> pieces_;
  std::vector<StarHom> graded_pieces_;
};

/// Family psi_i : A_i -> B into a plain algebra. Each psi_i must be a *-hom
/// and psi_{j∧k}(xy) = psi_j(x) psi_k(y) on basis pairs; else IncompatibleFamily.
GradedMorphism build_morphism(const GradedSpec& spec, const AlgebraShape& target, std::vector<StarHom> psi,
                              double tol = kBasisTol);
/// Family rho_i : A_i -> B_i between two specs over the same semilattice.
GradedMorphism build_morphism(const GradedSpec& spec, const GradedSpec& target, std::vector<StarHom> rho,
                              double tol = kBasisTol);

GradedMorphism identity_morphism(const GradedSpec& spec);
GradedMorphism zero_morphism(const GradedSpec& spec, const AlgebraShape& target);
/// pi_i assembled from its restrictions phi(i, j) (zero when i is not <= j).
GradedMorphism pi_morphism(const GradedSpec& spec, int i);
GradedMorphism faithful_morphism(const GradedSpec& spec);

struct MorphismAnalysis {
  bool injective = false;
  bool surjective = false;
  std::vector<int> ker_dims;
  std::vector<int> image_dims;
  int joint_rank = 0;
  int total_kernel_dim = 0;
  bool images_direct = false;
  /// Graded targets only: componentwise verdicts and the kernel-sum identity.
  std::optional<bool> componentwise_injective;
  std::optional<bool> componentwise_surjective;
  std::optional<bool> kernel_sum_matches;
};

MorphismAnalysis analyze_morphism(const GradedMorphism& m);

}  // namespace gca
