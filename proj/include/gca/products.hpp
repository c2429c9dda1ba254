#pragma once

#include <string>
#include <vector>

#include "gca/graded.hpp"

namespace gca {

/// Finite group given by its multiplication table.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(cyclic(1)) {}
  /// Checks closure, associativity, identity and inverses exhaustively; throws NotAGroup.
  static FiniteGroup from_table(std::vector<std::vector<int>> mul, std::vector<std::string> names = {});
  static FiniteGroup cyclic(int n);
  static FiniteGroup klein();
  /// Permutations of {1, 2, 3} in lexicographic order; mul(a, b) applies b first.
  static FiniteGroup symmetric3();
  /// Element (g, h) has index g * |H| + h.
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

  int order() const noexcept { return static_cast<int>(mul_.size()); }
  int mul(int a, int b) const { return mul_[a][b]; }
  int identity() const noexcept { return identity_; }
  int inverse(int a) const { return inverse_[a]; }
  const std::string& name(int a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::vector<int>>& table() const noexcept { return mul_; }
  std::optional<int> index_of(const std::string& name) const;

  bool is_subgroup(const IndexSet& h) const;
  /// Left cosets gH, each sorted, listed by smallest element.
  std::vector<IndexSet> left_cosets(const IndexSet& h) const;

 private:
  FiniteGroup(std::vector<std::vector<int>> mul, std::vector<std::string> names, int identity, std::vector<int> inverse)
      : mul_(std::move(mul)), names_(std::move(names)), identity_(identity), inverse_(std::move(inverse)) {}

  std::vector<std::vector<int>> mul_;
  std::vector<std::string> names_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

/// Action of a finite group on a graded spec by automorphisms preserving
/// every component: maps[g][i] is alpha_g restricted to A_i.
struct GradedAction {
  FiniteGroup group;
  GradedSpec spec;
  std::vector<std::vector<StarHom>> maps;

  static GradedAction trivial(const FiniteGroup& g, const GradedSpec& spec);
};

struct ActionCheck {
  double identity_residual = 0.0;
  double composition_residual = 0.0;
  double hom_residual = 0.0;
  double equivariance_residual = 0.0;
  bool invertible = true;
};

/// alpha_e = id, alpha_g alpha_h = alpha_gh, each alpha_g a bijective *-hom,
/// and alpha_g phi(i, j) = phi(i, j) alpha_g. Throws ActionInvalid.
ActionCheck validate_action(const GradedAction& act, double tol = kBasisTol);

/// Spec over the product semilattice with components A_l ⊗ B_m and
/// structure morphisms phi(l, l') ⊗ phi(m, m'). Validated before return.
GradedSpec tensor_spec(const GradedSpec& a, const GradedSpec& b);

struct IntersectionCheck {
  int pairs = 0;
  int failures = 0;
  bool ok() const { return failures == 0; }
};

/// For every (l, m): span(A_l ⊗ B) ∩ span(A ⊗ B_m) = span(A_l ⊗ B_m), by
/// ranks of Kronecker products of the factors' faithful images.
IntersectionCheck tensor_intersection_property(const GradedSpec& a, const GradedSpec& b);

struct CrossedReport {
  GradedSpec spec;
  /// Associativity and (fh)* = h* f* of the convolution product on basis functions.
  double convolution_residual = 0.0;
  double involution_residual = 0.0;
  /// Left regular representation as a *-homomorphism.
  double regular_rep_residual = 0.0;
  /// Worst matrix-unit defect of the block realizations.
  double realization_residual = 0.0;
  /// phi_*(f) h = f h and h phi_*(f) = h f inside the total crossed product.
  double multiplier_residual = 0.0;
  /// (A_i x G)(A_j x G) lands in A_{i∧j} x G.
  double inclusion_residual = 0.0;
  int independence_rank = 0;
  int expected_rank = 0;
  SpecReport validation;
};

/// Components A_i ⋊ G realized through the left regular representation and
/// put in block form; structure morphisms are the pointwise maps transported
/// through the realization. Throws ActionInvalid or a validation error.
CrossedReport crossed_product(const GradedAction& act, std::uint64_t seed = kDefaultSeed);

}  // namespace gca
