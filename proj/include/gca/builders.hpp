#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gca/graded.hpp"
#include "gca/products.hpp"

namespace gca {

/// Every component C, every structure morphism the identity.
GradedSpec build_all_scalar(const Semilattice& L);

struct CosetSpec {
  GradedSpec spec;
  GradedAction action;  // translation
  std::vector<IndexSet> subgroups;
  /// cosets[i] lists the left cosets of subgroups[i] in canonical order.
  std::vector<std::vector<IndexSet>> cosets;
};

/// Components C(G/H) for H in the family, ordered by inclusion with
/// intersection as meet; phi(K, H) pulls back along G/K -> G/H. Throws
/// NotASubgroup or NotIntersectionClosed.
CosetSpec build_coset_spec(const FiniteGroup& g, const std::vector<IndexSet>& subgroups);

/// Pullbacks C(G/H) -> C(G), assembled into one graded morphism.
GradedMorphism coset_pullback_morphism(const CosetSpec& cs);

/// C(G) with G acting by left translation.
GradedAction translation_action(const FiniteGroup& g);

// Fixed specs used by the demos and tests.
GradedSpec m2_chain();        // C -> M_2 by scalars over 0 < 1
GradedSpec mixed_diamond();   // M_2, C^2, C, C over the diamond, unital maps
GradedSpec nonunital_chain(); // C -> C^2, t -> (t, 0) over 0 < 1
/// Violates axiom b): chain 0 < 1 < 2 with A_0 = M_2 and the two paths from
/// A_2 landing in different corners.
GradedSpec axiom_b_violation();

struct Demo {
  GradedSpec spec;
  std::optional<FiniteGroup> group;
  std::optional<GradedAction> action;
};

/// all-scalar-diamond, chain-<n>, coset-z4, coset-s3, m2-chain, mixed-diamond.
Demo build_demo(const std::string& name);
std::vector<std::string> demo_names();

}  // namespace gca
