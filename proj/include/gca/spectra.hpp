#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gca/graded.hpp"

namespace gca {

/// Character matching tolerance on value vectors.
inline constexpr double kCharacterTol = 1e-8;
/// Minimum eigenvalue separation of the generic element.
inline constexpr double kSeparationTol = 1e-7;

/// A character, identified by its values on the total basis.
struct Character {
  Vec values;
  /// (index i, point p of the spectrum of A_i) for characters of the form
  /// evaluation at p composed with pi_i.
  std::optional<std::pair<int, int>> tag;
  /// {i : chi(e_i) = 1}, filled in the all-scalar case.
  std::optional<IndexSet> finishing_set;
};

/// Worst multiplicativity and *-preservation defect over total basis pairs.
double character_residual(const GradedSpec& spec, const ProductTable& table, const Character& chi);

/// Max-abs distance between value vectors.
double character_distance(const Character& a, const Character& b);

/// Every character of a commutative total algebra, by diagonalizing the
/// multiplication operator of a generic self-adjoint element. Sorted
/// lexicographically on values (real part, then imaginary, tolerance-aware).
/// Throws NotCommutative or DegenerateGenerator.
std::vector<Character> brute_force_characters(const GradedSpec& spec, std::uint64_t seed = kDefaultSeed);

/// The characters evaluation-at-p composed with pi_i, for every i and every
/// 1x1 block p of A_i. Checked pairwise distinct and equal as a set to the
/// brute-force list. Throws ComponentNotCommutative or CoverageMismatch.
std::vector<Character> graded_characters(const GradedSpec& spec, std::uint64_t seed = kDefaultSeed);

struct FinishingPair {
  Character chi;
  IndexSet set;
};

/// All-scalar specs only: pairs each character with {i : chi(e_i) = 1}, in the
/// order of enumerate_finishing_subsemilattices. Throws NotAllScalar or
/// BijectionFailure.
std::vector<FinishingPair> finishing_correspondence(const GradedSpec& spec, std::uint64_t seed = kDefaultSeed);

struct RestrictionEntry {
  Character source;          // tagged (i, p) in the full spec
  int least = -1;            // m(i), the least element of M above i (full index)
  Character image;           // character of the restricted spec
  std::pair<int, int> image_tag;  // (m(i) as a full index, point of A_{m(i)})
};

struct RestrictionMap {
  IndexSet subset;
  GradedSpec sub;
  std::vector<RestrictionEntry> entries;
  /// Worst distance between an image and the direct restriction of the
  /// matching brute-force character.
  double oracle_residual = 0.0;
  /// Worst |phi(i, m(i))(1) - 1|; unitality stands in for non-degeneracy.
  double unital_residual = 0.0;
  std::string nondegeneracy_basis = "phi(i, m(i)) unital";
};

/// Requires M meet-closed and cofinal, commutative components and unital
/// phi(i, m(i)). Throws NotSubsemilattice, NotCofinal, NoLeastElement,
/// ComponentNotCommutative, NonUnitalStructureMap or OracleMismatch.
RestrictionMap restriction_spectrum_map(const GradedSpec& spec, const IndexSet& m, std::uint64_t seed = kDefaultSeed);

struct GenusReport {
  int n = 0;
  /// Orbits of j -> j + (n - 1) on the 2n polygon vertices, by enumeration.
  int vertex_orbits = 0;
  int gcd = 0;
  /// Vertex classes after gluing the paired edges.
  int surface_vertices = 0;
  int edges = 0;
  int faces = 1;
  int euler_char = 0;
  int genus = 0;
  /// Odd n: two remaining vertex classes get identified.
  bool pinched = false;
};

/// The 2n-gon with edge word a_1 ... a_n a_1^-1 ... a_n^-1. Throws BadN for n < 2.
GenusReport genus_of_line_arrangement(int n);

}  // namespace gca
