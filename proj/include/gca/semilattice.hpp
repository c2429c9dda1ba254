#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gca {

/// Sorted, duplicate-free list of element indices.
using IndexSet = std::vector<int>;

/// Default size limit for operations that enumerate subsets.
inline constexpr int kEnumerationBound = 20;

/// A finite meet-semilattice stored as its meet table. The order is derived
/// from the table (i <= j iff meet(i, j) == i) and never stored separately.
/// Instances are always validated; the only way to build one is from_table.
class Semilattice {
 public:
  /// Checks idempotency, commutativity and associativity exhaustively and
  /// throws Error naming the first offending pair or triple.
  static Semilattice from_table(std::vector<std::vector<int>> meet,
                                std::vector<std::string> names = {});

  static Semilattice chain(int n);
  /// {0, a, b, 1} with a ∧ b = 0.
  static Semilattice diamond();
  /// Bottom 0 plus `atoms` pairwise incomparable elements above it.
  static Semilattice antichain_over_bottom(int atoms);

  int size() const noexcept { return n_; }
  int meet(int i, int j) const { return table_[static_cast<std::size_t>(i) * n_ + j]; }
  bool leq(int i, int j) const { return meet(i, j) == i; }
  bool lt(int i, int j) const { return i != j && leq(i, j); }

  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<int> index_of(const std::string& name) const;

  std::optional<int> bottom() const;
  std::optional<int> top() const;

  /// j covers i: i < j with nothing strictly between.
  bool covers(int i, int j) const;

  std::vector<std::vector<int>> table() const;

  bool operator==(const Semilattice& other) const {
    return n_ == other.n_ && table_ == other.table_ && names_ == other.names_;
  }

 private:
  Semilattice(int n, std::vector<int> table, std::vector<std::string> names)
      : n_(n), table_(std::move(table)), names_(std::move(names)) {}

  int n_ = 0;
  std::vector<int> table_;
  std::vector<std::string> names_;
};

IndexSet make_index_set(std::vector<int> indices);
bool contains(const IndexSet& s, int i);
std::uint64_t to_mask(const IndexSet& s);
IndexSet from_mask(std::uint64_t mask, int n);

int meet_of_set(const Semilattice& L, const IndexSet& s);

/// Smallest meet-closed superset of m (closure under pairwise meets).
IndexSet generated_subsemilattice(const Semilattice& L, const IndexSet& m);

/// L_k = { j : k <= j }.
IndexSet finishing_set(const Semilattice& L, int k);
/// L'_k, the complement of finishing_set(L, k).
IndexSet finishing_complement(const Semilattice& L, int k);

bool is_subsemilattice(const Semilattice& L, const IndexSet& s);
bool is_upward_closed(const Semilattice& L, const IndexSet& s);
bool is_finishing_subsemilattice(const Semilattice& L, const IndexSet& s);

/// All nonempty finishing sub-semilattices, ordered by bitmask value.
std::vector<IndexSet> enumerate_finishing_subsemilattices(const Semilattice& L,
                                                          int bound = kEnumerationBound);

/// L1 x L2 with componentwise meet; element (a, b) has index a * |L2| + b.
Semilattice product_semilattice(const Semilattice& L1, const Semilattice& L2);

/// Every nonempty finishing sub-semilattice has a least element.
bool check_good(const Semilattice& L, int bound = kEnumerationBound);

/// Minimal elements of L minus its bottom. Throws NoBottom if L has none.
IndexSet atoms(const Semilattice& L);

/// The semilattice induced on a meet-closed subset. Element r of the result
/// corresponds to s[r] in L.
Semilattice induced_semilattice(const Semilattice& L, const IndexSet& s);

std::string format_set(const Semilattice& L, const IndexSet& s);

}  // namespace gca
