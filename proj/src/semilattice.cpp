#include "gca/semilattice.hpp"

#include <algorithm>
#include <sstream>

#include "gca/error.hpp"

namespace gca {

namespace {

std::string triple(int i, int j, int k) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ", " << k << ")";
  return os.str();
}

}  // namespace

Semilattice Semilattice::from_table(std::vector<std::vector<int>> meet,
                                    std::vector<std::string> names) {
  const int n = static_cast<int>(meet.size());
  if (n == 0) fail(ErrorCode::EmptySet, "semilattice must have at least one element");
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(meet[i].size()) != n) {
      fail(ErrorCode::ParseError, "meet table row " + std::to_string(i) + " has wrong length");
    }
    for (int j = 0; j < n; ++j) {
      const int v = meet[i][j];
      if (v < 0 || v >= n) {
        fail(ErrorCode::IndexOutOfRange,
             "meet[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + std::to_string(v));
      }
      flat.push_back(v);
    }
  }
  if (names.empty()) {
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  }
  if (static_cast<int>(names.size()) != n) fail(ErrorCode::ParseError, "name count differs from table size");
  {
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(ErrorCode::ParseError, "duplicate element names");
    }
  }

  auto m = [&](int i, int j) { return flat[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) {
    if (m(i, i) != i) fail(ErrorCode::IdempotencyViolation, "meet(" + std::to_string(i) + ", " + std::to_string(i) + ") != " + std::to_string(i));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i)) {
        fail(ErrorCode::CommutativityViolation,
             "meet(" + std::to_string(i) + ", " + std::to_string(j) + ") != meet(" + std::to_string(j) + ", " + std::to_string(i) + ")");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (m(m(i, j), k) != m(i, m(j, k))) fail(ErrorCode::AssociativityViolation, "triple " + triple(i, j, k));
      }
    }
  }
  // The three axioms imply that the derived order is partial and meet is the
  // glb; checked anyway since the table is the only source of truth.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int g = m(i, j);
      if (m(g, i) != g || m(g, j) != g) fail(ErrorCode::AssociativityViolation, "meet not a lower bound at " + triple(i, j, g));
      for (int k = 0; k < n; ++k) {
        if (m(k, i) == k && m(k, j) == k && m(k, g) != k) {
          fail(ErrorCode::AssociativityViolation, "meet not greatest at " + triple(i, j, k));
        }
      }
    }
  }
  return Semilattice(n, std::move(flat), std::move(names));
}

Semilattice Semilattice::chain(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = std::min(i, j);
  return from_table(std::move(t));
}

Semilattice Semilattice::diamond() {
  // 0 = bottom, 1 = a, 2 = b, 3 = top
  std::vector<std::vector<int>> t = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}};
  return from_table(std::move(t), {"0", "a", "b", "1"});
}

Semilattice Semilattice::antichain_over_bottom(int atoms) {
  const int n = atoms + 1;
  std::vector<std::vector<int>> t(n, std::vector<int>(n, 0));
  for (int i = 1; i < n; ++i) t[i][i] = i;
  return from_table(std::move(t));
}

std::optional<int> Semilattice::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

std::optional<int> Semilattice::bottom() const {
  int b = 0;
  for (int i = 1; i < n_; ++i) b = meet(b, i);
  return b;  // a finite semilattice always has a bottom: the meet of everything
}

std::optional<int> Semilattice::top() const {
  for (int t = 0; t < n_; ++t) {
    bool ok = true;
    for (int i = 0; i < n_ && ok; ++i) ok = leq(i, t);
    if (ok) return t;
  }
  return std::nullopt;
}

bool Semilattice::covers(int i, int j) const {
  if (!lt(i, j)) return false;
  for (int k = 0; k < n_; ++k) {
    if (lt(i, k) && lt(k, j)) return false;
  }
  return true;
}

std::vector<std::vector<int>> Semilattice::table() const {
  std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t[i][j] = meet(i, j);
  return t;
}

IndexSet make_index_set(std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

bool contains(const IndexSet& s, int i) { return std::binary_search(s.begin(), s.end(), i); }

std::uint64_t to_mask(const IndexSet& s) {
  std::uint64_t m = 0;
  for (int i : s) m |= std::uint64_t{1} << i;
  return m;
}

IndexSet from_mask(std::uint64_t mask, int n) {
  IndexSet s;
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1u) s.push_back(i);
  return s;
}

namespace {

void check_indices(const Semilattice& L, const IndexSet& s) {
  for (int i : s) {
    if (i < 0 || i >= L.size()) fail(ErrorCode::IndexOutOfRange, "index " + std::to_string(i));
  }
}

}  // namespace

int meet_of_set(const Semilattice& L, const IndexSet& s) {
  if (s.empty()) fail(ErrorCode::EmptySet, "meet of empty set");
  check_indices(L, s);
  int m = s.front();
  for (int i : s) m = L.meet(m, i);
  return m;
}

IndexSet generated_subsemilattice(const Semilattice& L, const IndexSet& m) {
  check_indices(L, m);
  std::vector<bool> in(L.size(), false);
  for (int i : m) in[i] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < L.size(); ++i) {
      if (!in[i]) continue;
      for (int j = 0; j < L.size(); ++j) {
        if (in[j] && !in[L.meet(i, j)]) {
          in[L.meet(i, j)] = true;
          changed = true;
        }
      }
    }
  }
  IndexSet out;
  for (int i = 0; i < L.size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

IndexSet finishing_set(const Semilattice& L, int k) {
  IndexSet out;
  for (int j = 0; j < L.size(); ++j)
    if (L.leq(k, j)) out.push_back(j);
  return out;
}

IndexSet finishing_complement(const Semilattice& L, int k) {
  IndexSet out;
  for (int j = 0; j < L.size(); ++j)
    if (!L.leq(k, j)) out.push_back(j);
  return out;
}

bool is_subsemilattice(const Semilattice& L, const IndexSet& s) {
  for (int i : s)
    for (int j : s)
      if (!contains(s, L.meet(i, j))) return false;
  return true;
}

bool is_upward_closed(const Semilattice& L, const IndexSet& s) {
  for (int i : s)
    for (int j = 0; j < L.size(); ++j)
      if (L.leq(i, j) && !contains(s, j)) return false;
  return true;
}

bool is_finishing_subsemilattice(const Semilattice& L, const IndexSet& s) {
  check_indices(L, s);
  return is_upward_closed(L, s) && is_subsemilattice(L, s);
}

std::vector<IndexSet> enumerate_finishing_subsemilattices(const Semilattice& L, int bound) {
  if (L.size() > bound) {
    fail(ErrorCode::BoundExceeded, std::to_string(L.size()) + " elements > bound " + std::to_string(bound));
  }
  const int n = L.size();
  // Precomputed up-sets as masks make the per-subset test O(n).
  std::vector<std::uint64_t> up(n);
  for (int i = 0; i < n; ++i) up[i] = to_mask(finishing_set(L, i));
  std::vector<IndexSet> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      if ((up[i] & ~mask) != 0) ok = false;
      for (int j = i + 1; j < n && ok; ++j) {
        if ((mask >> j & 1u) && !(mask >> L.meet(i, j) & 1u)) ok = false;
      }
    }
    if (ok) out.push_back(from_mask(mask, n));
  }
  return out;
}

Semilattice product_semilattice(const Semilattice& L1, const Semilattice& L2) {
  const int n1 = L1.size(), n2 = L2.size();
  const int n = n1 * n2;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int a = 0; a < n1; ++a) {
    for (int b = 0; b < n2; ++b) {
      const int i = a * n2 + b;
      names[i] = "(" + L1.name(a) + "," + L2.name(b) + ")";
      for (int c = 0; c < n1; ++c)
        for (int d = 0; d < n2; ++d) t[i][c * n2 + d] = L1.meet(a, c) * n2 + L2.meet(b, d);
    }
  }
  return Semilattice::from_table(std::move(t), std::move(names));
}

bool check_good(const Semilattice& L, int bound) {
  for (const auto& s : enumerate_finishing_subsemilattices(L, bound)) {
    bool has_least = false;
    for (int c : s) {
      bool least = true;
      for (int j : s) least = least && L.leq(c, j);
      if (least) has_least = true;
    }
    if (!has_least) return false;
  }
  return true;
}

IndexSet atoms(const Semilattice& L) {
  const auto b = L.bottom();
  if (!b) fail(ErrorCode::NoBottom, "semilattice has no bottom");
  IndexSet out;
  for (int i = 0; i < L.size(); ++i)
    if (L.covers(*b, i)) out.push_back(i);
  return out;
}

Semilattice induced_semilattice(const Semilattice& L, const IndexSet& s) {
  check_indices(L, s);
  if (s.empty()) fail(ErrorCode::EmptySet, "induced semilattice on empty set");
  if (!is_subsemilattice(L, s)) fail(ErrorCode::NotSubsemilattice, format_set(L, s) + " is not meet-closed");
  const int n = static_cast<int>(s.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int r = 0; r < n; ++r) {
    names.push_back(L.name(s[r]));
    for (int c = 0; c < n; ++c) {
      const int m = L.meet(s[r], s[c]);
      t[r][c] = static_cast<int>(std::lower_bound(s.begin(), s.end(), m) - s.begin());
    }
  }
  return Semilattice::from_table(std::move(t), std::move(names));
}

std::string format_set(const Semilattice& L, const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ",";
    out += L.name(s[k]);
  }
  return out + "}";
}

}  // namespace gca
