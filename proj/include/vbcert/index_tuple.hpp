#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vbcert {

/// C(n, r); zero when r < 0 or r > n.
std::size_t binomial(int n, int r);

/// Strictly increasing r-tuple of 1-based indices drawn from (1:n).
class IndexTuple {
 public:
  IndexTuple() = default;
  /// Throws Error(BadIndices) unless 1 <= e[0] < ... < e[r-1] <= n.
  IndexTuple(int n, std::vector<int> elems);

  /// (first : first + count - 1) inside (1:n).
  static IndexTuple consecutive(int n, int first, int count);
  /// The tuple of 1-based lexicographic rank `rank` among C(n, r).
  static IndexTuple unrank(int n, int r, std::size_t rank);

  int ambient() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(elems_.size()); }
  int operator[](int i) const { return elems_[static_cast<std::size_t>(i)]; }
  std::span<const int> elems() const noexcept { return elems_; }

  /// 1-based position in lexicographic order of all C(n, r) tuples.
  std::size_t lex_rank() const;

  IndexTuple complement() const;
  bool contains(int index) const;
  /// True when the tuple is a run of consecutive integers.
  bool is_consecutive() const;

  /// "{1,3}"
  std::string to_string() const;
  /// "1-3", used in file names.
  std::string to_slug() const;

  friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
  friend auto operator<=>(const IndexTuple& a, const IndexTuple& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.elems_ <=> b.elems_;
  }

 private:
  int n_ = 0;
  std::vector<int> elems_;
};

/// All C(n, r) tuples in lexicographic order. Throws Error(RankOutOfRange) unless 0 < r <= n.
std::vector<IndexTuple> lex_tuples(int n, int r);

/// Union of two disjoint tuples over the same ambient set.
IndexTuple merge(const IndexTuple& a, const IndexTuple& b);

}  // namespace vbcert
