#include "vbcert/index_tuple.hpp"

#include <algorithm>
#include <iterator>

#include "vbcert/error.hpp"
#include "vbcert/matrix.hpp"

namespace vbcert {

std::size_t binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::size_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * static_cast<std::size_t>(n - r + i) / static_cast<std::size_t>(i);
  return c;
}

IndexTuple::IndexTuple(int n, std::vector<int> elems) : n_(n), elems_(std::move(elems)) {
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    const bool in_range = elems_[i] >= 1 && elems_[i] <= n_;
    const bool increasing = i == 0 || elems_[i] > elems_[i - 1];
    if (!in_range || !increasing)
      throw Error(ErrorCode::BadIndices, "tuple " + to_string() + " is not strictly increasing in (1:" +
                                             std::to_string(n_) + ")");
  }
}

IndexTuple IndexTuple::consecutive(int n, int first, int count) {
  std::vector<int> e(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) e[static_cast<std::size_t>(i)] = first + i;
  return IndexTuple(n, std::move(e));
}

std::size_t IndexTuple::lex_rank() const {
  // Count tuples that precede this one, position by position.
  const int r = size();
  std::size_t before = 0;
  int prev = 0;
  for (int i = 0; i < r; ++i) {
    for (int v = prev + 1; v < elems_[static_cast<std::size_t>(i)]; ++v) before += binomial(n_ - v, r - i - 1);
    prev = elems_[static_cast<std::size_t>(i)];
  }
  return before + 1;
}

IndexTuple IndexTuple::unrank(int n, int r, std::size_t rank) {
  const std::size_t total = binomial(n, r);
  if (r <= 0 || r > n) throw Error(ErrorCode::RankOutOfRange, "unrank with r=" + std::to_string(r));
  if (rank < 1 || rank > total) throw Error(ErrorCode::IndexOutOfRange, "rank " + std::to_string(rank));
  std::vector<int> e;
  e.reserve(static_cast<std::size_t>(r));
  std::size_t remaining = rank - 1;
  int v = 1;
  for (int i = 0; i < r; ++i) {
    for (;; ++v) {
      const std::size_t block = binomial(n - v, r - i - 1);
      if (remaining < block) break;
      remaining -= block;
    }
    e.push_back(v++);
  }
  return IndexTuple(n, std::move(e));
}

IndexTuple IndexTuple::complement() const {
  std::vector<int> e;
  for (int v = 1; v <= n_; ++v)
    if (!contains(v)) e.push_back(v);
  return IndexTuple(n_, std::move(e));
}

bool IndexTuple::contains(int index) const { return std::binary_search(elems_.begin(), elems_.end(), index); }

bool IndexTuple::is_consecutive() const {
  for (std::size_t i = 1; i < elems_.size(); ++i)
    if (elems_[i] != elems_[i - 1] + 1) return false;
  return true;
}

std::string IndexTuple::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(elems_[i]);
  }
  return s + "}";
}

std::string IndexTuple::to_slug() const {
  std::string s;
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += "-";
    s += std::to_string(elems_[i]);
  }
  return s;
}

std::vector<IndexTuple> lex_tuples(int n, int r) {
  if (r <= 0 || r > n)
    throw Error(ErrorCode::RankOutOfRange, "lex_tuples(" + std::to_string(n) + "," + std::to_string(r) + ")");
  std::vector<IndexTuple> out;
  out.reserve(binomial(n, r));
  std::vector<int> cur(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  for (;;) {
    out.emplace_back(n, cur);
    int i = r - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - r + i + 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

IndexTuple merge(const IndexTuple& a, const IndexTuple& b) {
  if (a.ambient() != b.ambient()) throw Error(ErrorCode::BadIndices, "merging tuples over different sets");
  std::vector<int> e;
  std::merge(a.elems().begin(), a.elems().end(), b.elems().begin(), b.elems().end(), std::back_inserter(e));
  return IndexTuple(a.ambient(), std::move(e));
}

Matrix<Rational> parse_matrix(const std::vector<std::vector<std::string>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  std::vector<Rational> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::SizeMismatch, "ragged matrix rows");
    for (const auto& s : row) data.push_back(parse_decimal(s));
  }
  return Matrix<Rational>(r, c, std::move(data));
}

std::vector<Rational> parse_vector(const std::vector<std::string>& entries) {
  std::vector<Rational> out;
  out.reserve(entries.size());
  for (const auto& s : entries) out.push_back(parse_decimal(s));
  return out;
}

}  // namespace vbcert
