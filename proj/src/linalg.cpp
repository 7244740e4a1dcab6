#include "vbcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace vbcert {
namespace {

void require_square(const Matrix<Rational>& x, const char* op) {
  if (!x.square()) throw Error(ErrorCode::NonSquare, std::string(op) + " of a " + x.shape() + " matrix");
}
void require_square(const Matrix<double>& x, const char* op) {
  if (!x.square()) throw Error(ErrorCode::NonSquare, std::string(op) + " of a " + x.shape() + " matrix");
}

double max_abs(const Matrix<double>& x) {
  double m = 0.0;
  for (double v : x.entries()) m = std::max(m, std::abs(v));
  return m;
}

Rational bareiss_det(Matrix<Rational> a) {
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);
  Rational prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return Rational(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Rational v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        v /= prev;
        a(i, j) = std::move(v);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Rational d = a(n - 1, n - 1);
  return sign > 0 ? d : Rational(-d);
}

double pivoted_det(Matrix<double> a) {
  const std::size_t n = a.rows();
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

// Rank by row echelon reduction.
int echelon_rank(Matrix<Rational> a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a(p, c)) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return static_cast<int>(r);
}

int echelon_rank(Matrix<double> a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  const double threshold = float_tolerance() * std::max(1.0, max_abs(a));
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (std::abs(a(i, c)) > std::abs(a(p, c))) p = i;
    if (std::abs(a(p, c)) <= threshold) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      const double f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return static_cast<int>(r);
}

template <class T>
bool pivot_is_zero(const T& v, double threshold) {
  if constexpr (is_exact_v<T>) {
    (void)threshold;
    return sgn(v) == 0;
  } else {
    return std::abs(v) <= threshold;
  }
}

void check_compound_order(std::size_t rows, std::size_t cols, int r) {
  if (r < 1 || static_cast<std::size_t>(r) > std::min(rows, cols))
    throw Error(ErrorCode::RankOutOfRange, "compound order " + std::to_string(r) + " for a " +
                                               std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
}

}  // namespace

template <class T>
T det(const Matrix<T>& x) {
  require_square(x, "det");
  if constexpr (is_exact_v<T>)
    return bareiss_det(x);
  else
    return pivoted_det(x);
}

template <class T>
Matrix<T> submatrix(const Matrix<T>& x, const IndexTuple& rows, const IndexTuple& cols) {
  if (rows.ambient() != static_cast<int>(x.rows()) || cols.ambient() != static_cast<int>(x.cols()))
    throw Error(ErrorCode::IndexOutOfRange, "index tuple ambient size does not match " + x.shape());
  Matrix<T> s(static_cast<std::size_t>(rows.size()), static_cast<std::size_t>(cols.size()));
  for (int i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols.size(); ++j)
      s(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          x(static_cast<std::size_t>(rows[i] - 1), static_cast<std::size_t>(cols[j] - 1));
  return s;
}

template <class T>
T minor_det(const Matrix<T>& x, const IndexTuple& rows, const IndexTuple& cols) {
  if (rows.size() != cols.size())
    throw Error(ErrorCode::SizeMismatch, "minor with " + rows.to_string() + " rows and " + cols.to_string() + " cols");
  return det(submatrix(x, rows, cols));
}

template <class T>
Matrix<T> compound_reference(const Matrix<T>& x, int r) {
  check_compound_order(x.rows(), x.cols(), r);
  const auto row_sets = lex_tuples(static_cast<int>(x.rows()), r);
  const auto col_sets = lex_tuples(static_cast<int>(x.cols()), r);
  Matrix<T> c(row_sets.size(), col_sets.size());
  for (std::size_t i = 0; i < row_sets.size(); ++i)
    for (std::size_t j = 0; j < col_sets.size(); ++j) c(i, j) = minor_det(x, row_sets[i], col_sets[j]);
  return c;
}

template <class T>
Matrix<T> compound(const Matrix<T>& x, int r) {
  check_compound_order(x.rows(), x.cols(), r);
  const int n = static_cast<int>(x.rows());
  const int m = static_cast<int>(x.cols());
  Matrix<T> prev = x;  // order 1
  for (int order = 2; order <= r; ++order) {
    const auto row_sets = lex_tuples(n, order);
    const auto col_sets = lex_tuples(m, order);
    Matrix<T> next(row_sets.size(), col_sets.size());
    const auto count = static_cast<long>(row_sets.size());
#pragma omp parallel for schedule(dynamic)
    for (long ii = 0; ii < count; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      const IndexTuple& rows = row_sets[i];
      const int lead = rows[0];
      const IndexTuple rest(n, std::vector<int>(rows.elems().begin() + 1, rows.elems().end()));
      const std::size_t rest_rank = rest.lex_rank() - 1;
      std::vector<int> others(static_cast<std::size_t>(order - 1));
      for (std::size_t j = 0; j < col_sets.size(); ++j) {
        const IndexTuple& cols = col_sets[j];
        T acc(0);
        for (int p = 0; p < order; ++p) {
          const T& lead_entry = x(static_cast<std::size_t>(lead - 1), static_cast<std::size_t>(cols[p] - 1));
          if (is_exact_zero(lead_entry)) continue;
          std::size_t w = 0;
          for (int q = 0; q < order; ++q)
            if (q != p) others[w++] = cols[q];
          const std::size_t sub = IndexTuple(m, others).lex_rank() - 1;
          T term = lead_entry * prev(rest_rank, sub);
          if (p % 2 == 0)
            acc += term;
          else
            acc -= term;
        }
        next(i, j) = std::move(acc);
      }
    }
    prev = std::move(next);
  }
  return prev;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& x) {
  require_square(x, "inverse");
  const std::size_t n = x.rows();
  Matrix<T> a = x;
  Matrix<T> inv = Matrix<T>::identity(n);
  double threshold = 0.0;
  if constexpr (!is_exact_v<T>) threshold = float_tolerance() * std::max(1.0, max_abs(x));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if constexpr (is_exact_v<T>) {
        if (sgn(a(p, k)) != 0) break;
        p = i;
      } else {
        if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
      }
    }
    if (pivot_is_zero(a(p, k), threshold)) throw Error(ErrorCode::Singular, "matrix is singular");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    const T pivot = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || is_exact_zero(a(i, k))) continue;
      const T f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

template <class T>
int rank(const Matrix<T>& x) {
  return echelon_rank(x);
}

template <class T>
Matrix<T> power(const Matrix<T>& x, int exponent) {
  require_square(x, "power");
  if (exponent < 0) throw Error(ErrorCode::PreconditionViolated, "negative matrix power");
  Matrix<T> result = Matrix<T>::identity(x.rows());
  Matrix<T> base = x;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

template <class T>
Matrix<T> select_columns(const Matrix<T>& x, const IndexTuple& cols) {
  if (cols.ambient() != static_cast<int>(x.cols()))
    throw Error(ErrorCode::IndexOutOfRange, "column tuple ambient size does not match " + x.shape());
  Matrix<T> s(x.rows(), static_cast<std::size_t>(cols.size()));
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (int j = 0; j < cols.size(); ++j)
      s(i, static_cast<std::size_t>(j)) = x(i, static_cast<std::size_t>(cols[j] - 1));
  return s;
}

#define VBCERT_INSTANTIATE(T)                                                        \
  template T det<T>(const Matrix<T>&);                                               \
  template Matrix<T> submatrix<T>(const Matrix<T>&, const IndexTuple&, const IndexTuple&); \
  template T minor_det<T>(const Matrix<T>&, const IndexTuple&, const IndexTuple&);   \
  template Matrix<T> compound<T>(const Matrix<T>&, int);                             \
  template Matrix<T> compound_reference<T>(const Matrix<T>&, int);                   \
  template Matrix<T> inverse<T>(const Matrix<T>&);                                   \
  template int rank<T>(const Matrix<T>&);                                            \
  template Matrix<T> power<T>(const Matrix<T>&, int);                                \
  template Matrix<T> select_columns<T>(const Matrix<T>&, const IndexTuple&);

VBCERT_INSTANTIATE(Rational)
VBCERT_INSTANTIATE(double)

#undef VBCERT_INSTANTIATE

}  // namespace vbcert
