#include "vbcert/variation.hpp"

#include <cmath>

namespace vbcert {
namespace {

// Signs as -1/0/+1, zeros included.
std::vector<int> signs(std::span<const Rational> u) {
  std::vector<int> s(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) s[i] = sgn(u[i]);
  return s;
}

std::vector<int> signs(std::span<const double> u, double zero_threshold) {
  std::vector<int> s(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = u[i];
    s[i] = std::abs(v) <= zero_threshold ? 0 : (v > 0 ? 1 : -1);
  }
  return s;
}

VariationCount lower(const std::vector<int>& s) {
  int changes = 0;
  int last = 0;
  for (int v : s) {
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return {last == 0 ? -1 : changes, VariationKind::Lower};
}

VariationCount upper(std::vector<int> s) {
  const std::size_t len = s.size();
  if (len == 0) return {0, VariationKind::Upper};
  std::size_t first = 0;
  while (first < len && s[first] == 0) ++first;
  if (first == len) return {static_cast<int>(len) - 1, VariationKind::Upper};
  for (std::size_t i = first; i-- > 0;) s[i] = -s[i + 1];
  for (std::size_t i = first + 1; i < len; ++i)
    if (s[i] == 0) s[i] = -s[i - 1];
  int changes = 0;
  for (std::size_t i = 1; i < len; ++i)
    if (s[i] != s[i - 1]) ++changes;
  return {changes, VariationKind::Upper};
}

}  // namespace

VariationCount v_minus(std::span<const Rational> u) { return lower(signs(u)); }
VariationCount v_minus(std::span<const double> u, double zero_threshold) {
  return lower(signs(u, zero_threshold));
}

VariationCount v_plus(std::span<const Rational> u) { return upper(signs(u)); }
VariationCount v_plus(std::span<const double> u, double zero_threshold) {
  return upper(signs(u, zero_threshold));
}

Matrix<double> gauss_smoother(int n, double sigma) {
  if (n < 1 || !(sigma > 0.0)) throw Error(ErrorCode::PreconditionViolated, "gauss_smoother needs n >= 1, sigma > 0");
  Matrix<double> t(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = static_cast<double>(i - j);
      t(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = std::exp(-sigma * d * d);
    }
  return t;
}

}  // namespace vbcert
