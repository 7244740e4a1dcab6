#pragma once

// Scalar backends shared by every module.
//
// Exact: GMP rationals. Decimal input strings parse with zero rounding error,
// so sign decisions on exact data are never affected by round-off.
// Float: IEEE double with a process-wide comparison tolerance. A float value
// inside [-tol, tol] has no decidable sign and classifies as Inconclusive.

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <type_traits>

namespace vbcert {

using Rational = mpq_class;

enum class Backend { Exact, Float };

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
inline constexpr Backend backend_of_v = is_exact_v<T> ? Backend::Exact : Backend::Float;

const char* to_string(Backend b);

/// Comparison tolerance of the Float backend (default 1e-9).
double float_tolerance();
void set_float_tolerance(double tol);

/// Restores the previous tolerance on scope exit.
class ScopedTolerance {
 public:
  explicit ScopedTolerance(double tol) : saved_(float_tolerance()) { set_float_tolerance(tol); }
  ~ScopedTolerance() { set_float_tolerance(saved_); }
  ScopedTolerance(const ScopedTolerance&) = delete;
  ScopedTolerance& operator=(const ScopedTolerance&) = delete;

 private:
  double saved_;
};

/// Parses "-1.20", "3", "2.5e-3", "7/4" exactly. Throws Error(Parse).
Rational parse_decimal(std::string_view text);

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

template <class T>
T from_double(double x);

/// "p/q" (or "p" for integers).
std::string to_exact_string(const Rational& x);
/// Decimal rendering with `digits` significant digits, rounded half away from zero.
std::string to_decimal_string(const Rational& x, int digits = 30);
std::string to_decimal_string(double x, int digits = 17);

/// Rounds to `places` decimals, half away from zero.
Rational round_decimal(const Rational& x, int places);

enum class Sign { Negative = -1, Zero = 0, Positive = 1, Inconclusive = 2 };

inline Sign sign_of(const Rational& x) {
  const int s = sgn(x);
  return s > 0 ? Sign::Positive : (s < 0 ? Sign::Negative : Sign::Zero);
}

inline Sign sign_of(double x) {
  const double tol = float_tolerance();
  if (x > tol) return Sign::Positive;
  if (x < -tol) return Sign::Negative;
  return Sign::Inconclusive;
}

/// Exact zero test; for doubles only a literal 0.0 counts.
inline bool is_exact_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_exact_zero(double x) { return x == 0.0; }

/// Classification of a family of values.
enum class SignVerdict {
  StrictlyPositive,
  StrictlyNegative,
  Nonnegative,
  Nonpositive,
  Zero,
  Mixed,
  Inconclusive,
};

const char* to_string(SignVerdict v);

/// Incremental classifier; merge is associative and order independent.
struct SignTally {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  std::size_t inconclusive = 0;

  void add(Sign s);
  SignTally& merge(const SignTally& other);
  SignVerdict verdict() const;
};

template <class T>
SignVerdict classify(std::span<const T> values) {
  SignTally tally;
  for (const auto& v : values) tally.add(sign_of(v));
  return tally.verdict();
}

/// True when `v` satisfies strict (resp. non-strict) sign consistency.
bool passes(SignVerdict v, bool strict);

/// +1 / -1 for a verdict with a definite direction, 0 otherwise.
int direction(SignVerdict v);

}  // namespace vbcert
