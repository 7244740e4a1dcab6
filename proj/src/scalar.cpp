#include "vbcert/scalar.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "vbcert/error.hpp"

namespace vbcert {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::SingularLeadingBlock: return "SingularLeadingBlock";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotObservable: return "NotObservable";
    case ErrorCode::BadIndices: return "BadIndices";
    case ErrorCode::EigenSolveFailed: return "EigenSolveFailed";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

const char* to_string(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

namespace {
std::atomic<double> g_tolerance{1e-9};
}

double float_tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_float_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw Error(ErrorCode::PreconditionViolated, "tolerance must be a positive finite number");
  g_tolerance.store(tol, std::memory_order_relaxed);
}

Rational parse_decimal(std::string_view text) {
  auto fail = [&] { return Error(ErrorCode::Parse, "not a decimal number: '" + std::string(text) + "'"); };

  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t end = text.size();
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  text = text.substr(i, end - i);
  if (text.empty()) throw fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (sgn(den) == 0) throw fail();
    Rational q = num / den;
    q.canonicalize();
    return q;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw fail();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw fail();
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size()) throw fail();
    long e = 0;
    for (; pos < text.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) throw fail();
      e = e * 10 + (text[pos] - '0');
      if (e > 100000) throw fail();
    }
    exponent += exp_negative ? -e : e;
  }

  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

template <>
Rational from_double<Rational>(double x) {
  return Rational(x);
}

template <>
double from_double<double>(double x) {
  return x;
}

std::string to_exact_string(const Rational& x) { return x.get_str(); }

std::string to_decimal_string(const Rational& x, int digits) {
  if (sgn(x) == 0) return "0";
  const bool negative = sgn(x) < 0;
  Rational a = abs(x);

  // Find e with 10^(e) <= a < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  auto pow10 = [](long p) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(p)));
    return p >= 0 ? Rational(z) : Rational(mpz_class(1), z);
  };
  while (a >= pow10(e + 1)) ++e;
  while (a < pow10(e)) --e;

  // Scale so that the integer part carries `digits` significant digits.
  const long shift = digits - 1 - e;
  Rational scaled = a * pow10(shift);
  mpz_class q = scaled.get_num() / scaled.get_den();
  Rational frac = scaled - Rational(q);
  if (frac * 2 >= 1) ++q;

  std::string s = q.get_str();
  long point = static_cast<long>(s.size()) - shift;  // digits before the decimal point
  std::string out;
  if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + s;
  } else if (point >= static_cast<long>(s.size())) {
    out = s + std::string(static_cast<std::size_t>(point - static_cast<long>(s.size())), '0');
  } else {
    out = s.substr(0, static_cast<std::size_t>(point)) + "." + s.substr(static_cast<std::size_t>(point));
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return negative ? "-" + out : out;
}

std::string to_decimal_string(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

Rational round_decimal(const Rational& x, int places) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  Rational scaled = abs(x) * scale;
  mpz_class q = scaled.get_num() / scaled.get_den();
  if ((scaled - Rational(q)) * 2 >= 1) ++q;
  Rational r(q, scale);
  r.canonicalize();
  return sgn(x) < 0 ? Rational(-r) : r;
}

const char* to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::StrictlyPositive: return "StrictlyPositive";
    case SignVerdict::StrictlyNegative: return "StrictlyNegative";
    case SignVerdict::Nonnegative: return "Nonnegative";
    case SignVerdict::Nonpositive: return "Nonpositive";
    case SignVerdict::Zero: return "Zero";
    case SignVerdict::Mixed: return "Mixed";
    case SignVerdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

void SignTally::add(Sign s) {
  switch (s) {
    case Sign::Positive: ++positive; break;
    case Sign::Negative: ++negative; break;
    case Sign::Zero: ++zero; break;
    case Sign::Inconclusive: ++inconclusive; break;
  }
}

SignTally& SignTally::merge(const SignTally& other) {
  positive += other.positive;
  negative += other.negative;
  zero += other.zero;
  inconclusive += other.inconclusive;
  return *this;
}

SignVerdict SignTally::verdict() const {
  if (positive > 0 && negative > 0) return SignVerdict::Mixed;
  if (inconclusive > 0) return SignVerdict::Inconclusive;
  if (positive > 0) return zero > 0 ? SignVerdict::Nonnegative : SignVerdict::StrictlyPositive;
  if (negative > 0) return zero > 0 ? SignVerdict::Nonpositive : SignVerdict::StrictlyNegative;
  return SignVerdict::Zero;
}

bool passes(SignVerdict v, bool strict) {
  switch (v) {
    case SignVerdict::StrictlyPositive:
    case SignVerdict::StrictlyNegative: return true;
    case SignVerdict::Nonnegative:
    case SignVerdict::Nonpositive:
    case SignVerdict::Zero: return !strict;
    case SignVerdict::Mixed:
    case SignVerdict::Inconclusive: return false;
  }
  return false;
}

int direction(SignVerdict v) {
  switch (v) {
    case SignVerdict::StrictlyPositive:
    case SignVerdict::Nonnegative: return 1;
    case SignVerdict::StrictlyNegative:
    case SignVerdict::Nonpositive: return -1;
    default: return 0;
  }
}

}  // namespace vbcert
