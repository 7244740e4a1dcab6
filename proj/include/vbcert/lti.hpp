#pragma once

// Discrete-time single-input single-output systems x(t+1) = A x(t) + b u(t), y = c x.

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vbcert/matrix.hpp"

namespace vbcert {

template <class T>
struct LtiSystem {
  Matrix<T> a;
  std::vector<T> b;
  std::vector<T> c;

  LtiSystem() = default;
  /// Throws Error(NonSquare / SizeMismatch) on inconsistent dimensions.
  LtiSystem(Matrix<T> a_, std::vector<T> b_, std::vector<T> c_);

  int order() const { return static_cast<int>(a.rows()); }
  LtiSystem<double> to_float() const;
};

/// g(1..count) with g(t) = c A^{t-1} b, by state propagation.
template <class T>
std::vector<T> impulse_response(const LtiSystem<T>& sys, int count);

/// t x n matrix whose i-th row is c A^{i-1}.
template <class T>
Matrix<T> observability_matrix(const Matrix<T>& a, std::span<const T> c, int t);

struct OrderedSpectrum {
  // Descending modulus; equal moduli by descending real part, then descending imaginary part.
  std::vector<std::complex<double>> eigenvalues;
};

/// Moduli (and real parts) closer than 1e-9 * max(1, spectral radius) count as ties.
OrderedSpectrum eigen_sorted(const Matrix<double>& a);
OrderedSpectrum eigen_sorted(const Matrix<Rational>& a);

/// Eigenvector matrix with condition number at most 1e10.
bool numerically_diagonalizable(const Matrix<double>& a);

/// max(50, 10 n)
int default_horizon(int n);

enum class ExtPosMode { Strict, NonStrict };

enum class ExtPosStatus {
  StrictPositive,
  StrictNegative,
  NonNegative,
  NonPositive,
  Violated,
  VerifiedUpToHorizonOnly,
  Indeterminate,  // a sample is within tolerance of zero (Float backend)
};

const char* to_string(ExtPosStatus s);

struct Violation {
  int t = 0;
  std::string value;
};

/// Sign of g(t) for every t >= start.
///
/// g(t) is fitted as a sum of t^j lambda^{t-1} terms over the eigenvalue clusters of A
/// (Jordan blocks give j > 0). The dominant term has the largest modulus, then the highest
/// degree, and must sit on a real positive eigenvalue; other terms of the same modulus and
/// degree are allowed as long as their coefficients are smaller. `start` is the first t from
/// which the summed magnitude of the other terms stays below the dominant one; that ratio is
/// non-increasing past `start`.
struct TailCertificate {
  bool valid = false;
  bool zero_tail = false;  // g(t) = 0 for t >= start
  int start = 0;
  int sign = 0;
  int degree = 0;
  std::complex<double> pole{0.0, 0.0};
  std::string note;
};

/// Searches for a certificate whose start does not exceed `limit`.
TailCertificate tail_certificate(const LtiSystem<double>& sys, int limit);

struct ExtPosVerdict {
  ExtPosStatus status = ExtPosStatus::VerifiedUpToHorizonOnly;
  int horizon = 0;                  // samples actually checked
  std::optional<int> tail_start;
  std::optional<Violation> first_violation;
  int sign = 0;                     // direction of the nonzero samples, 0 if none
  bool identically_zero = false;
  std::string note;

  /// Certified for all t with the required strictness.
  bool certified() const {
    return status == ExtPosStatus::StrictPositive || status == ExtPosStatus::StrictNegative ||
           status == ExtPosStatus::NonNegative || status == ExtPosStatus::NonPositive;
  }
};

/// Checks g(1..horizon) and attaches a tail certificate. When the certificate starts
/// after the horizon (up to 10 * horizon + 100) the sample check is extended to it,
/// and `horizon` in the verdict reports the extended length.
template <class T>
ExtPosVerdict external_positivity(const LtiSystem<T>& sys, ExtPosMode mode, int horizon);

}  // namespace vbcert
