#pragma once

#include <span>
#include <vector>

#include "vbcert/matrix.hpp"

namespace vbcert {

enum class VariationKind { Lower, Upper };

/// Number of sign changes of a finite sequence.
struct VariationCount {
  int value = 0;
  VariationKind kind = VariationKind::Lower;

  friend bool operator==(const VariationCount&, const VariationCount&) = default;
};

/// Sign changes after deleting zeros; -1 for the zero vector.
/// For doubles, entries with |u_i| <= zero_threshold count as zeros.
VariationCount v_minus(std::span<const Rational> u);
VariationCount v_minus(std::span<const double> u, double zero_threshold = 0.0);

/// Maximum sign changes over all sign assignments to the zero entries.
/// One pass: each zero takes the sign opposite to its left neighbour and
/// leading zeros alternate backwards from the first nonzero entry; the
/// all-zero vector of length L gives L - 1.
VariationCount v_plus(std::span<const Rational> u);
VariationCount v_plus(std::span<const double> u, double zero_threshold = 0.0);

/// T(sigma)_{ij} = exp(-sigma (i-j)^2): strictly totally positive, tends to I as sigma grows.
Matrix<double> gauss_smoother(int n, double sigma);

}  // namespace vbcert
