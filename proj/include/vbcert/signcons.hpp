#pragma once

// Recognition of sign consistency, sign regularity, k-positivity and the
// variation bounding / diminishing properties of finite matrices.
//
// Three families of checks live here:
//   * full compound evaluation (the reference check),
//   * consecutive and initial minor certificates,
//   * reduced minor families built on the bijection between the m-order
//     minors of an n x m matrix (n > m) and all minors of a smaller
//     transformed matrix, in a strict form and a non-strict relaxation.

#include <optional>
#include <string>
#include <vector>

#include "vbcert/index_tuple.hpp"
#include "vbcert/matrix.hpp"

namespace vbcert {

enum class DecisionPath {
  FullCompound,
  ConsecutiveMinors,
  InitialMinors,
  ReducedFamily,
  RankDeficientColumnSigns,          // rank(X) = k < m: per-column sign test on X_[k]
  IndependentColumnsSignConsistency, // k < rank(X), any k columns independent: VB_{k-1} <=> SC_k
  FullRankSignConsistency,           // k = m = rank(X): VB_{m-1} <=> SC_m
  StrictSignConsistency,             // SVB_{k-1} <=> SSC_k
  TotalPositivity,                   // OVD_{k-1} <=> TP_k
  SignRegularIndependentColumns,     // VD_{k-1} <=> SR_k
  PerOrderVariationBound,            // VD_{k-1} from VB_j, j < k
  Undecidable,
};

const char* to_string(DecisionPath p);

enum class Decision { Holds, Fails, Undecidable };

const char* to_string(Decision d);

struct MinorWitness {
  IndexTuple rows;
  IndexTuple cols;
  std::string value;  // exact rendering ("p/q") or %.17g
  Sign sign = Sign::Zero;
};

/// Outcome of a sign test over a set of minors.
struct MatrixCheck {
  bool pass = false;
  SignVerdict verdict = SignVerdict::Zero;
  int epsilon = 0;                       // common sign when pass, else 0
  std::vector<SignVerdict> per_order;    // order j at index j-1, when several orders are tested
  DecisionPath path = DecisionPath::FullCompound;
  std::optional<MinorWitness> witness;   // first offending minor when !pass
  std::string note;
};

/// SC_k (strict: SSC_k) by evaluating every entry of X_[k].
template <class T>
MatrixCheck sign_consistent(const Matrix<T>& x, int k, bool strict);

/// SR_k: SC_j for every j in (1:k); per_order holds the order-j verdicts.
template <class T>
MatrixCheck sign_regular(const Matrix<T>& x, int k, bool strict);

/// k-positivity: X_[j] >= 0 (> 0 when strict) for every j in (1:k).
template <class T>
MatrixCheck k_positive(const Matrix<T>& x, int k, bool strict);

/// Consecutive minors of orders < k positive and of order k nonnegative
/// (positive when strict_top) certify (strict) TP_k. Necessary in the strict case.
template <class T>
MatrixCheck consecutive_certificate(const Matrix<T>& x, int k, bool strict_top);

/// Row- and column-initial minors. strict_top: all positive <=> strictly totally positive.
/// Otherwise the trailing top-order initial minor (last p rows against the first p
/// columns, or the transposed choice when m > n) may vanish: certifies total positivity.
template <class T>
MatrixCheck initial_minor_certificate(const Matrix<T>& x, bool strict_top);

template <class T>
struct PenaTransform {
  Matrix<T> c;      // (n-m) x m
  Matrix<T> k;      // m x m anti-diagonal sign matrix
  T head_det;       // det X_{(1:m),(1:m)}
  int head_sign = 0;
};

/// C = X_{(m+1:n),(1:m)} (X_{(1:m),(1:m)})^{-1} K with k_{ij} = (-1)^{j-1} on i + j = m + 1.
/// Every minor det X_{gamma,(1:m)}, gamma != (1:m), equals head_det * det C_{alpha,beta}
/// for the (alpha, beta) given by pena_row_tuple.
template <class T>
PenaTransform<T> pena_transform(const Matrix<T>& x);

/// Row tuple gamma of X matched with the minor (alpha, beta) of the transformed matrix.
IndexTuple pena_row_tuple(int n, int m, const IndexTuple& alpha, const IndexTuple& beta);

enum class Strictness { Strict, NonStrictAllowed };

struct MinorPair {
  IndexTuple rows;  // alpha
  IndexTuple cols;  // beta
  Strictness strictness = Strictness::Strict;

  friend bool operator==(const MinorPair&, const MinorPair&) = default;
};

struct MinorFamily {
  int n = 0, m = 0, k = 0;
  std::vector<MinorPair> pairs;
};

/// {(1:k-r), (t:t+r-1)} for r in (1:k), t in (k-r+1 : n-r+1); deduplicated, in generation order.
std::vector<IndexTuple> reduced_tuples(int n, int k);

/// alpha = {(1:k-r), (t:t+r-1)}, r in (1:k), t in (k-r+1 : n-r+1), crossed with the analogous
/// beta over (1:m); deduplicated, in generation order.
/// Non-strict mode requires n >= 2m when k = m, or 2k <= m when k < m; it marks the
/// fully consecutive tail minors that may vanish.
MinorFamily reduced_family(int n, int m, int k, bool strict);

/// Evaluates only the reduced family. Strict: equivalent to SSC_k.
/// Non-strict: sufficient for SC_k.
template <class T>
MatrixCheck reduced_check(const Matrix<T>& x, int k, bool strict);

/// True when every k columns of x are linearly independent: X_[k] has no zero column
/// and every n x k column submatrix has rank k.
template <class T>
bool k_columns_independent(const Matrix<T>& x, int k);

struct VariationCheck {
  Decision vb = Decision::Undecidable;         // VB_{k-1}
  Decision strict_vb = Decision::Undecidable;  // SVB_{k-1}
  DecisionPath path = DecisionPath::Undecidable;
  int rank = 0;
  std::optional<MinorWitness> witness;
  std::string note;
};

/// Decides VB_{k-1} / SVB_{k-1} of a tall matrix (n > m >= k) wherever a rank hypothesis
/// allows it, and reports Undecidable otherwise.
template <class T>
VariationCheck vb_matrix_check(const Matrix<T>& x, int k);

struct DiminishingCheck {
  Decision vd = Decision::Undecidable;   // VD_{k-1}
  Decision ovd = Decision::Undecidable;  // OVD_{k-1}
  DecisionPath path = DecisionPath::Undecidable;
  std::vector<Decision> per_order;       // VB_{j-1}, j in (1:k), when the per-order route ran
  std::string note;
};

/// VD_{k-1} and OVD_{k-1} of X (n >= m).
template <class T>
DiminishingCheck vd_matrix_check(const Matrix<T>& x, int k);

}  // namespace vbcert
