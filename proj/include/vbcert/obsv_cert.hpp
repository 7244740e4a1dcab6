#pragma once

// Certificates for the observability operator O(A,c): x0 -> (c A^t x0)_{t >= 0}.
//
// Families of minors of O are realized as impulse responses of compound systems
// (compound(A,r), b~, compound(O_r,r)), so checking an infinite family of minors
// reduces to external positivity of finitely many systems.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vbcert/index_tuple.hpp"
#include "vbcert/lti.hpp"
#include "vbcert/signcons.hpp"

namespace vbcert {

enum class Property { SVB, VB, VD, OVD, KPositive };
enum class Target { Observability, Controllability, HankelSufficient };
enum class Conclusion { Certified, Refuted, Inconclusive };

const char* to_string(Property p);
const char* to_string(Target t);
const char* to_string(Conclusion c);

template <class T>
struct CompoundSystem {
  LtiSystem<T> base;
  int r = 0;
  int k = 0;
  IndexTuple beta;  // (1:n) for the full-order family
  Strictness strictness = Strictness::Strict;
};

/// O_n of (A,c); throws Error(NotObservable) unless it has rank n.
template <class T>
Matrix<T> observable_basis(const Matrix<T>& a, const std::vector<T>& c);

/// Full-order family, r = 1..n:
///   A~ = compound(A,r), c~ = compound(O_r,r), b~ = compound(A^{n-r} O_n^{-1} [0; I_r], r).
/// det(O_n) g~_r(t) = det [O_{n-r}; O_r A^{n-r+t-1}].
template <class T>
std::vector<CompoundSystem<T>> thm1_systems(const Matrix<T>& a, const std::vector<T>& c);

/// System whose impulse response is det(O_{alpha_t, beta}) with
/// alpha_t = (1:k-r) u (k-r+t : k+t-1). b~ is indexed by r-subsets q of (1:n):
///   b~_q = sum over r-subsets S of (k-r+1:n) of det((A^{k-r} O_n^{-1})_{q,S}) det((O_n)_{(1:k-r) u S, beta}).
template <class T>
CompoundSystem<T> thm2_system(const Matrix<T>& a, const std::vector<T>& c, int k, int r, const IndexTuple& beta);

/// beta = {(1:k-r'), (t':t'+r'-1)}, r' in (1:k), t' in (k-r'+1 : n-r'+1). With strict = false the
/// consecutive tails (t' >= k+1) are NonStrictAllowed.
std::vector<std::pair<IndexTuple, Strictness>> beta_family(int n, int k, bool strict);

struct FamilyWitness {
  int r = 0;
  IndexTuple beta;
  int t = 0;
  std::string value;
  bool opposite_sign = false;  // false: a vanishing sample
};

struct SystemVerdict {
  int r = 0;
  int k = 0;
  IndexTuple beta;
  bool may_vanish = false;
  std::string factor;  // "ctrb" for the controllability factor of a Hankel certificate
  ExtPosVerdict verdict;
  std::optional<Violation> first_signed;  // first nonzero sample within the horizon
  std::vector<std::string> trace;         // g~(1..horizon), decimal
};

struct Certificate {
  Property property = Property::SVB;
  Target target = Target::Observability;
  int k = 0;
  int horizon = 0;
  bool strict = false;
  Backend backend = Backend::Exact;
  std::vector<SystemVerdict> per_system;  // sorted by (k, r, lex rank of beta)
  int common_sign = 0;                    // 0 when none
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string claim;   // e.g. "SVB_1"
  std::string route;   // family that decided
  std::optional<FamilyWitness> witness;
  std::vector<std::string> notes;
};

/// SSC_k of O, i.e. SVB_{k-1}. k = n: full-order family, positive sign forced.
/// k < n: (r, beta) families for r in (1:k), beta in beta_family(n,k), one common sign.
template <class T>
Certificate certify_svb(const Matrix<T>& a, const std::vector<T>& c, int k, int horizon);

/// Sufficient test for VB_{k-1}: Certified or Inconclusive.
/// k = n: r < n strict, r = n non-strict with g~(l) > 0 for l in (1:n-1).
/// k < n: r = k systems on consecutive tail betas may be non-strict if their first k samples carry
/// the common sign strictly.
template <class T>
Certificate certify_vb(const Matrix<T>& a, const std::vector<T>& c, int k, int horizon);

/// j-positivity for j in (1:k) on the minors with consecutive rows: r = j systems with b~ = e_beta
/// for every beta of size j. Orders j < k strict; order k strict when `strict`.
template <class T>
Certificate certify_k_positive(const Matrix<T>& a, const std::vector<T>& c, int k, bool strict, int horizon);

/// VD_{k-1}: k-positivity (OVD), else sign regularity through the column-reversed pair
/// (J A J, c J) when n > k, else VB_{j-1} for every j in (1:k).
template <class T>
Certificate certify_vd(const Matrix<T>& a, const std::vector<T>& c, int k, int horizon);

/// Dispatch over property and target. `b` is required for Controllability and HankelSufficient.
template <class T>
Certificate certify(const Matrix<T>& a, const std::optional<std::vector<T>>& b, const std::vector<T>& c,
                    Property property, Target target, int k, int horizon, bool strict = false);

struct EigenScreen {
  bool pass = false;
  bool diagonalizable = false;
  bool refutes = false;  // literal violation on a diagonalizable A
  std::vector<std::complex<double>> leading;
  std::string note;
};

/// Necessary condition for SSC_k of O: the k leading eigenvalues are real and positive, and no
/// eigenvalue tying |lambda_k| in modulus is complex or nonpositive.
EigenScreen eigen_necessary_check(const Matrix<double>& a, int k);
EigenScreen eigen_necessary_check(const Matrix<Rational>& a, int k);

struct VariationBound {
  int input_variation = -1;          // v_minus(b)
  std::optional<int> bound;          // certified v(g) <= bound
  std::optional<int> certified_order;
  int measured = -1;                 // v_minus(g(1..horizon))
  bool tail_fixed = false;           // sign of g fixed from within the horizon on
  std::string note;
};

template <class T>
VariationBound impulse_variation_bound(const LtiSystem<T>& sys, int horizon);

/// H_{ij} = g(i+j-1), rows x cols.
template <class T>
Matrix<T> hankel_matrix(const LtiSystem<T>& sys, int rows, int cols);

/// Consecutive minor certificate of order k (strict) on the column-reversed truncated Hankel
/// matrix; a pass shows the truncated Hankel matrix is sign regular of order k.
template <class T>
MatrixCheck truncated_hankel_check(const LtiSystem<T>& sys, int k, int rows, int cols);

/// (T^{-1} A T, e_1, c T) with T = [b, Ab, ..., A^{n-1} b]: a realization whose observability
/// operator is the Hankel operator of g. Throws Error(HypothesisNotMet) unless (A,b) is controllable.
template <class T>
LtiSystem<T> hankel_realization(const LtiSystem<T>& sys);

}  // namespace vbcert
