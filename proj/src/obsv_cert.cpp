#include "vbcert/obsv_cert.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "vbcert/linalg.hpp"
#include "vbcert/variation.hpp"

namespace vbcert {
namespace {

std::string trace_value(const Rational& x) { return to_decimal_string(x, 30); }
std::string trace_value(double x) { return to_decimal_string(x, 17); }
std::string exact_value(const Rational& x) { return to_exact_string(x); }
std::string exact_value(double x) { return to_decimal_string(x, 17); }

int dim(std::size_t v) { return static_cast<int>(v); }

std::string order_claim(const char* prefix, int k) { return std::string(prefix) + "_" + std::to_string(k - 1); }

template <class T>
std::vector<T> row_of(const Matrix<T>& m) {
  return std::vector<T>(m.entries().begin(), m.entries().end());
}

template <class T>
Matrix<T> reversed(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  Matrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(n - 1 - i, n - 1 - j);
  return out;
}

void require_order(int k, int n) {
  if (k < 1 || k > n)
    throw Error(ErrorCode::RankOutOfRange, "order " + std::to_string(k) + " for a system of order " + std::to_string(n));
}

// Evaluates every system (in parallel) and keeps the family order.
template <class T>
std::vector<SystemVerdict> evaluate_family(const std::vector<CompoundSystem<T>>& family, int horizon) {
  std::vector<SystemVerdict> out(family.size());
  std::vector<std::exception_ptr> errors(family.size());
  const auto count = static_cast<long>(family.size());
#pragma omp parallel for schedule(dynamic)
  for (long ii = 0; ii < count; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    try {
      const CompoundSystem<T>& s = family[i];
      SystemVerdict v;
      v.r = s.r;
      v.k = s.k;
      v.beta = s.beta;
      v.may_vanish = s.strictness == Strictness::NonStrictAllowed;
      v.verdict = external_positivity(s.base, v.may_vanish ? ExtPosMode::NonStrict : ExtPosMode::Strict, horizon);
      const auto g = impulse_response(s.base, horizon);
      v.trace.reserve(g.size());
      for (std::size_t t = 0; t < g.size(); ++t) {
        v.trace.push_back(trace_value(g[t]));
        const Sign sg = sign_of(g[t]);
        if (!v.first_signed && (sg == Sign::Positive || sg == Sign::Negative))
          v.first_signed = Violation{static_cast<int>(t) + 1, exact_value(g[t])};
      }
      out[i] = std::move(v);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct Judgement {
  int eps = 0;
  bool all_certified = true;
  std::optional<FamilyWitness> witness;
};

// Common sign across the family. required != 0 fixes it; otherwise the first system with signed
// samples sets it. The first wrong-sign or vanishing sample becomes the witness.
Judgement judge(const std::vector<SystemVerdict>& family, int required) {
  Judgement j;
  j.eps = required;
  if (j.eps == 0)
    for (const auto& v : family)
      if (v.verdict.sign != 0) {
        j.eps = v.verdict.sign;
        break;
      }
  for (const auto& v : family) {
    if (!v.verdict.certified()) j.all_certified = false;
    if (j.witness) continue;
    if (v.verdict.sign != 0 && j.eps != 0 && v.verdict.sign != j.eps && v.first_signed) {
      j.witness = FamilyWitness{v.r, v.beta, v.first_signed->t, v.first_signed->value, true};
    } else if (v.verdict.status == ExtPosStatus::Violated && v.verdict.first_violation) {
      const auto& fv = *v.verdict.first_violation;
      j.witness = FamilyWitness{v.r, v.beta, fv.t, fv.value, fv.value != "0"};
    }
  }
  return j;
}

void sort_family(std::vector<SystemVerdict>& family) {
  std::stable_sort(family.begin(), family.end(), [](const SystemVerdict& x, const SystemVerdict& y) {
    if (x.k != y.k) return x.k < y.k;
    if (x.r != y.r) return x.r < y.r;
    return x.beta.lex_rank() < y.beta.lex_rank();
  });
}

std::string describe(const FamilyWitness& w) {
  return std::string(w.opposite_sign ? "wrong-sign" : "vanishing") + " sample g(" + std::to_string(w.t) + ") = " +
         w.value + " for r = " + std::to_string(w.r) + ", beta = " + w.beta.to_string();
}

template <class T>
Certificate start(Property p, int k, int horizon) {
  Certificate cert;
  cert.property = p;
  cert.k = k;
  cert.horizon = horizon;
  cert.backend = backend_of_v<T>;
  return cert;
}

template <class T>
std::vector<CompoundSystem<T>> reduced_systems(const Matrix<T>& a, const std::vector<T>& c, int k, bool strict) {
  const int n = dim(a.rows());
  std::vector<CompoundSystem<T>> family;
  const auto betas = beta_family(n, k, strict);
  for (int r = 1; r <= k; ++r)
    for (const auto& [beta, flag] : betas) {
      CompoundSystem<T> s = thm2_system(a, c, k, r, beta);
      s.strictness = r == k ? flag : Strictness::Strict;
      family.push_back(std::move(s));
    }
  return family;
}

template <class T>
std::vector<CompoundSystem<T>> positivity_systems(const Matrix<T>& a, const std::vector<T>& c, int k, bool strict) {
  const int n = dim(a.rows());
  std::vector<CompoundSystem<T>> family;
  for (int j = 1; j <= k; ++j)
    for (const auto& beta : lex_tuples(n, j)) {
      CompoundSystem<T> s = thm2_system(a, c, j, j, beta);
      s.strictness = j == k && !strict ? Strictness::NonStrictAllowed : Strictness::Strict;
      family.push_back(std::move(s));
    }
  return family;
}

}  // namespace

const char* to_string(Property p) {
  switch (p) {
    case Property::SVB: return "SVB";
    case Property::VB: return "VB";
    case Property::VD: return "VD";
    case Property::OVD: return "OVD";
    case Property::KPositive: return "KPositive";
  }
  return "?";
}

const char* to_string(Target t) {
  switch (t) {
    case Target::Observability: return "Observability";
    case Target::Controllability: return "Controllability";
    case Target::HankelSufficient: return "HankelSufficient";
  }
  return "?";
}

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Certified: return "Certified";
    case Conclusion::Refuted: return "Refuted";
    case Conclusion::Inconclusive: return "Inconclusive";
  }
  return "?";
}

template <class T>
Matrix<T> observable_basis(const Matrix<T>& a, const std::vector<T>& c) {
  if (!a.square()) throw Error(ErrorCode::NonSquare, "system matrix is " + a.shape());
  const int n = dim(a.rows());
  Matrix<T> o = observability_matrix<T>(a, c, n);
  const int rk = rank(o);
  if (rk < n)
    throw Error(ErrorCode::NotObservable,
                "observability matrix has rank " + std::to_string(rk) + " < " + std::to_string(n));
  return o;
}

template <class T>
std::vector<CompoundSystem<T>> thm1_systems(const Matrix<T>& a, const std::vector<T>& c) {
  const Matrix<T> o = observable_basis(a, c);
  const Matrix<T> o_inv = inverse(o);
  const int n = dim(a.rows());
  std::vector<CompoundSystem<T>> family;
  for (int r = 1; r <= n; ++r) {
    const Matrix<T> lifted = power(a, n - r) * o_inv;
    const Matrix<T> b = compound(select_columns(lifted, IndexTuple::consecutive(n, n - r + 1, r)), r);
    const Matrix<T> ct = compound(observability_matrix<T>(a, c, r), r);
    family.push_back({LtiSystem<T>(compound(a, r), b.column_vector(0), row_of(ct)), r, n,
                      IndexTuple::consecutive(n, 1, n), Strictness::Strict});
  }
  return family;
}

template <class T>
CompoundSystem<T> thm2_system(const Matrix<T>& a, const std::vector<T>& c, int k, int r, const IndexTuple& beta) {
  const Matrix<T> o = observable_basis(a, c);
  const int n = dim(a.rows());
  require_order(k, n);
  if (r < 1 || r > k) throw Error(ErrorCode::RankOutOfRange, "r must lie in (1:k)");
  if (beta.ambient() != n || beta.size() != k)
    throw Error(ErrorCode::BadIndices, "beta " + beta.to_string() + " is not a " + std::to_string(k) + "-subset of (1:" +
                                           std::to_string(n) + ")");
  const std::size_t size = binomial(n, r);
  std::vector<T> b(size, T(0));
  if (r == k) {
    b[beta.lex_rank() - 1] = T(1);
  } else {
    const Matrix<T> left = compound(power(a, k - r) * inverse(o), r);
    std::vector<int> head_elems;
    for (int i = 1; i <= k - r; ++i) head_elems.push_back(i);
    const IndexTuple head(n, head_elems);
    for (const auto& local : lex_tuples(n - k + r, r)) {
      std::vector<int> shifted;
      for (int e : local.elems()) shifted.push_back(e + k - r);
      const IndexTuple s(n, shifted);
      const T w = minor_det(o, merge(head, s), beta);
      if (is_exact_zero(w)) continue;
      const std::size_t col = s.lex_rank() - 1;
      for (std::size_t q = 0; q < size; ++q) b[q] += left(q, col) * w;
    }
  }
  const Matrix<T> ct = compound(observability_matrix<T>(a, c, r), r);
  return {LtiSystem<T>(compound(a, r), std::move(b), row_of(ct)), r, k, beta, Strictness::Strict};
}

std::vector<std::pair<IndexTuple, Strictness>> beta_family(int n, int k, bool strict) {
  require_order(k, n);
  std::vector<std::pair<IndexTuple, Strictness>> out;
  for (auto& beta : reduced_tuples(n, k)) {
    const bool tail = !strict && beta.is_consecutive() && beta[0] >= k + 1;
    out.emplace_back(std::move(beta), tail ? Strictness::NonStrictAllowed : Strictness::Strict);
  }
  return out;
}

template <class T>
Certificate certify_svb(const Matrix<T>& a, const std::vector<T>& c, int k, int horizon) {
  const int n = dim(a.rows());
  observable_basis(a, c);
  require_order(k, n);
  Certificate cert = start<T>(Property::SVB, k, horizon);
  cert.strict = true;
  cert.claim = order_claim("SVB", k);
  std::vector<CompoundSystem<T>> family;
  int required = 0;
  if (k == n) {
    family = thm1_systems(a, c);
    required = 1;
    cert.route = "full-order family";
  } else {
    family = reduced_systems(a, c, k, true);
    cert.route = "reduced (r, beta) family";
  }
  cert.per_system = evaluate_family(family, horizon);
  sort_family(cert.per_system);
  const Judgement j = judge(cert.per_system, required);
  if (j.witness) {
    cert.conclusion = Conclusion::Refuted;
    cert.witness = j.witness;
    cert.notes.push_back(describe(*j.witness));
  } else if (j.all_certified) {
    cert.conclusion = Conclusion::Certified;
    cert.common_sign = j.eps;
  } else {
    cert.notes.push_back("some systems are sign-consistent only up to the horizon");
  }
  return cert;
}

template <class T>
Certificate certify_vb(const Matrix<T>& a, const std::vector<T>& c, int k, int horizon) {
  const int n = dim(a.rows());
  observable_basis(a, c);
  require_order(k, n);
  Certificate cert = start<T>(Property::VB, k, horizon);
  cert.claim = order_claim("VB", k);
  std::vector<CompoundSystem<T>> family;
  int required = 0;
  int side = 0;  // leading samples an exempted system must carry strictly
  if (k == n) {
    family = thm1_systems(a, c);
    family.back().strictness = Strictness::NonStrictAllowed;
    required = 1;
    side = n - 1;
    cert.route = "full-order family";
  } else {
    family = reduced_systems(a, c, k, false);
    side = k;
    cert.route = "reduced (r, beta) family";
  }
  cert.per_system = evaluate_family(family, horizon);
  const Judgement j = judge(cert.per_system, required);
  bool side_ok = true;
  for (std::size_t i = 0; i < family.size() && side_ok && j.eps != 0; ++i) {
    if (family[i].strictness != Strictness::NonStrictAllowed || side == 0) continue;
    for (const auto& x : impulse_response(family[i].base, side))
      if (static_cast<int>(sign_of(x)) != j.eps) {
        side_ok = false;
        cert.notes.push_back("exempted system r = " + std::to_string(family[i].r) + ", beta = " +
                             family[i].beta.to_string() + " is not strictly signed on its first " +
                             std::to_string(side) + " samples");
        break;
      }
  }
  sort_family(cert.per_system);
  if (j.witness) {
    cert.notes.push_back(describe(*j.witness));
    cert.notes.push_back("the variation-bound test is sufficient only; no refutation is drawn");
  } else if (j.all_certified && side_ok) {
    cert.conclusion = Conclusion::Certified;
    cert.common_sign = j.eps == 0 ? 1 : j.eps;
  } else if (!j.all_certified) {
    cert.notes.push_back("some systems are sign-consistent only up to the horizon");
  }
  return cert;
}

template <class T>
Certificate certify_k_positive(const Matrix<T>& a, const std::vector<T>& c, int k, bool strict, int horizon) {
  const int n = dim(a.rows());
  observable_basis(a, c);
  require_order(k, n);
  Certificate cert = start<T>(Property::KPositive, k, horizon);
  cert.strict = strict;
  cert.claim = (strict ? "strictly " : "") + std::to_string(k) + "-positive, " + order_claim("OVD", k);
  cert.route = "consecutive-row minors";
  cert.per_system = evaluate_family(positivity_systems(a, c, k, strict), horizon);
  sort_family(cert.per_system);
  const Judgement j = judge(cert.per_system, 1);
  if (j.witness && (j.witness->opposite_sign || strict)) {
    cert.conclusion = Conclusion::Refuted;
    cert.witness = j.witness;
    cert.notes.push_back(describe(*j.witness));
  } else if (j.witness) {
    cert.notes.push_back(describe(*j.witness));
    cert.notes.push_back("a vanishing lower-order minor leaves non-strict k-positivity open");
  } else if (j.all_certified) {
    cert.conclusion = Conclusion::Certified;
    cert.common_sign = 1;
  } else {
    cert.notes.push_back("some systems are positive only up to the horizon");
  }
  return cert;
}

template <class T>
Certificate certify_vd(const Matrix<T>& a, const std::vector<T>& c, int k, int horizon) {
  const int n = dim(a.rows());
  const Matrix<T> o = observable_basis(a, c);
  require_order(k, n);
  auto relabel = [&](Certificate cert, const std::string& route) {
    cert.property = Property::VD;
    cert.strict = false;
    cert.claim = order_claim("VD", k);
    cert.route = route;
    return cert;
  };

  Certificate tp = certify_k_positive(a, c, k, false, horizon);
  if (tp.conclusion == Conclusion::Certified) {
    Certificate cert = relabel(std::move(tp), "k-positivity");
    cert.claim += ", " + order_claim("OVD", k);
    return cert;
  }
  std::vector<std::string> notes{"k-positivity: " + std::string(to_string(tp.conclusion))};

  const bool hypothesis = n > k && k_columns_independent(o, k);
  if (hypothesis) {
    std::vector<T> c_rev(c.rbegin(), c.rend());
    Certificate sr = certify_k_positive(reversed(a), c_rev, k, false, horizon);
    if (sr.conclusion == Conclusion::Certified) {
      Certificate cert = relabel(std::move(sr), "column-reversed k-positivity");
      cert.common_sign = 0;
      cert.notes.insert(cert.notes.begin(), notes.begin(), notes.end());
      cert.notes.push_back("j-minors carry the sign (-1)^{j(j-1)/2}: sign regular of order " + std::to_string(k));
      return cert;
    }
    notes.push_back("column-reversed k-positivity: " + std::string(to_string(sr.conclusion)));
  } else {
    notes.push_back("sign-regularity route needs n > k");
  }

  Certificate cert = start<T>(Property::VD, k, horizon);
  cert.claim = order_claim("VD", k);
  cert.route = "per-order variation bound";
  cert.notes = notes;
  bool all = true;
  for (int j = 1; j <= k; ++j) {
    Certificate vb = certify_vb(a, c, j, horizon);
    cert.notes.push_back(order_claim("VB", j) + ": " + to_string(vb.conclusion));
    all = all && vb.conclusion == Conclusion::Certified;
    for (auto& v : vb.per_system) cert.per_system.push_back(std::move(v));
  }
  sort_family(cert.per_system);
  if (all) {
    cert.conclusion = Conclusion::Certified;
    return cert;
  }
  if (hypothesis) {
    for (int j = 1; j <= k; ++j) {
      Certificate sc = certify_svb(a, c, j, horizon);
      if (sc.conclusion == Conclusion::Refuted && sc.witness && sc.witness->opposite_sign) {
        cert.conclusion = Conclusion::Refuted;
        cert.witness = sc.witness;
        cert.route = "sign-regularity refutation";
        cert.notes.push_back(describe(*sc.witness) + ": order-" + std::to_string(j) + " minors of both signs");
        return cert;
      }
    }
  }
  return cert;
}

template <class T>
Certificate certify(const Matrix<T>& a, const std::optional<std::vector<T>>& b, const std::vector<T>& c,
                    Property property, Target target, int k, int horizon, bool strict) {
  auto run = [&](const Matrix<T>& aa, const std::vector<T>& cc) {
    switch (property) {
      case Property::SVB: return certify_svb(aa, cc, k, horizon);
      case Property::VB: return certify_vb(aa, cc, k, horizon);
      case Property::VD: return certify_vd(aa, cc, k, horizon);
      case Property::OVD: {
        Certificate cert = certify_k_positive(aa, cc, k, false, horizon);
        cert.property = Property::OVD;
        cert.claim = order_claim("OVD", k);
        return cert;
      }
      case Property::KPositive: return certify_k_positive(aa, cc, k, strict, horizon);
    }
    throw Error(ErrorCode::PreconditionViolated, "unknown property");
  };
  if (target == Target::Observability) return run(a, c);
  if (!b) throw Error(ErrorCode::PreconditionViolated, std::string(to_string(target)) + " needs b");
  Certificate ctrb = run(a.transpose(), *b);
  ctrb.target = Target::Controllability;
  if (target == Target::Controllability) return ctrb;

  Certificate obsv = run(a, c);
  Certificate cert = obsv;
  cert.target = Target::HankelSufficient;
  cert.common_sign = 0;
  cert.witness.reset();
  cert.notes = {"observability factor: " + std::string(to_string(obsv.conclusion)),
                "controllability factor: " + std::string(to_string(ctrb.conclusion))};
  for (auto& v : ctrb.per_system) {
    v.factor = "ctrb";
    cert.per_system.push_back(std::move(v));
  }
  if (property == Property::SVB) {
    cert.conclusion = Conclusion::Inconclusive;
    cert.notes.push_back("strict variation bounds do not compose through a product; use vb, vd or kpos");
  } else if (obsv.conclusion == Conclusion::Certified && ctrb.conclusion == Conclusion::Certified) {
    cert.conclusion = Conclusion::Certified;
    cert.notes.push_back("both factors certified: sufficient for the Hankel operator");
  } else {
    cert.conclusion = Conclusion::Inconclusive;
    cert.notes.push_back("Hankel composition is sufficient only; no refutation is drawn");
  }
  return cert;
}

EigenScreen eigen_necessary_check(const Matrix<double>& a, int k) {
  EigenScreen out;
  const auto spectrum = eigen_sorted(a).eigenvalues;
  const int n = dim(spectrum.size());
  if (k < 1 || k > n) {
    out.note = "k outside (1:n)";
    return out;
  }
  double rho = 0.0;
  for (const auto& v : spectrum) rho = std::max(rho, std::abs(v));
  const double tol = 1e-6 * std::max(1.0, rho);
  auto real_positive = [&](const std::complex<double>& v) { return std::abs(v.imag()) <= tol && v.real() > tol; };
  out.leading.assign(spectrum.begin(), spectrum.begin() + k);
  const bool literal = std::all_of(out.leading.begin(), out.leading.end(), real_positive);
  bool tie = false;
  const double kth = std::abs(spectrum[static_cast<std::size_t>(k - 1)]);
  for (int i = k; i < n; ++i) {
    const auto& v = spectrum[static_cast<std::size_t>(i)];
    if (std::abs(std::abs(v) - kth) <= tol && !real_positive(v)) tie = true;
  }
  out.diagonalizable = numerically_diagonalizable(a);
  out.pass = literal && !tie;
  out.refutes = !literal && out.diagonalizable;
  if (!literal)
    out.note = "a leading eigenvalue is not real and positive";
  else if (tie)
    out.note = "an eigenvalue of modulus |lambda_k| is not real and positive";
  if (!out.pass && !out.refutes) out.note += out.diagonalizable ? " (advisory)" : " (advisory: A is not diagonalizable)";
  return out;
}

EigenScreen eigen_necessary_check(const Matrix<Rational>& a, int k) { return eigen_necessary_check(a.cast<double>(), k); }

template <class T>
VariationBound impulse_variation_bound(const LtiSystem<T>& sys, int horizon) {
  observable_basis(sys.a, sys.c);
  VariationBound out;
  const auto g = impulse_response(sys, horizon);
  if constexpr (is_exact_v<T>) {
    out.input_variation = v_minus(std::span<const Rational>(sys.b)).value;
    out.measured = v_minus(std::span<const Rational>(g)).value;
  } else {
    out.input_variation = v_minus(std::span<const double>(sys.b), float_tolerance()).value;
    out.measured = v_minus(std::span<const double>(g), float_tolerance()).value;
  }
  const TailCertificate tail = tail_certificate(sys.to_float(), horizon);
  out.tail_fixed = tail.valid && tail.start <= horizon;
  if (out.input_variation < 0) {
    out.bound = -1;
    out.note = "b = 0 gives g = 0";
    return out;
  }
  for (int j = out.input_variation; j < sys.order(); ++j) {
    if (certify_vb(sys.a, sys.c, j + 1, horizon).conclusion == Conclusion::Certified) {
      out.bound = j;
      out.certified_order = j + 1;
      return out;
    }
  }
  out.note = "no variation bound of order >= v(b) could be certified";
  return out;
}

template <class T>
Matrix<T> hankel_matrix(const LtiSystem<T>& sys, int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::PreconditionViolated, "Hankel matrix needs positive size");
  const auto g = impulse_response(sys, rows + cols - 1);
  Matrix<T> h(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = g[i + j];
  return h;
}

template <class T>
MatrixCheck truncated_hankel_check(const LtiSystem<T>& sys, int k, int rows, int cols) {
  MatrixCheck out = consecutive_certificate(hankel_matrix(sys, rows, cols).reverse_columns(), k, true);
  if (out.pass) out.note = "column-reversed Hankel matrix is strictly " + std::to_string(k) + "-positive";
  return out;
}

template <class T>
LtiSystem<T> hankel_realization(const LtiSystem<T>& sys) {
  const int n = sys.order();
  const Matrix<T> t = observability_matrix(sys.a.transpose(), std::span<const T>(sys.b), n).transpose();
  if (rank(t) < n) throw Error(ErrorCode::HypothesisNotMet, "(A, b) is not controllable");
  const Matrix<T> ti = inverse(t);
  std::vector<T> c(static_cast<std::size_t>(n), T(0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(j)] += sys.c[static_cast<std::size_t>(i)] * t(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  std::vector<T> e(static_cast<std::size_t>(n), T(0));
  e[0] = T(1);
  return LtiSystem<T>(ti * sys.a * t, std::move(e), std::move(c));
}

#define VBCERT_INSTANTIATE(T)                                                                                  \
  template Matrix<T> observable_basis<T>(const Matrix<T>&, const std::vector<T>&);                            \
  template std::vector<CompoundSystem<T>> thm1_systems<T>(const Matrix<T>&, const std::vector<T>&);           \
  template CompoundSystem<T> thm2_system<T>(const Matrix<T>&, const std::vector<T>&, int, int, const IndexTuple&); \
  template Certificate certify_svb<T>(const Matrix<T>&, const std::vector<T>&, int, int);                     \
  template Certificate certify_vb<T>(const Matrix<T>&, const std::vector<T>&, int, int);                      \
  template Certificate certify_k_positive<T>(const Matrix<T>&, const std::vector<T>&, int, bool, int);        \
  template Certificate certify_vd<T>(const Matrix<T>&, const std::vector<T>&, int, int);                      \
  template Certificate certify<T>(const Matrix<T>&, const std::optional<std::vector<T>>&, const std::vector<T>&, \
                                  Property, Target, int, int, bool);                                          \
  template VariationBound impulse_variation_bound<T>(const LtiSystem<T>&, int);                               \
  template Matrix<T> hankel_matrix<T>(const LtiSystem<T>&, int, int);                                         \
  template MatrixCheck truncated_hankel_check<T>(const LtiSystem<T>&, int, int, int);                       \
  template LtiSystem<T> hankel_realization<T>(const LtiSystem<T>&);

VBCERT_INSTANTIATE(Rational)
VBCERT_INSTANTIATE(double)

#undef VBCERT_INSTANTIATE

}  // namespace vbcert
