#include "vbcert/lti.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace vbcert {
namespace {

using cd = std::complex<double>;

std::string render(const Rational& x) { return to_exact_string(x); }
std::string render(double x) { return to_decimal_string(x, 17); }

std::vector<cd> eigenvalues_of(const Matrix<double>& a) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenSolveFailed, "eigenvalue iteration did not converge");
  std::vector<cd> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return out;
}

// Sorts [first, last) by key descending and calls `inner` on every run of keys within tol.
template <class It, class Key, class Inner>
void sort_groups(It first, It last, Key key, double tol, Inner inner) {
  std::stable_sort(first, last, [&](const cd& x, const cd& y) { return key(x) > key(y); });
  while (first != last) {
    It run = first + 1;
    while (run != last && key(*first) - key(*run) <= tol) ++run;
    inner(first, run);
    first = run;
  }
}

struct Cluster {
  cd center;
  int multiplicity = 0;
  bool zero = false;
};

std::vector<Cluster> cluster_eigenvalues(const std::vector<cd>& evs, double tol) {
  std::vector<Cluster> out;
  std::vector<cd> sums;
  for (const cd& ev : evs) {
    std::size_t hit = out.size();
    for (std::size_t i = 0; i < out.size(); ++i)
      if (std::abs(ev - out[i].center) <= tol) {
        hit = i;
        break;
      }
    if (hit == out.size()) {
      out.push_back({ev, 1, false});
      sums.push_back(ev);
    } else {
      sums[hit] += ev;
      out[hit].multiplicity += 1;
      out[hit].center = sums[hit] / static_cast<double>(out[hit].multiplicity);
    }
  }
  for (auto& c : out) {
    if (std::abs(c.center.imag()) <= tol) c.center = {c.center.real(), 0.0};
    c.zero = std::abs(c.center) <= tol;
  }
  return out;
}

struct Term {
  std::size_t cluster = 0;
  int degree = 0;
  cd coef{0.0, 0.0};
};

cd basis(const Cluster& c, int degree, int t) {
  if (c.zero) return t == 1 + degree ? cd(1.0, 0.0) : cd(0.0, 0.0);
  return std::pow(static_cast<double>(t), degree) * std::pow(c.center, t - 1);
}

// Least-squares fit of g(1..window) on the quasi-polynomial basis; empty on failure.
std::vector<Term> fit_modes(const std::vector<Cluster>& clusters, const std::vector<double>& g, int window) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < clusters.size(); ++i)
    for (int j = 0; j < clusters[i].multiplicity; ++j) terms.push_back({i, j, {}});
  const auto rows = static_cast<Eigen::Index>(window);
  const auto cols = static_cast<Eigen::Index>(terms.size());
  Eigen::MatrixXcd m(rows, cols);
  Eigen::VectorXcd rhs(rows);
  for (Eigen::Index t = 0; t < rows; ++t) rhs(t) = g[static_cast<std::size_t>(t)];
  std::vector<double> norms(terms.size(), 0.0);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Term& term = terms[static_cast<std::size_t>(j)];
    for (Eigen::Index t = 0; t < rows; ++t) m(t, j) = basis(clusters[term.cluster], term.degree, static_cast<int>(t) + 1);
    const double nrm = m.col(j).norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) return {};
    m.col(j) /= nrm;
    norms[static_cast<std::size_t>(j)] = nrm;
  }
  const Eigen::VectorXcd x = m.colPivHouseholderQr().solve(rhs);
  for (Eigen::Index j = 0; j < cols; ++j) terms[static_cast<std::size_t>(j)].coef = x(j) / norms[static_cast<std::size_t>(j)];
  return terms;
}

bool fit_reproduces(const std::vector<Cluster>& clusters, const std::vector<Term>& terms, const std::vector<double>& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int t = static_cast<int>(i) + 1;
    cd pred{0.0, 0.0};
    double mass = std::abs(g[i]);
    for (const Term& term : terms) {
      const cd v = term.coef * basis(clusters[term.cluster], term.degree, t);
      pred += v;
      mass += std::abs(v);
    }
    if (!std::isfinite(mass) || std::abs(pred - g[i]) > 1e-7 * mass + 1e-300) return false;
  }
  return true;
}

TailCertificate analyse_modes(const std::vector<Cluster>& clusters, const std::vector<Term>& terms, double gscale,
                              double tie_tol, int window, int limit) {
  TailCertificate out;
  int zero_mult = 0;
  for (const auto& c : clusters)
    if (c.zero) zero_mult = std::max(zero_mult, c.multiplicity);

  std::vector<const Term*> live;
  for (const Term& term : terms) {
    const Cluster& c = clusters[term.cluster];
    if (c.zero) continue;
    double peak = 0.0;
    for (int t = 1; t <= window; ++t) peak = std::max(peak, std::abs(term.coef * basis(c, term.degree, t)));
    if (peak > 1e-10 * gscale) live.push_back(&term);
  }
  if (live.empty()) {
    out.valid = true;
    out.zero_tail = true;
    out.start = zero_mult + 1;
    out.note = "impulse response vanishes from t = " + std::to_string(out.start);
    return out;
  }

  double rho = 0.0;
  for (const Term* term : live) rho = std::max(rho, std::abs(clusters[term->cluster].center));
  auto in_tier = [&](const Term* term) { return std::abs(clusters[term->cluster].center) >= rho - tie_tol; };
  int degree = 0;
  for (const Term* term : live)
    if (in_tier(term)) degree = std::max(degree, term->degree);
  const Term* dom = nullptr;
  for (const Term* term : live) {
    const cd z = clusters[term->cluster].center;
    if (in_tier(term) && term->degree == degree && z.imag() == 0.0 && z.real() > 0.0) dom = term;
  }
  if (dom == nullptr) {
    out.note = "dominant mode is not a positive real pole";
    return out;
  }
  const cd pole = clusters[dom->cluster].center;
  const cd a = dom->coef;
  if (std::abs(a.imag()) > 1e-6 * std::abs(a)) {
    out.note = "dominant residue is not real";
    return out;
  }

  struct Bound {
    double log_coef;
    int rel_degree;
    double log_ratio;
  };
  std::vector<Bound> bounds;
  int t_mono = std::max(1, zero_mult + 1);
  const double lead = std::abs(a) * (1.0 - 1e-6);
  for (const Term* term : live) {
    if (term == dom) continue;
    const double ratio = in_tier(term) ? 1.0 : std::abs(clusters[term->cluster].center) / rho;  // tied modes stay constant
    const double log_ratio = std::log(ratio);
    const int rel = term->degree - degree;
    bounds.push_back({std::log(std::abs(term->coef) * (1.0 + 1e-6) / lead), rel, log_ratio});
    if (rel > 0) t_mono = std::max(t_mono, static_cast<int>(std::ceil(rel / -log_ratio)) + 1);
  }
  for (int t = t_mono; t <= limit; ++t) {
    double r = 0.0;
    for (const Bound& b : bounds)
      r += std::exp(b.log_coef + b.rel_degree * std::log(static_cast<double>(t)) + (t - 1) * b.log_ratio);
    if (r < 1.0) {
      out.valid = true;
      out.start = t;
      out.sign = a.real() > 0.0 ? 1 : -1;
      out.degree = degree;
      out.pole = pole;
      return out;
    }
  }
  out.note = "dominant mode does not take over by t = " + std::to_string(limit);
  return out;
}

}  // namespace

template <class T>
LtiSystem<T>::LtiSystem(Matrix<T> a_, std::vector<T> b_, std::vector<T> c_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
  if (!a.square()) throw Error(ErrorCode::NonSquare, "system matrix is " + a.shape());
  if (b.size() != a.rows() || c.size() != a.rows())
    throw Error(ErrorCode::SizeMismatch, "b has " + std::to_string(b.size()) + " and c has " +
                                             std::to_string(c.size()) + " entries for a " + a.shape() + " A");
}

template <class T>
LtiSystem<double> LtiSystem<T>::to_float() const {
  std::vector<double> bf, cf;
  for (const auto& v : b) bf.push_back(to_double(v));
  for (const auto& v : c) cf.push_back(to_double(v));
  return LtiSystem<double>(a.template cast<double>(), std::move(bf), std::move(cf));
}

template <class T>
std::vector<T> impulse_response(const LtiSystem<T>& sys, int count) {
  if (count < 1) throw Error(ErrorCode::PreconditionViolated, "impulse response length must be positive");
  std::vector<T> g;
  g.reserve(static_cast<std::size_t>(count));
  std::vector<T> x = sys.b;
  for (int t = 1; t <= count; ++t) {
    g.push_back(dot<T>(sys.c, x));
    if (t < count) x = mul<T>(sys.a, x);
  }
  return g;
}

template <class T>
Matrix<T> observability_matrix(const Matrix<T>& a, std::span<const T> c, int t) {
  if (!a.square()) throw Error(ErrorCode::NonSquare, "system matrix is " + a.shape());
  if (c.size() != a.rows()) throw Error(ErrorCode::SizeMismatch, "output row length");
  if (t < 1) throw Error(ErrorCode::PreconditionViolated, "observability matrix needs t >= 1");
  const std::size_t n = a.rows();
  Matrix<T> o(static_cast<std::size_t>(t), n);
  std::vector<T> row(c.begin(), c.end());
  for (std::size_t i = 0; i < static_cast<std::size_t>(t); ++i) {
    for (std::size_t j = 0; j < n; ++j) o(i, j) = row[j];
    if (i + 1 < static_cast<std::size_t>(t)) row = mul<T>(row, a);
  }
  return o;
}

OrderedSpectrum eigen_sorted(const Matrix<double>& a) {
  if (!a.square()) throw Error(ErrorCode::NonSquare, "eigenvalues of a " + a.shape() + " matrix");
  std::vector<cd> evs = eigenvalues_of(a);
  double rho = 0.0;
  for (const cd& v : evs) rho = std::max(rho, std::abs(v));
  const double tol = 1e-9 * std::max(1.0, rho);
  auto by_mod = [](const cd& v) { return std::abs(v); };
  auto by_re = [](const cd& v) { return v.real(); };
  auto by_im = [](const cd& v) { return v.imag(); };
  sort_groups(evs.begin(), evs.end(), by_mod, tol, [&](auto f, auto l) {
    sort_groups(f, l, by_re, tol, [&](auto f2, auto l2) {
      std::stable_sort(f2, l2, [&](const cd& x, const cd& y) { return by_im(x) > by_im(y); });
    });
  });
  return {std::move(evs)};
}

OrderedSpectrum eigen_sorted(const Matrix<Rational>& a) { return eigen_sorted(a.cast<double>()); }

bool numerically_diagonalizable(const Matrix<double>& a) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, true);
  if (es.info() != Eigen::Success) return false;
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(es.eigenvectors());
  const auto& sv = svd.singularValues();
  return sv(n - 1) > 0.0 && sv(0) / sv(n - 1) <= 1e10;
}

int default_horizon(int n) { return std::max(50, 10 * n); }

const char* to_string(ExtPosStatus s) {
  switch (s) {
    case ExtPosStatus::StrictPositive: return "StrictPositive";
    case ExtPosStatus::StrictNegative: return "StrictNegative";
    case ExtPosStatus::NonNegative: return "NonNegative";
    case ExtPosStatus::NonPositive: return "NonPositive";
    case ExtPosStatus::Violated: return "Violated";
    case ExtPosStatus::VerifiedUpToHorizonOnly: return "VerifiedUpToHorizonOnly";
    case ExtPosStatus::Indeterminate: return "Indeterminate";
  }
  return "?";
}

TailCertificate tail_certificate(const LtiSystem<double>& sys, int limit) {
  TailCertificate out;
  const int n = sys.order();
  if (n == 0) {
    out.valid = true;
    out.zero_tail = true;
    out.start = 1;
    return out;
  }
  std::vector<cd> evs;
  try {
    evs = eigenvalues_of(sys.a);
  } catch (const Error&) {
    out.note = "eigenvalue solver failed";
    return out;
  }
  double rho = 0.0;
  for (const cd& v : evs) rho = std::max(rho, std::abs(v));
  const int window = 2 * n + 10;
  const int checked = std::max(window, std::min(limit, 200));
  const std::vector<double> g = impulse_response(sys, checked);
  double gscale = 0.0;
  for (int t = 0; t < window; ++t) gscale = std::max(gscale, std::abs(g[static_cast<std::size_t>(t)]));
  if (gscale == 0.0) {
    out.valid = true;
    out.zero_tail = true;
    out.start = 1;
    out.note = "impulse response vanishes";
    return out;
  }
  for (double factor : {1e-9, 1e-7, 1e-5, 1e-3}) {
    const double tol = factor * std::max(1.0, rho);
    const auto clusters = cluster_eigenvalues(evs, tol);
    const auto terms = fit_modes(clusters, g, window);
    if (terms.empty() || !fit_reproduces(clusters, terms, g)) continue;
    TailCertificate cert = analyse_modes(clusters, terms, gscale, tol, window, limit);
    if (cert.valid) return cert;
    out.note = cert.note;
  }
  if (out.note.empty()) out.note = "impulse response could not be resolved into modes";
  return out;
}

template <class T>
ExtPosVerdict external_positivity(const LtiSystem<T>& sys, ExtPosMode mode, int horizon) {
  if (horizon < 1) throw Error(ErrorCode::PreconditionViolated, "horizon must be positive");
  const bool strict = mode == ExtPosMode::Strict;
  const int n = sys.order();
  ExtPosVerdict v;
  v.horizon = horizon;

  if constexpr (is_exact_v<T>) {
    const auto head = impulse_response(sys, std::max(1, n));
    if (std::all_of(head.begin(), head.end(), [](const T& x) { return is_exact_zero(x); })) {
      v.identically_zero = true;
      v.note = "impulse response is identically zero";
      if (strict) {
        v.status = ExtPosStatus::Violated;
        v.first_violation = Violation{1, "0"};
      } else {
        v.status = ExtPosStatus::NonNegative;
        v.tail_start = 1;
      }
      return v;
    }
  }

  const TailCertificate tail = tail_certificate(sys.to_float(), 10 * horizon + 100);
  const int len = tail.valid ? std::max(horizon, tail.start) : horizon;
  v.horizon = len;
  const auto g = impulse_response(sys, len);

  int eps = 0;
  bool inconclusive = false;
  for (int t = 1; t <= len; ++t) {
    const T& x = g[static_cast<std::size_t>(t - 1)];
    const Sign s = sign_of(x);
    if (s == Sign::Inconclusive) {
      if (!tail.valid || tail.zero_tail || t < tail.start) inconclusive = true;
      continue;
    }
    if (s == Sign::Zero) {
      if (strict) {
        v.status = ExtPosStatus::Violated;
        v.first_violation = Violation{t, render(x)};
        v.sign = eps;
        return v;
      }
      continue;
    }
    const int d = static_cast<int>(s);
    if (eps == 0) eps = d;
    if (d != eps) {
      v.status = ExtPosStatus::Violated;
      v.first_violation = Violation{t, render(x)};
      v.sign = eps;
      return v;
    }
  }
  v.sign = eps;
  if (inconclusive) {
    v.status = ExtPosStatus::Indeterminate;
    v.note = "sample within tolerance of zero";
    return v;
  }
  if (!tail.valid) {
    v.status = ExtPosStatus::VerifiedUpToHorizonOnly;
    v.note = tail.note;
    return v;
  }
  if (tail.zero_tail) {
    if (strict) {
      v.status = ExtPosStatus::VerifiedUpToHorizonOnly;
      v.note = "mode estimate predicts a vanishing tail the samples do not show";
      return v;
    }
    v.status = eps < 0 ? ExtPosStatus::NonPositive : ExtPosStatus::NonNegative;
    v.tail_start = tail.start;
    v.note = tail.note;
    return v;
  }
  if (eps == 0) eps = tail.sign;
  if (tail.sign != eps) {
    v.status = ExtPosStatus::VerifiedUpToHorizonOnly;
    v.note = "mode estimate disagrees with the sampled sign";
    return v;
  }
  v.sign = eps;
  v.tail_start = tail.start;
  if (strict)
    v.status = eps > 0 ? ExtPosStatus::StrictPositive : ExtPosStatus::StrictNegative;
  else
    v.status = eps > 0 ? ExtPosStatus::NonNegative : ExtPosStatus::NonPositive;
  if (tail.degree > 0) v.note = "dominant pole of multiplicity > 1, polynomial growth of degree " + std::to_string(tail.degree);
  return v;
}

template struct LtiSystem<Rational>;
template struct LtiSystem<double>;

#define VBCERT_INSTANTIATE(T)                                                               \
  template std::vector<T> impulse_response<T>(const LtiSystem<T>&, int);                    \
  template Matrix<T> observability_matrix<T>(const Matrix<T>&, std::span<const T>, int);    \
  template ExtPosVerdict external_positivity<T>(const LtiSystem<T>&, ExtPosMode, int);

VBCERT_INSTANTIATE(Rational)
VBCERT_INSTANTIATE(double)

#undef VBCERT_INSTANTIATE

}  // namespace vbcert
