#include "vbcert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>

#include "vbcert/error.hpp"
#include "vbcert/lti.hpp"
#include "vbcert/variation.hpp"

namespace vbcert {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t s = seed ^ (trial * 0xD1B54A32D192ED03ULL);
  splitmix64(s);
  return splitmix64(s);
}

std::vector<double> sample_bounded_variation(int m, int k, std::mt19937_64& rng) {
  if (m < 1 || k < 0 || k > m - 1)
    throw Error(ErrorCode::PreconditionViolated,
                "need 0 <= k <= m - 1, got m = " + std::to_string(m) + ", k = " + std::to_string(k));
  std::uniform_int_distribution<int> breaks_dist(0, k);
  std::uniform_real_distribution<double> log_mag(std::log(1e-3), std::log(1e3));
  std::bernoulli_distribution zero_dist(0.1), sign_dist(0.5);

  const int breaks = breaks_dist(rng);
  std::vector<int> cuts;  // segment starts after position 0
  std::vector<int> pool(static_cast<std::size_t>(m - 1));
  for (int i = 0; i < m - 1; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(pool.begin(), pool.end(), rng);
  cuts.assign(pool.begin(), pool.begin() + breaks);
  std::sort(cuts.begin(), cuts.end());

  std::vector<double> u(static_cast<std::size_t>(m));
  double sign = sign_dist(rng) ? 1.0 : -1.0;
  std::size_t next = 0;
  for (int i = 0; i < m; ++i) {
    if (next < cuts.size() && cuts[next] == i) {
      sign = -sign;
      ++next;
    }
    u[static_cast<std::size_t>(i)] = zero_dist(rng) ? 0.0 : sign * std::exp(log_mag(rng));
  }
  if (std::all_of(u.begin(), u.end(), [](double v) { return v == 0.0; }))
    u[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, m - 1)(rng))] = sign * std::exp(log_mag(rng));
  return u;
}

std::vector<double> replay_input(int m, int k, std::uint64_t seed, std::uint64_t trial) {
  std::mt19937_64 rng(trial_seed(seed, trial));
  return sample_bounded_variation(m, k, rng);
}

std::size_t OracleReport::confirmed() const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [](const OracleViolation& v) { return !v.suspect; }));
}

namespace {

std::vector<int> change_points(std::span<const double> y, double threshold) {
  std::vector<int> out;
  int last = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const int s = y[i] > threshold ? 1 : (y[i] < -threshold ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) out.push_back(static_cast<int>(i) + 1);
    last = s;
  }
  return out;
}

double scale_of(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s = std::max(s, std::abs(v));
  return s;
}

// Variation below k (no violation) / at least k measured with a tight and a loose zero threshold.
std::optional<OracleViolation> judge_output(std::span<const double> y, int k, OracleMode mode) {
  const double scale = scale_of(y);
  const double tight = 1e-12 * scale;
  const double loose = 1e-8 * scale;
  auto measure = [&](double thr) {
    return mode == OracleMode::Strict ? v_plus(y, thr).value : v_minus(y, thr).value;
  };
  const int tight_var = measure(tight);
  if (tight_var < k) return std::nullopt;
  OracleViolation v;
  v.output_variation = tight_var;
  v.witness_times = change_points(y, tight);
  v.suspect = measure(loose) < k;
  return v;
}

template <class Trial>
OracleReport run_trials(int k, OracleMode mode, std::uint64_t trials, std::uint64_t seed, bool parallel, Trial&& trial) {
  OracleReport report;
  report.trials = trials;
  report.seed = seed;
  report.k = k;
  report.mode = mode;
  const auto count = static_cast<long long>(trials);
  std::vector<std::optional<OracleViolation>> found(static_cast<std::size_t>(trials));
  std::vector<char> unresolved(static_cast<std::size_t>(trials), 0);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (long long i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    bool tail_open = false;
    found[idx] = trial(static_cast<std::uint64_t>(i), tail_open);
    unresolved[idx] = tail_open ? 1 : 0;
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (unresolved[i]) ++report.tail_unresolved;
    if (found[i]) report.violations.push_back(std::move(*found[i]));
  }
  return report;
}

}  // namespace

OracleReport falsify_matrix_vb(const Matrix<double>& x, int k, std::uint64_t trials, std::uint64_t seed,
                               OracleMode mode, bool parallel) {
  const int m = static_cast<int>(x.cols());
  if (k < 1) throw Error(ErrorCode::RankOutOfRange, "variation bound order must be at least 1");
  const int in_k = std::min(k - 1, m - 1);
  return run_trials(k, mode, trials, seed, parallel, [&](std::uint64_t t, bool&) -> std::optional<OracleViolation> {
    std::vector<double> u = replay_input(m, in_k, seed, t);
    std::vector<double> y(x.rows(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) y[i] += x(i, j) * u[j];
    auto v = judge_output(y, k, mode);
    if (v) {
      v->trial = t;
      v->input = std::move(u);
    }
    return v;
  });
}

OracleReport falsify_operator_vb(const Matrix<double>& a, const std::vector<double>& c, int k, int horizon,
                                 std::uint64_t trials, std::uint64_t seed, bool parallel) {
  if (!a.square()) throw Error(ErrorCode::NonSquare, "system matrix is " + a.shape());
  if (c.size() != a.rows()) throw Error(ErrorCode::SizeMismatch, "output row length");
  if (k < 1) throw Error(ErrorCode::RankOutOfRange, "variation bound order must be at least 1");
  if (horizon < 1) throw Error(ErrorCode::PreconditionViolated, "horizon must be positive");
  const int n = static_cast<int>(a.rows());
  const int in_k = std::min(k - 1, n - 1);
  return run_trials(k, OracleMode::NonStrict, trials, seed, parallel,
                    [&](std::uint64_t t, bool& tail_open) -> std::optional<OracleViolation> {
                      std::vector<double> x0 = replay_input(n, in_k, seed, t);
                      const LtiSystem<double> sys(a, x0, c);
                      const std::vector<double> y = impulse_response(sys, horizon);
                      const TailCertificate tail = tail_certificate(sys, horizon);
                      tail_open = !tail.valid;
                      auto v = judge_output(y, k, OracleMode::NonStrict);
                      if (v) {
                        v->trial = t;
                        v->input = std::move(x0);
                      }
                      return v;
                    });
}

}  // namespace vbcert
