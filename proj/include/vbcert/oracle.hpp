#pragma once

// Sampling-based falsification: feed inputs of bounded variation through a matrix or the
// observability operator and look for outputs whose variation exceeds the bound.
// A clean report never proves anything; a violation replays from (seed, trial).

#include <cstdint>
#include <random>
#include <vector>

#include "vbcert/matrix.hpp"

namespace vbcert {

/// SplitMix64 step; also used to derive per-trial seeds.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Nonzero vector of length m with v_minus <= k: up to k breakpoints, alternating segment
/// signs, log-uniform magnitudes on [1e-3, 1e3], about 10% of entries zeroed.
/// Throws Error(PreconditionViolated) unless 0 <= k <= m - 1.
std::vector<double> sample_bounded_variation(int m, int k, std::mt19937_64& rng);

/// The input drawn by trial `trial` of a run seeded with `seed`.
std::vector<double> replay_input(int m, int k, std::uint64_t seed, std::uint64_t trial);

enum class OracleMode { NonStrict, Strict };  // Strict measures v_plus of the output

struct OracleViolation {
  std::uint64_t trial = 0;
  std::vector<double> input;
  int output_variation = 0;
  std::vector<int> witness_times;  // 1-based positions where the sign changes
  bool suspect = false;            // disappears once near-zero outputs are ignored
};

struct OracleReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int k = 0;
  OracleMode mode = OracleMode::NonStrict;
  std::vector<OracleViolation> violations;  // sorted by trial
  std::uint64_t tail_unresolved = 0;        // operator runs: outputs whose sign is not fixed by the horizon

  std::size_t confirmed() const;
  std::size_t suspects() const { return violations.size() - confirmed(); }
  bool clean() const { return confirmed() == 0; }
};

/// Inputs u with v_minus(u) <= k - 1; a violation is v(Xu) >= k.
OracleReport falsify_matrix_vb(const Matrix<double>& x, int k, std::uint64_t trials, std::uint64_t seed,
                               OracleMode mode = OracleMode::NonStrict, bool parallel = true);

/// Initial states x0 with v_minus(x0) <= k - 1; a violation is v_minus((c A^{t-1} x0)_{t=1..horizon}) >= k.
OracleReport falsify_operator_vb(const Matrix<double>& a, const std::vector<double>& c, int k, int horizon,
                                 std::uint64_t trials, std::uint64_t seed, bool parallel = true);

}  // namespace vbcert
