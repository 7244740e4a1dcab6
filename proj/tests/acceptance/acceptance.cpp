// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "support/oracles.hpp"
#include "vbcert/error.hpp"
#include "vbcert/io.hpp"
#include "vbcert/linalg.hpp"
#include "vbcert/lti.hpp"
#include "vbcert/obsv_cert.hpp"
#include "vbcert/oracle.hpp"
#include "vbcert/signcons.hpp"
#include "vbcert/variation.hpp"

using namespace vbcert;
using namespace testsupport;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fixture(const char* name) { return std::string(VBCERT_FIXTURES) + "/" + name; }

int run_cli(const std::string& args) {
  const int status = std::system((std::string(VBCERT_CLI) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path fresh_dir(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / "vbcert_acceptance" / name;
  std::filesystem::remove_all(dir);
  return dir;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// x rounded to `digits` decimals, half away from zero, scaled to an integer.
mpz_class round_scaled(const Rational& x, int digits) {
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational y = abs(x) * Rational(scale) + Rational(1, 2);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  return sgn(x) < 0 ? mpz_class(-q) : q;
}

Outcome criterion1() {
  Outcome out;
  const auto ex2 = load_system_file(fixture("example2.json"));
  const auto o = observability_matrix(ex2.a, std::span<const Rational>(ex2.c), 3);
  const long printed[3][3] = {{110, 10, -550}, {79, 51, -278}, {63, 46, -198}};
  int mismatches = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) mismatches += round_scaled(o(i, j), 2) != printed[i][j];
  const bool row = o(1, 0) == parse_decimal("0.785") && o(1, 1) == parse_decimal("0.51") && o(1, 2) == parse_decimal("-2.775");
  out.pass = mismatches == 0 && row;
  out.detail = "O_3 rounded entries mismatching: " + std::to_string(mismatches) + ", c A exact: " + (row ? "yes" : "no");
  return out;
}

Outcome criterion2() {
  Outcome out;
  const auto dir = fresh_dir("c2");
  const int code = run_cli("certify " + fixture("example1.json") + " --property kpos --k 2 --horizon 50 --out " + dir.string());
  int traces = 0, nonpositive = 0;
  if (code == 0) {
    const auto report = report_from_json(read_json(dir / "report.json"));
    const auto& cert = std::get<Certificate>(report.result);
    out.pass = cert.conclusion == Conclusion::Certified;
    for (const auto& s : cert.per_system) {
      ++traces;
      const auto values = read_trace_csv(dir / trace_file_name(s));
      for (int t = 1; t <= 10; ++t) nonpositive += sgn(parse_decimal(values[static_cast<std::size_t>(t - 1)])) <= 0;
    }
  }
  out.pass = out.pass && code == 0 && traces == 6 && nonpositive == 0;
  out.detail = "exit " + std::to_string(code) + ", " + std::to_string(traces) + " traces, " + std::to_string(nonpositive) +
               " nonpositive samples for t <= 10";
  return out;
}

Outcome criterion3() {
  Outcome out;
  const auto dir = fresh_dir("c3");
  const int k2 = run_cli("certify " + fixture("example2.json") + " --property svb --k 2 --out " + dir.string());
  std::string claim;
  int sign = 0;
  bool certified = false;
  if (k2 == 0) {
    const auto cert = std::get<Certificate>(report_from_json(read_json(dir / "report.json")).result);
    claim = cert.claim;
    sign = cert.common_sign;
    certified = cert.conclusion == Conclusion::Certified;
  }
  const int k1 = run_cli("certify " + fixture("example2.json") + " --property svb --k 1");
  out.pass = k2 == 0 && certified && claim == "SVB_1" && sign != 0 && k1 == 1;
  out.detail = "k=2 exit " + std::to_string(k2) + " (" + claim + ", sign " + std::to_string(sign) + "), k=1 exit " + std::to_string(k1);
  return out;
}

Outcome criterion4() {
  Outcome out;
  const auto f = load_system_file(fixture("example3.json"));
  const LtiSystem<Rational> bar(f.a, *f.b, f.c);
  const auto g = impulse_response(bar, 21);
  const double theta = std::numbers::pi / std::sqrt(2.0);
  double worst = 0;
  for (int t = 1; t <= 20; ++t) {
    const double closed = t / 2.0 + 0.002 * std::cos(theta * (t - 1)) + t * t / 2.0 + 2.0;
    worst = std::max(worst, std::abs(to_double(g[static_cast<std::size_t>(t - 1)]) - closed));
  }
  int nonnegative = 0;
  for (int t = 2; t <= 20; ++t) {
    const auto i = static_cast<std::size_t>(t - 1);
    nonnegative += sgn(g[i - 1] * g[i + 1] - g[i] * g[i]) >= 0;
  }
  const bool hankel = truncated_hankel_check(bar, 2, 6, 5).pass;
  const bool screen = eigen_necessary_check(f.a, 2).pass;
  out.pass = worst <= 1e-9 && nonnegative == 0 && hankel && !screen;
  std::ostringstream s;
  s << "closed-form max error " << worst << ", nonnegative g2 samples " << nonnegative << ", reversed Hankel SR_2 "
    << (hankel ? "pass" : "fail") << ", eigen screen " << (screen ? "pass" : "fail");
  out.detail = s.str();
  return out;
}

Outcome criterion5() {
  Outcome out;
  Rng rng(0xACCE55);
  long checks = 0, mismatches = 0;
  for (int pair = 0; pair < 50; ++pair) {
    const int n = 1 + pair % 4;
    const auto p = random_observable_pair(rng, static_cast<std::size_t>(n));
    const auto on = naive_observability(p.a, p.c, n + 8);
    for (int k = 1; k <= n; ++k)
      for (int r = 1; r <= k; ++r)
        for (const auto& beta : subsets(n, k)) {
          const auto g = impulse_response(thm2_system(p.a, p.c, k, r, IndexTuple(n, beta)).base, 6);
          for (int t = 1; t <= 6; ++t) {
            std::vector<int> alpha = range(1, k - r);
            for (int i = k - r + t; i <= k + t - 1; ++i) alpha.push_back(i);
            ++checks;
            mismatches += g[static_cast<std::size_t>(t - 1)] != direct_minor(on, alpha, beta);
          }
        }
  }
  out.pass = mismatches == 0 && checks > 0;
  out.detail = std::to_string(checks) + " identities, " + std::to_string(mismatches) + " mismatches";
  return out;
}

Outcome criterion6() {
  Outcome out;
  Rng rng(0x6E6A);
  int strict_cmp = 0, strict_disagree = 0, nonstrict_pass = 0, nonstrict_bad = 0, not_applicable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = trial % 4 == 3 ? sparse_tn_matrix(rng, 6, 3) : mixed_tall_matrix(rng, 6, 3);
    for (int k = 1; k <= 3; ++k) {
      ++strict_cmp;
      strict_disagree += reduced_check(x, k, true).pass != sign_consistent(x, k, true).pass;
      try {
        if (reduced_check(x, k, false).pass) {
          ++nonstrict_pass;
          nonstrict_bad += !sign_consistent(x, k, false).pass;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PreconditionViolated) throw;
        ++not_applicable;
      }
    }
  }
  out.pass = strict_disagree == 0 && nonstrict_bad == 0;
  out.detail = std::to_string(strict_cmp) + " strict comparisons, " + std::to_string(strict_disagree) + " disagreements; " +
               std::to_string(nonstrict_pass) + " non-strict passes, " + std::to_string(nonstrict_bad) +
               " counterexamples; " + std::to_string(not_applicable) + " non-strict cases outside the reduced-family hypothesis";
  return out;
}

Outcome criterion7() {
  Outcome out;
  Rng rng(0x55C5);
  int ssc_matrices = 0, ssc_violations = 0, suspects = 0, construct_fail = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 3 + static_cast<std::size_t>(trial % 2);
    const auto p = positive_bidiagonal_product(rng, 6);
    Matrix<double> f(6, m);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < m; ++j) f(i, j) = to_double(p(i, j));
    const Matrix<double> x = gauss_smoother(6, rng.uniform(1.0, 3.0)) * f;
    for (int k = 1; k <= static_cast<int>(m); ++k) {
      if (!sign_consistent(x, k, true).pass) {
        ++construct_fail;
        continue;
      }
      ++ssc_matrices;
      const auto rep = falsify_matrix_vb(x, k, 1000, 7000 + static_cast<std::uint64_t>(trial * 8 + k), OracleMode::Strict);
      ssc_violations += static_cast<int>(rep.confirmed());
      suspects += static_cast<int>(rep.suspects());
    }
  }
  int mixed = 0, caught = 0;
  for (int trial = 0; mixed < 120 && trial < 2000; ++trial) {
    const auto x = random_matrix(rng, 6, 3, -5, 5, 2);
    const int k = 1 + trial % 3;
    const MinorSigns s = minor_signs(x, k);
    if (s.positive == 0 || s.negative == 0) continue;
    ++mixed;
    caught += !falsify_matrix_vb(x.cast<double>(), k, 1000, 9000 + static_cast<std::uint64_t>(trial)).clean();
  }
  const double rate = mixed ? static_cast<double>(caught) / mixed : 0.0;
  out.pass = ssc_matrices > 0 && ssc_violations == 0 && construct_fail == 0 && mixed > 0 && rate >= 0.95;
  std::ostringstream d;
  d << ssc_matrices << " SSC cases, " << ssc_violations << " violations (" << suspects << " suspect), " << construct_fail
    << " construction failures; mixed detection " << caught << "/" << mixed;
  out.detail = d.str();
  return out;
}

Outcome criterion8() {
  Outcome out;
  Rng rng(0x88);
  long failures = 0, checks = 0;
  // Cauchy-Binet over every size triple up to 5
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t p = 1; p <= 5; ++p)
      for (std::size_t m = 1; m <= 5; ++m)
        for (int rep = 0; rep < 2; ++rep) {
          const auto f = random_matrix(rng, n, p), g = random_matrix(rng, p, m);
          for (int r = 1; r <= static_cast<int>(std::min({n, p, m})); ++r) {
            ++checks;
            failures += compound(matmul(f, g), r) != matmul(compound(f, r), compound(g, r));
          }
        }
  // compound spectrum, distinct real eigenvalues, 4x4
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long> twice;
    while (twice.size() < 4) {
      const long v = rng.uniform_int(-12, 12);
      if (v != 0 && std::find(twice.begin(), twice.end(), v) == twice.end()) twice.push_back(v);
    }
    const auto s = random_matrix(rng, 4, 4, -3, 3, 1);
    if (sgn(cofactor_det(s)) == 0) continue;
    Matrix<Rational> d(4, 4);
    for (std::size_t i = 0; i < 4; ++i) d(i, i) = Rational(twice[i], 2);
    const auto x = matmul(s, matmul(d, inverse(s)));
    for (int r = 1; r <= 4; ++r) {
      std::vector<double> expected, got;
      for (const auto& sub : subsets(4, r)) {
        double prod = 1;
        for (int i : sub) prod *= twice[static_cast<std::size_t>(i - 1)] / 2.0;
        expected.push_back(prod);
      }
      for (const auto& z : eigen_sorted(compound(x, r)).eigenvalues) got.push_back(z.real());
      std::sort(expected.begin(), expected.end());
      std::sort(got.begin(), got.end());
      ++checks;
      bool ok = got.size() == expected.size();
      for (std::size_t i = 0; ok && i < got.size(); ++i) ok = std::abs(got[i] - expected[i]) <= 1e-8 * std::max(1.0, std::abs(expected[i]));
      failures += !ok;
    }
  }
  // compound of the inverse
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_matrix(rng, 4, 4);
    if (sgn(cofactor_det(x)) == 0) continue;
    for (int r = 1; r <= 4; ++r) {
      ++checks;
      failures += compound(inverse(x), r) != inverse(compound(x, r));
    }
  }
  // rank collapse, k <= 3
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + trial % 3;
    const auto n = static_cast<std::size_t>(rng.uniform_int(k, 5)), m = static_cast<std::size_t>(rng.uniform_int(k, 5));
    const auto x = matmul(random_matrix(rng, n, static_cast<std::size_t>(k)), random_matrix(rng, static_cast<std::size_t>(k), m));
    if (rank(x) != k) continue;
    ++checks;
    failures += rank(compound(x, k)) != 1;
  }
  // Desnanot-Jacobi on 4x4 with nonsingular interior
  for (int trial = 0; trial < 60; ++trial) {
    const auto x = random_matrix(rng, 4, 4);
    const Rational interior = direct_minor(x, {2, 3}, {2, 3});
    if (sgn(interior) == 0) continue;
    const Rational rhs = direct_minor(x, {1, 2, 3}, {1, 2, 3}) * direct_minor(x, {2, 3, 4}, {2, 3, 4}) -
                         direct_minor(x, {1, 2, 3}, {2, 3, 4}) * direct_minor(x, {2, 3, 4}, {1, 2, 3});
    ++checks;
    failures += det(x) * interior != rhs;
  }
  out.pass = failures == 0;
  out.detail = std::to_string(checks) + " identity checks, " + std::to_string(failures) + " failures";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "example2 observability matrix", 1, criterion1},
      {2, "example1 k-positivity certificate", 5, criterion2},
      {3, "example2 strict variation bound certificates", 5, criterion3},
      {4, "example3 pipeline", 5, criterion4},
      {5, "compound system defining identity", 60, criterion5},
      {6, "reduced family equivalence", 30, criterion6},
      {7, "sign consistency versus sampled variation bounds", 60, criterion7},
      {8, "kernel identities", 30, criterion8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s criterion %d: %s: %s; %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.limit_s, in_time ? "" : " over time");
  }
  return failed == 0 ? 0 : 1;
}
