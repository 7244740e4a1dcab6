#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "support/oracles.hpp"
#include "vbcert/error.hpp"
#include "vbcert/linalg.hpp"
#include "vbcert/lti.hpp"

using namespace vbcert;
using namespace testsupport;

namespace {

Matrix<Rational> Q(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<std::string>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return parse_matrix(r);
}

const Matrix<Rational> kPena = Q({{"1", "1"}, {"1", "2"}, {"1", "3"}, {"1", "4"}});

}  // namespace

TEST_SUITE("scalar") {
  TEST_CASE("decimal parsing is exact") {
    CHECK(parse_decimal("-1.20") == Rational(-6, 5));
    CHECK(parse_decimal("2.5e-3") == Rational(1, 400));
    CHECK(parse_decimal("7/4") == Rational(7, 4));
    CHECK(parse_decimal("0.1") + parse_decimal("0.2") == parse_decimal("0.3"));
    CHECK_THROWS_AS(parse_decimal("1.2.3"), Error);
    CHECK_THROWS_AS(parse_decimal(""), Error);
  }

  TEST_CASE("float sign classification uses the tolerance") {
    ScopedTolerance tol(1e-9);
    CHECK(sign_of(1e-8) == Sign::Positive);
    CHECK(sign_of(-1e-8) == Sign::Negative);
    CHECK(sign_of(1e-10) == Sign::Inconclusive);
    CHECK(sign_of(0.0) == Sign::Inconclusive);
    CHECK(sign_of(Rational(0)) == Sign::Zero);
  }

  TEST_CASE("rounding half away from zero") {
    CHECK(round_decimal(parse_decimal("0.785"), 2) == parse_decimal("0.79"));
    CHECK(round_decimal(parse_decimal("-2.775"), 2) == parse_decimal("-2.78"));
    CHECK(round_decimal(parse_decimal("-1.975"), 2) == parse_decimal("-1.98"));
    CHECK(to_decimal_string(parse_decimal("0.46425"), 30) == "0.46425");
  }
}

TEST_SUITE("index_tuple") {
  TEST_CASE("lex_tuples") {
    const auto t32 = lex_tuples(3, 2);
    REQUIRE(t32.size() == 3);
    CHECK(as_vector(t32[0]) == std::vector<int>{1, 2});
    CHECK(as_vector(t32[1]) == std::vector<int>{1, 3});
    CHECK(as_vector(t32[2]) == std::vector<int>{2, 3});
    const auto t41 = lex_tuples(4, 1);
    REQUIRE(t41.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(as_vector(t41[static_cast<std::size_t>(i)]) == std::vector<int>{i + 1});
    const auto t44 = lex_tuples(4, 4);
    REQUIRE(t44.size() == 1);
    CHECK(as_vector(t44[0]) == std::vector<int>{1, 2, 3, 4});
    CHECK_THROWS_AS(lex_tuples(3, 0), Error);
    CHECK_THROWS_AS(lex_tuples(3, 4), Error);
  }

  TEST_CASE("lex_tuples agrees with an odometer enumeration") {
    for (int n = 1; n <= 7; ++n)
      for (int r = 1; r <= n; ++r) {
        const auto lib = lex_tuples(n, r);
        const auto ref = subsets(n, r);
        REQUIRE(lib.size() == ref.size());
        for (std::size_t i = 0; i < lib.size(); ++i) CHECK(as_vector(lib[i]) == ref[i]);
      }
  }

  TEST_CASE("rank and unrank are inverse") {
    for (int n = 1; n <= 8; ++n)
      for (int r = 1; r <= n; ++r)
        for (std::size_t i = 1; i <= binomial(n, r); ++i) {
          const IndexTuple t = IndexTuple::unrank(n, r, i);
          REQUIRE(t.lex_rank() == i);
        }
  }

  TEST_CASE("validation and helpers") {
    CHECK_THROWS_AS(IndexTuple(4, {2, 2}), Error);
    CHECK_THROWS_AS(IndexTuple(4, {3, 1}), Error);
    CHECK_THROWS_AS(IndexTuple(4, {0, 1}), Error);
    CHECK_THROWS_AS(IndexTuple(4, {1, 5}), Error);
    const IndexTuple t(5, {1, 3});
    CHECK(as_vector(t.complement()) == std::vector<int>{2, 4, 5});
    CHECK(t.to_string() == "{1,3}");
    CHECK(t.to_slug() == "1-3");
    CHECK_FALSE(t.is_consecutive());
    CHECK(IndexTuple::consecutive(5, 2, 3).is_consecutive());
    CHECK(as_vector(merge(IndexTuple(5, {1, 4}), IndexTuple(5, {2}))) == std::vector<int>{1, 2, 4});
    CHECK(binomial(8, 4) == 70);
  }
}

TEST_SUITE("linalg") {
  TEST_CASE("determinant examples") {
    CHECK(det(Q({{"1", "1"}, {"1", "2"}})) == 1);
    CHECK(det(Matrix<Rational>::identity(3)) == 1);
    CHECK_THROWS_AS(det(kPena), Error);
  }

  TEST_CASE("determinant of example2's O_3 against cofactor expansion") {
    const auto a = Q({{"0.7", "0.6", "-2"}, {"0.15", "0.15", "-0.25"}, {"0", "0.03", "0.1"}});
    const std::vector<Rational> c = parse_vector({"1.1", "0.1", "-5.5"});
    const auto o = naive_observability(a, c, 3);
    CHECK(det(o) == cofactor_det(o));
    CHECK(sgn(det(o)) != 0);
  }

  TEST_CASE("Bareiss agrees with cofactor expansion on random matrices") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
      Matrix<Rational> x = random_matrix(rng, n, n);
      if (rng.coin(0.2) && n > 1) // force a singular case
        for (std::size_t j = 0; j < n; ++j) x(n - 1, j) = x(0, j) * 2;
      REQUIRE(det(x) == cofactor_det(x));
    }
  }

  TEST_CASE("float determinant close to exact") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = random_matrix(rng, 4, 4);
      CHECK(det(x.cast<double>()) == doctest::Approx(to_double(det(x))).epsilon(1e-9));
    }
  }

  TEST_CASE("minors") {
    CHECK(minor_det(kPena, IndexTuple(4, {1, 2}), IndexTuple(2, {1, 2})) == 1);
    CHECK(minor_det(Matrix<Rational>::identity(4), IndexTuple(4, {1, 3}), IndexTuple(4, {1, 3})) == 1);
    CHECK(minor_det(kPena, IndexTuple(4, {3, 4}), IndexTuple(2, {1, 2})) == 1);
    CHECK_THROWS_AS(minor_det(kPena, IndexTuple(4, {1, 2}), IndexTuple(2, {1})), Error);
    CHECK_THROWS_AS(minor_det(kPena, IndexTuple(5, {1, 5}), IndexTuple(2, {1, 2})), Error);
  }

  TEST_CASE("compound layout is lexicographic") {
    Rng rng(13);
    const auto x = random_matrix(rng, 3, 3);
    const auto c2 = compound(x, 2);
    REQUIRE(c2.rows() == 3);
    REQUIRE(c2.cols() == 3);
    CHECK(c2(0, 1) == direct_minor(x, {1, 2}, {1, 3}));
    const auto rs = subsets(3, 2);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(c2(i, j) == direct_minor(x, rs[i], rs[j]));
  }

  TEST_CASE("compound of identity") {
    for (int n = 1; n <= 6; ++n)
      for (int r = 1; r <= n; ++r)
        CHECK(compound(Matrix<Rational>::identity(static_cast<std::size_t>(n)), r) ==
              Matrix<Rational>::identity(binomial(n, r)));
    CHECK_THROWS_AS(compound(Matrix<Rational>::identity(3), 0), Error);
    CHECK_THROWS_AS(compound(Matrix<Rational>::identity(3), 4), Error);
  }

  TEST_CASE("parallel compound matches the serial reference and direct minors") {
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
      const auto r = static_cast<std::size_t>(rng.uniform_int(1, 6));
      const auto c = static_cast<std::size_t>(rng.uniform_int(1, 6));
      const auto x = random_matrix(rng, r, c);
      for (int k = 1; k <= static_cast<int>(std::min(r, c)); ++k) {
        const auto fast = compound(x, k);
        REQUIRE(fast == compound_reference(x, k));
        const auto rs = subsets(static_cast<int>(r), k), cs = subsets(static_cast<int>(c), k);
        for (std::size_t i = 0; i < rs.size(); ++i)
          for (std::size_t j = 0; j < cs.size(); ++j) REQUIRE(fast(i, j) == direct_minor(x, rs[i], cs[j]));
      }
    }
  }

  TEST_CASE("Cauchy-Binet") {
    Rng rng(15);
    for (int trial = 0; trial < 40; ++trial) {
      const auto n = static_cast<std::size_t>(rng.uniform_int(1, 5));
      const auto p = static_cast<std::size_t>(rng.uniform_int(1, 5));
      const auto m = static_cast<std::size_t>(rng.uniform_int(1, 5));
      const auto f = random_matrix(rng, n, p), g = random_matrix(rng, p, m);
      for (int r = 1; r <= static_cast<int>(std::min({n, p, m})); ++r)
        REQUIRE(compound(matmul(f, g), r) == matmul(compound(f, r), compound(g, r)));
    }
  }

  TEST_CASE("inverse") {
    CHECK(inverse(Matrix<Rational>::identity(3)) == Matrix<Rational>::identity(3));
    CHECK(inverse(Q({{"2", "-1"}, {"-1", "1"}})) == Q({{"1", "1"}, {"1", "2"}}));
    CHECK_THROWS_AS(inverse(Q({{"1", "2"}, {"2", "4"}})), Error);
    Rng rng(16);
    for (int trial = 0; trial < 30; ++trial) {
      const auto x = random_matrix(rng, 4, 4);
      if (sgn(cofactor_det(x)) == 0) continue;
      REQUIRE(matmul(x, inverse(x)) == Matrix<Rational>::identity(4));
      REQUIRE(compound(inverse(x), 2) == inverse(compound(x, 2)));
    }
  }

  TEST_CASE("rank and rank collapse of compounds") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
      const int k = rng.uniform_int(1, 3);
      const auto n = static_cast<std::size_t>(rng.uniform_int(k, 5));
      const auto m = static_cast<std::size_t>(rng.uniform_int(k, 5));
      Matrix<Rational> f = random_matrix(rng, n, static_cast<std::size_t>(k));
      Matrix<Rational> g = random_matrix(rng, static_cast<std::size_t>(k), m);
      const auto x = matmul(f, g);
      if (rank(x) != k) continue;
      REQUIRE(rank(compound(x, k)) == 1);
      if (k < static_cast<int>(std::min(n, m))) REQUIRE(rank(compound(x, k + 1)) == 0);
    }
    CHECK(rank(kPena) == 2);
    CHECK(rank(Matrix<Rational>(3, 3)) == 0);
  }

  TEST_CASE("Desnanot-Jacobi identity") {
    Rng rng(18);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto x = random_matrix(rng, 4, 4);
      const Rational interior = direct_minor(x, {2, 3}, {2, 3});
      if (sgn(interior) == 0) continue;
      const Rational lhs = det(x) * interior;
      const Rational rhs = minor_det(x, IndexTuple(4, {1, 2, 3}), IndexTuple(4, {1, 2, 3})) *
                               minor_det(x, IndexTuple(4, {2, 3, 4}), IndexTuple(4, {2, 3, 4})) -
                           minor_det(x, IndexTuple(4, {1, 2, 3}), IndexTuple(4, {2, 3, 4})) *
                               minor_det(x, IndexTuple(4, {2, 3, 4}), IndexTuple(4, {1, 2, 3}));
      REQUIRE(lhs == rhs);
      ++checked;
    }
    CHECK(checked > 50);
  }

  TEST_CASE("compound spectrum is the set of r-fold eigenvalue products") {
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
      // S diag(l) S^{-1} with distinct real eigenvalues
      std::vector<double> lambda;
      while (lambda.size() < 4) {
        const double v = rng.uniform_int(-12, 12) / 2.0;
        if (std::find(lambda.begin(), lambda.end(), v) == lambda.end() && v != 0.0) lambda.push_back(v);
      }
      Matrix<Rational> s = random_matrix(rng, 4, 4, -3, 3, 1);
      if (sgn(cofactor_det(s)) == 0) continue;
      Matrix<Rational> d(4, 4);
      for (std::size_t i = 0; i < 4; ++i) d(i, i) = Rational(static_cast<long>(lambda[i] * 2), 2);
      const auto x = matmul(s, matmul(d, inverse(s)));
      for (int r = 1; r <= 4; ++r) {
        std::vector<double> expected;
        for (const auto& sub : subsets(4, r)) {
          double p = 1.0;
          for (int i : sub) p *= lambda[static_cast<std::size_t>(i - 1)];
          expected.push_back(p);
        }
        std::vector<double> got;
        for (const auto& z : eigen_sorted(compound(x, r)).eigenvalues) {
          REQUIRE(std::abs(z.imag()) < 1e-8 * std::max(1.0, std::abs(z)));
          got.push_back(z.real());
        }
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i)
          REQUIRE(std::abs(got[i] - expected[i]) <= 1e-8 * std::max(1.0, std::abs(expected[i])));
      }
    }
  }

  TEST_CASE("power and select_columns") {
    const auto a = Q({{"1", "1"}, {"0", "1"}});
    CHECK(power(a, 0) == Matrix<Rational>::identity(2));
    CHECK(power(a, 5) == Q({{"1", "5"}, {"0", "1"}}));
    CHECK(select_columns(kPena, IndexTuple(2, {2})) == Q({{"1"}, {"2"}, {"3"}, {"4"}}));
  }
}
