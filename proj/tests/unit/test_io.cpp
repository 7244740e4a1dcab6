#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>

#include "vbcert/error.hpp"
#include "vbcert/io.hpp"

using namespace vbcert;

namespace {

std::string fixture(const char* name) { return std::string(VBCERT_FIXTURES) + "/" + name; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Parse;
}

std::filesystem::path scratch(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / "vbcert_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("fixtures load exactly") {
    const auto ex1 = load_system_file(fixture("example1.json"));
    CHECK(ex1.name == "example1");
    CHECK(ex1.a.rows() == 3);
    CHECK(ex1.a(0, 0) == Rational(-6, 5));
    CHECK(ex1.c[0] == Rational(29, 25));
    CHECK_FALSE(ex1.b.has_value());
    CHECK(ex1.warnings.empty());

    const auto ex3 = load_system_file(fixture("example3.json"));
    REQUIRE(ex3.b.has_value());
    CHECK(ex3.b->size() == 5);
    CHECK(ex3.c[3] == Rational(1, 1000));

    const auto pena = load_matrix_file(fixture("pena4x2.json"));
    CHECK(pena.x.rows() == 4);
    CHECK(pena.x(3, 1) == Rational(4));
  }

  TEST_CASE("numeric entries are accepted with a warning") {
    const Json j = Json::parse(R"({"name":"n","A":[[0.5]],"c":[1]})");
    const auto f = parse_system_file(j);
    CHECK(f.a(0, 0) == Rational(1, 2));
    CHECK(f.warnings.size() == 2);
    const auto m = parse_matrix_file(Json::parse(R"({"X":[["0.1", 0.25]]})"));
    CHECK(m.x(0, 1) == Rational(1, 4));
    CHECK(m.warnings.size() == 1);
  }

  TEST_CASE("malformed input") {
    CHECK(code_of([] { load_matrix_file(fixture("empty.json")); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_system_file(Json::parse(R"({"A":[["1","2"]],"c":["1","1"]})")); }) == ErrorCode::NonSquare);
    CHECK(code_of([] { parse_system_file(Json::parse(R"({"A":[["1"]],"c":["1","1"]})")); }) == ErrorCode::SizeMismatch);
    CHECK(code_of([] { parse_system_file(Json::parse(R"({"A":[["1"]]})")); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_system_file(Json::parse(R"({"A":[["x"]],"c":["1"]})")); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_matrix_file(Json::parse(R"({"X":[["1","2"],["1"]]})")); }) != ErrorCode::NonSquare);
    CHECK(code_of([] { parse_matrix_file(Json::parse(R"({"X":[[true]]})")); }) == ErrorCode::Parse);
    CHECK(code_of([] { read_json(fixture("does_not_exist.json")); }) == ErrorCode::Parse);
    const auto bad = scratch("bad.json");
    std::ofstream(bad) << "{ not json";
    CHECK(code_of([&] { read_json(bad); }) == ErrorCode::Parse);
  }

  TEST_CASE("index tuples round-trip") {
    const IndexTuple t(5, {2, 4});
    const Json j = to_json(t);
    CHECK(j.at("n") == 5);
    CHECK(index_tuple_from_json(j) == t);
  }

  TEST_CASE("certificate reports round-trip") {
    const auto ex2 = load_system_file(fixture("example2.json"));
    for (int k : {1, 2}) {
      const Certificate c = certify_svb(ex2.a, ex2.c, k, 20);
      const Json j = to_json(c);
      CHECK(to_json(certificate_from_json(j)) == j);
      ReportFile r;
      r.environment.command = "certify";
      r.environment.input = "example2.json";
      r.environment.k = k;
      r.environment.property = "svb";
      r.environment.target = "obsv";
      r.environment.horizon = 20;
      r.result = c;
      for (const auto& s : c.per_system) r.traces.push_back(trace_file_name(s));
      const Json rj = to_json(r);
      const ReportFile back = report_from_json(rj);
      CHECK(to_json(back) == rj);
      CHECK(std::holds_alternative<Certificate>(back.result));
      CHECK(std::get<Certificate>(back.result).conclusion == c.conclusion);
    }
  }

  TEST_CASE("matrix, variation, diminishing and oracle reports round-trip") {
    const auto pena = load_matrix_file(fixture("pena4x2.json")).x;
    const auto o3 = load_matrix_file(fixture("example2_o3.json")).x;
    for (const auto& m : {sign_consistent(pena, 2, true), sign_consistent(o3, 1, false)}) {
      const Json j = to_json(m);
      CHECK(to_json(matrix_check_from_json(j)) == j);
      ReportFile r;
      r.environment.command = "check-matrix";
      r.result = m;
      CHECK(to_json(report_from_json(to_json(r))) == to_json(r));
    }
    const Json v = to_json(vb_matrix_check(pena, 2));
    CHECK(to_json(variation_check_from_json(v)) == v);
    const Json d = to_json(vd_matrix_check(pena, 2));
    CHECK(to_json(diminishing_check_from_json(d)) == d);

    Matrix<double> x(3, 2);
    x(0, 0) = 1, x(0, 1) = -1, x(1, 0) = -1, x(1, 1) = 1, x(2, 0) = 1, x(2, 1) = -1;
    const auto rep = falsify_matrix_vb(x, 1, 50, 9);
    REQUIRE_FALSE(rep.violations.empty());
    const Json o = to_json(rep);
    CHECK(to_json(oracle_report_from_json(o)) == o);
    const auto back = oracle_report_from_json(o);
    CHECK(back.violations.front().input == rep.violations.front().input);

    ReportFile r;
    r.environment.command = "oracle";
    r.environment.seed = 9;
    r.environment.trials = 50;
    r.environment.backend = Backend::Float;
    r.result = rep;
    const auto rr = report_from_json(to_json(r));
    CHECK(rr.environment.seed == std::optional<std::uint64_t>(9));
    CHECK(rr.environment.backend == Backend::Float);
    CHECK(code_of([] { report_from_json(Json::parse(R"({"environment":{},"result":{"kind":"nope"}})")); }) == ErrorCode::Parse);
  }

  TEST_CASE("trace files") {
    SystemVerdict s;
    s.r = 2;
    s.beta = IndexTuple(3, {1, 3});
    CHECK(trace_file_name(s) == "trace_r2_beta1-3.csv");
    s.factor = "ctrb";
    CHECK(trace_file_name(s) == "ctrb_trace_r2_beta1-3.csv");

    const std::vector<std::string> values{"1", "-3/4", "0.078"};
    const auto p = scratch("trace.csv");
    write_trace_csv(p, values);
    CHECK(read_trace_csv(p) == values);
    std::ifstream in(p);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,g");

    const auto bad = scratch("bad.csv");
    std::ofstream(bad) << "x,y\n1,2\n";
    CHECK(code_of([&] { read_trace_csv(bad); }) == ErrorCode::Parse);
  }
}
