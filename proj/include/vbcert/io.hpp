#pragma once

// JSON system/matrix files, report serialization and CSV traces.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vbcert/matrix.hpp"
#include "vbcert/obsv_cert.hpp"
#include "vbcert/oracle.hpp"
#include "vbcert/signcons.hpp"

namespace vbcert {

using Json = nlohmann::json;

/// {"name", "A": [[...]], "b"?: [...], "c": [...], "notes"?}. Entries are decimal strings;
/// JSON numbers are accepted and recorded in `warnings`.
struct SystemFile {
  std::string name;
  Matrix<Rational> a;
  std::optional<std::vector<Rational>> b;
  std::vector<Rational> c;
  std::string notes;
  std::vector<std::string> warnings;
};

/// {"name", "X": [[...]], "notes"?}
struct MatrixFile {
  std::string name;
  Matrix<Rational> x;
  std::string notes;
  std::vector<std::string> warnings;
};

/// Throws Error(Parse) on malformed content, Error(SizeMismatch / NonSquare) on bad shapes.
SystemFile parse_system_file(const Json& j);
MatrixFile parse_matrix_file(const Json& j);
SystemFile load_system_file(const std::filesystem::path& path);
MatrixFile load_matrix_file(const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);

struct Environment {
  std::string command;
  std::string input;
  Backend backend = Backend::Exact;
  double tol = 1e-9;
  int horizon = 0;
  int k = 0;
  std::string property;
  std::string target;
  bool strict = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
};

using ReportResult = std::variant<Certificate, MatrixCheck, VariationCheck, DiminishingCheck, OracleReport>;

struct ReportFile {
  Environment environment;
  ReportResult result;
  std::vector<std::string> traces;  // CSV file names, relative to the report
};

Json to_json(const IndexTuple& t);
IndexTuple index_tuple_from_json(const Json& j);

Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);
Json to_json(const MatrixCheck& m);
MatrixCheck matrix_check_from_json(const Json& j);
Json to_json(const VariationCheck& v);
VariationCheck variation_check_from_json(const Json& j);
Json to_json(const DiminishingCheck& d);
DiminishingCheck diminishing_check_from_json(const Json& j);
Json to_json(const OracleReport& r);
OracleReport oracle_report_from_json(const Json& j);
Json to_json(const Environment& e);
Environment environment_from_json(const Json& j);
Json to_json(const ReportFile& r);
ReportFile report_from_json(const Json& j);

/// "trace_r{r}_beta{slug}.csv", prefixed "ctrb_" for a controllability factor.
std::string trace_file_name(const SystemVerdict& s);

/// Header "t,g", one row per sample, t from 1.
void write_trace_csv(const std::filesystem::path& path, const std::vector<std::string>& values);
std::vector<std::string> read_trace_csv(const std::filesystem::path& path);

}  // namespace vbcert
