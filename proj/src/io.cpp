#include "vbcert/io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "vbcert/error.hpp"

namespace vbcert {

namespace {

template <class E, std::size_t N>
E enum_from(const Json& j, const std::array<E, N>& all, const char* what) {
  const std::string s = j.get<std::string>();
  for (E e : all)
    if (s == to_string(e)) return e;
  throw Error(ErrorCode::Parse, std::string("unknown ") + what + " '" + s + "'");
}

constexpr std::array kProperties{Property::SVB, Property::VB, Property::VD, Property::OVD, Property::KPositive};
constexpr std::array kTargets{Target::Observability, Target::Controllability, Target::HankelSufficient};
constexpr std::array kConclusions{Conclusion::Certified, Conclusion::Refuted, Conclusion::Inconclusive};
constexpr std::array kBackends{Backend::Exact, Backend::Float};
constexpr std::array kStatuses{ExtPosStatus::StrictPositive, ExtPosStatus::StrictNegative, ExtPosStatus::NonNegative,
                               ExtPosStatus::NonPositive,    ExtPosStatus::Violated,       ExtPosStatus::VerifiedUpToHorizonOnly,
                               ExtPosStatus::Indeterminate};
constexpr std::array kVerdicts{SignVerdict::StrictlyPositive, SignVerdict::StrictlyNegative, SignVerdict::Nonnegative,
                               SignVerdict::Nonpositive,      SignVerdict::Zero,             SignVerdict::Mixed,
                               SignVerdict::Inconclusive};
constexpr std::array kPaths{DecisionPath::FullCompound,
                            DecisionPath::ConsecutiveMinors,
                            DecisionPath::InitialMinors,
                            DecisionPath::ReducedFamily,
                            DecisionPath::RankDeficientColumnSigns,
                            DecisionPath::IndependentColumnsSignConsistency,
                            DecisionPath::FullRankSignConsistency,
                            DecisionPath::StrictSignConsistency,
                            DecisionPath::TotalPositivity,
                            DecisionPath::SignRegularIndependentColumns,
                            DecisionPath::PerOrderVariationBound,
                            DecisionPath::Undecidable};
constexpr std::array kDecisions{Decision::Holds, Decision::Fails, Decision::Undecidable};

int sign_to_int(Sign s) { return s == Sign::Inconclusive ? 2 : static_cast<int>(s); }
Sign sign_from_int(int v) {
  switch (v) {
    case -1: return Sign::Negative;
    case 0: return Sign::Zero;
    case 1: return Sign::Positive;
    case 2: return Sign::Inconclusive;
  }
  throw Error(ErrorCode::Parse, "bad sign " + std::to_string(v));
}

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> opt_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::string entry_text(const Json& e, const std::string& where, std::vector<std::string>& warnings) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number()) {
    warnings.push_back(where + ": numeric entry " + e.dump() + " read from its shortest decimal form");
    return e.dump();
  }
  throw Error(ErrorCode::Parse, where + ": entry must be a decimal string");
}

std::vector<Rational> vector_from(const Json& j, const std::string& key, std::vector<std::string>& warnings) {
  const Json& v = j.at(key);
  if (!v.is_array()) throw Error(ErrorCode::Parse, "'" + key + "' must be an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(parse_decimal(entry_text(v[i], key + "[" + std::to_string(i) + "]", warnings)));
  return out;
}

Matrix<Rational> matrix_from(const Json& j, const std::string& key, std::vector<std::string>& warnings) {
  const Json& m = j.at(key);
  if (!m.is_array()) throw Error(ErrorCode::Parse, "'" + key + "' must be an array of rows");
  if (m.empty()) throw Error(ErrorCode::Parse, "'" + key + "' is empty");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i].is_array()) throw Error(ErrorCode::Parse, "'" + key + "' row " + std::to_string(i + 1) + " is not an array");
    if (m[i].empty()) throw Error(ErrorCode::Parse, "'" + key + "' row " + std::to_string(i + 1) + " is empty");
    std::vector<std::string> row;
    for (std::size_t c = 0; c < m[i].size(); ++c)
      row.push_back(entry_text(m[i][c], key + "[" + std::to_string(i) + "][" + std::to_string(c) + "]", warnings));
    rows.push_back(std::move(row));
  }
  return parse_matrix(rows);
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

Json witness_json(const std::optional<MinorWitness>& w) {
  if (!w) return nullptr;
  return {{"rows", to_json(w->rows)}, {"cols", to_json(w->cols)}, {"value", w->value}, {"sign", sign_to_int(w->sign)}};
}

std::optional<MinorWitness> witness_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  MinorWitness w;
  w.rows = index_tuple_from_json(j.at("rows"));
  w.cols = index_tuple_from_json(j.at("cols"));
  w.value = j.at("value").get<std::string>();
  w.sign = sign_from_int(j.at("sign").get<int>());
  return w;
}

Json violation_json(const std::optional<Violation>& v) {
  if (!v) return nullptr;
  return {{"t", v->t}, {"value", v->value}};
}

std::optional<Violation> violation_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return Violation{j.at("t").get<int>(), j.at("value").get<std::string>()};
}

Json verdict_json(const ExtPosVerdict& v) {
  return {{"status", to_string(v.status)},        {"horizon", v.horizon},
          {"tail_start", opt(v.tail_start)},       {"first_violation", violation_json(v.first_violation)},
          {"sign", v.sign},                        {"identically_zero", v.identically_zero},
          {"note", v.note}};
}

ExtPosVerdict verdict_from(const Json& j) {
  ExtPosVerdict v;
  v.status = enum_from(j.at("status"), kStatuses, "status");
  v.horizon = j.at("horizon").get<int>();
  v.tail_start = opt_from<int>(j, "tail_start");
  v.first_violation = violation_from(j.at("first_violation"));
  v.sign = j.at("sign").get<int>();
  v.identically_zero = j.at("identically_zero").get<bool>();
  v.note = j.at("note").get<std::string>();
  return v;
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

SystemFile parse_system_file(const Json& j) {
  return guarded([&] {
    if (!j.is_object()) throw Error(ErrorCode::Parse, "system file must be a JSON object");
    SystemFile f;
    f.name = j.value("name", std::string{});
    f.notes = j.value("notes", std::string{});
    if (!j.contains("A")) throw Error(ErrorCode::Parse, "missing 'A'");
    if (!j.contains("c")) throw Error(ErrorCode::Parse, "missing 'c'");
    f.a = matrix_from(j, "A", f.warnings);
    f.c = vector_from(j, "c", f.warnings);
    if (j.contains("b") && !j.at("b").is_null()) f.b = vector_from(j, "b", f.warnings);
    if (!f.a.square()) throw Error(ErrorCode::NonSquare, "'A' is " + f.a.shape());
    if (f.c.size() != f.a.rows())
      throw Error(ErrorCode::SizeMismatch, "'c' has " + std::to_string(f.c.size()) + " entries for a " + f.a.shape() + " A");
    if (f.b && f.b->size() != f.a.rows())
      throw Error(ErrorCode::SizeMismatch, "'b' has " + std::to_string(f.b->size()) + " entries for a " + f.a.shape() + " A");
    return f;
  });
}

MatrixFile parse_matrix_file(const Json& j) {
  return guarded([&] {
    if (!j.is_object()) throw Error(ErrorCode::Parse, "matrix file must be a JSON object");
    if (!j.contains("X")) throw Error(ErrorCode::Parse, "missing 'X'");
    MatrixFile f;
    f.name = j.value("name", std::string{});
    f.notes = j.value("notes", std::string{});
    f.x = matrix_from(j, "X", f.warnings);
    return f;
  });
}

SystemFile load_system_file(const std::filesystem::path& path) { return parse_system_file(read_json(path)); }
MatrixFile load_matrix_file(const std::filesystem::path& path) { return parse_matrix_file(read_json(path)); }

Json to_json(const IndexTuple& t) {
  return {{"n", t.ambient()}, {"set", std::vector<int>(t.elems().begin(), t.elems().end())}};
}

IndexTuple index_tuple_from_json(const Json& j) {
  return IndexTuple(j.at("n").get<int>(), j.at("set").get<std::vector<int>>());
}

Json to_json(const Certificate& c) {
  Json systems = Json::array();
  for (const SystemVerdict& s : c.per_system) {
    Json fs = nullptr;
    if (s.first_signed) fs = {{"t", s.first_signed->t}, {"value", s.first_signed->value}};
    systems.push_back({{"r", s.r},
                       {"k", s.k},
                       {"beta", to_json(s.beta)},
                       {"may_vanish", s.may_vanish},
                       {"factor", s.factor},
                       {"verdict", verdict_json(s.verdict)},
                       {"first_signed", fs},
                       {"trace", s.trace}});
  }
  Json w = nullptr;
  if (c.witness)
    w = {{"r", c.witness->r},
         {"beta", to_json(c.witness->beta)},
         {"t", c.witness->t},
         {"value", c.witness->value},
         {"opposite_sign", c.witness->opposite_sign}};
  return {{"property", to_string(c.property)},
          {"target", to_string(c.target)},
          {"k", c.k},
          {"horizon", c.horizon},
          {"strict", c.strict},
          {"backend", to_string(c.backend)},
          {"per_system", systems},
          {"common_sign", c.common_sign},
          {"conclusion", to_string(c.conclusion)},
          {"claim", c.claim},
          {"route", c.route},
          {"witness", w},
          {"notes", c.notes}};
}

Certificate certificate_from_json(const Json& j) {
  return guarded([&] {
    Certificate c;
    c.property = enum_from(j.at("property"), kProperties, "property");
    c.target = enum_from(j.at("target"), kTargets, "target");
    c.k = j.at("k").get<int>();
    c.horizon = j.at("horizon").get<int>();
    c.strict = j.at("strict").get<bool>();
    c.backend = enum_from(j.at("backend"), kBackends, "backend");
    for (const Json& s : j.at("per_system")) {
      SystemVerdict v;
      v.r = s.at("r").get<int>();
      v.k = s.at("k").get<int>();
      v.beta = index_tuple_from_json(s.at("beta"));
      v.may_vanish = s.at("may_vanish").get<bool>();
      v.factor = s.at("factor").get<std::string>();
      v.verdict = verdict_from(s.at("verdict"));
      v.first_signed = violation_from(s.at("first_signed"));
      v.trace = s.at("trace").get<std::vector<std::string>>();
      c.per_system.push_back(std::move(v));
    }
    c.common_sign = j.at("common_sign").get<int>();
    c.conclusion = enum_from(j.at("conclusion"), kConclusions, "conclusion");
    c.claim = j.at("claim").get<std::string>();
    c.route = j.at("route").get<std::string>();
    if (const Json& w = j.at("witness"); !w.is_null())
      c.witness = FamilyWitness{w.at("r").get<int>(), index_tuple_from_json(w.at("beta")), w.at("t").get<int>(),
                                w.at("value").get<std::string>(), w.at("opposite_sign").get<bool>()};
    c.notes = j.at("notes").get<std::vector<std::string>>();
    return c;
  });
}

Json to_json(const MatrixCheck& m) {
  std::vector<std::string> orders;
  for (SignVerdict v : m.per_order) orders.emplace_back(to_string(v));
  return {{"pass", m.pass},
          {"verdict", to_string(m.verdict)},
          {"epsilon", m.epsilon},
          {"per_order", orders},
          {"path", to_string(m.path)},
          {"witness", witness_json(m.witness)},
          {"note", m.note}};
}

MatrixCheck matrix_check_from_json(const Json& j) {
  return guarded([&] {
    MatrixCheck m;
    m.pass = j.at("pass").get<bool>();
    m.verdict = enum_from(j.at("verdict"), kVerdicts, "verdict");
    m.epsilon = j.at("epsilon").get<int>();
    for (const Json& v : j.at("per_order")) m.per_order.push_back(enum_from(v, kVerdicts, "verdict"));
    m.path = enum_from(j.at("path"), kPaths, "decision path");
    m.witness = witness_from(j.at("witness"));
    m.note = j.at("note").get<std::string>();
    return m;
  });
}

Json to_json(const VariationCheck& v) {
  return {{"vb", to_string(v.vb)},     {"strict_vb", to_string(v.strict_vb)}, {"path", to_string(v.path)},
          {"rank", v.rank},            {"witness", witness_json(v.witness)},  {"note", v.note}};
}

VariationCheck variation_check_from_json(const Json& j) {
  return guarded([&] {
    VariationCheck v;
    v.vb = enum_from(j.at("vb"), kDecisions, "decision");
    v.strict_vb = enum_from(j.at("strict_vb"), kDecisions, "decision");
    v.path = enum_from(j.at("path"), kPaths, "decision path");
    v.rank = j.at("rank").get<int>();
    v.witness = witness_from(j.at("witness"));
    v.note = j.at("note").get<std::string>();
    return v;
  });
}

Json to_json(const DiminishingCheck& d) {
  std::vector<std::string> orders;
  for (Decision v : d.per_order) orders.emplace_back(to_string(v));
  return {{"vd", to_string(d.vd)},
          {"ovd", to_string(d.ovd)},
          {"path", to_string(d.path)},
          {"per_order", orders},
          {"note", d.note}};
}

DiminishingCheck diminishing_check_from_json(const Json& j) {
  return guarded([&] {
    DiminishingCheck d;
    d.vd = enum_from(j.at("vd"), kDecisions, "decision");
    d.ovd = enum_from(j.at("ovd"), kDecisions, "decision");
    d.path = enum_from(j.at("path"), kPaths, "decision path");
    for (const Json& v : j.at("per_order")) d.per_order.push_back(enum_from(v, kDecisions, "decision"));
    d.note = j.at("note").get<std::string>();
    return d;
  });
}

Json to_json(const OracleReport& r) {
  Json vs = Json::array();
  for (const OracleViolation& v : r.violations)
    vs.push_back({{"trial", v.trial},
                  {"input", v.input},
                  {"output_variation", v.output_variation},
                  {"witness_times", v.witness_times},
                  {"suspect", v.suspect}});
  return {{"trials", r.trials},
          {"seed", r.seed},
          {"k", r.k},
          {"mode", r.mode == OracleMode::Strict ? "Strict" : "NonStrict"},
          {"violations", vs},
          {"confirmed", r.confirmed()},
          {"suspects", r.suspects()},
          {"tail_unresolved", r.tail_unresolved}};
}

OracleReport oracle_report_from_json(const Json& j) {
  return guarded([&] {
    OracleReport r;
    r.trials = j.at("trials").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.k = j.at("k").get<int>();
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "Strict" && mode != "NonStrict") throw Error(ErrorCode::Parse, "unknown oracle mode '" + mode + "'");
    r.mode = mode == "Strict" ? OracleMode::Strict : OracleMode::NonStrict;
    for (const Json& v : j.at("violations"))
      r.violations.push_back({v.at("trial").get<std::uint64_t>(), v.at("input").get<std::vector<double>>(),
                              v.at("output_variation").get<int>(), v.at("witness_times").get<std::vector<int>>(),
                              v.at("suspect").get<bool>()});
    r.tail_unresolved = j.at("tail_unresolved").get<std::uint64_t>();
    return r;
  });
}

Json to_json(const Environment& e) {
  return {{"command", e.command}, {"input", e.input},   {"backend", to_string(e.backend)},
          {"tol", e.tol},         {"horizon", e.horizon}, {"k", e.k},
          {"property", e.property}, {"target", e.target}, {"strict", e.strict},
          {"seed", opt(e.seed)},  {"trials", opt(e.trials)}};
}

Environment environment_from_json(const Json& j) {
  return guarded([&] {
    Environment e;
    e.command = j.at("command").get<std::string>();
    e.input = j.at("input").get<std::string>();
    e.backend = enum_from(j.at("backend"), kBackends, "backend");
    e.tol = j.at("tol").get<double>();
    e.horizon = j.at("horizon").get<int>();
    e.k = j.at("k").get<int>();
    e.property = j.at("property").get<std::string>();
    e.target = j.at("target").get<std::string>();
    e.strict = j.at("strict").get<bool>();
    e.seed = opt_from<std::uint64_t>(j, "seed");
    e.trials = opt_from<std::uint64_t>(j, "trials");
    return e;
  });
}

Json to_json(const ReportFile& r) {
  Json out = {{"environment", to_json(r.environment)}, {"traces", r.traces}};
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        const char* kind = std::is_same_v<V, Certificate>      ? "certificate"
                           : std::is_same_v<V, MatrixCheck>    ? "matrix_check"
                           : std::is_same_v<V, VariationCheck> ? "variation_check"
                           : std::is_same_v<V, DiminishingCheck> ? "diminishing_check"
                                                                 : "oracle";
        out["kind"] = kind;
        out["result"] = to_json(v);
      },
      r.result);
  return out;
}

ReportFile report_from_json(const Json& j) {
  return guarded([&] {
    ReportFile r;
    r.environment = environment_from_json(j.at("environment"));
    r.traces = j.at("traces").get<std::vector<std::string>>();
    const std::string kind = j.at("kind").get<std::string>();
    const Json& res = j.at("result");
    if (kind == "certificate")
      r.result = certificate_from_json(res);
    else if (kind == "matrix_check")
      r.result = matrix_check_from_json(res);
    else if (kind == "variation_check")
      r.result = variation_check_from_json(res);
    else if (kind == "diminishing_check")
      r.result = diminishing_check_from_json(res);
    else if (kind == "oracle")
      r.result = oracle_report_from_json(res);
    else
      throw Error(ErrorCode::Parse, "unknown report kind '" + kind + "'");
    return r;
  });
}

std::string trace_file_name(const SystemVerdict& s) {
  std::string name = "trace_r" + std::to_string(s.r) + "_beta" + s.beta.to_slug() + ".csv";
  return s.factor.empty() ? name : s.factor + "_" + name;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<std::string>& values) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Parse, "cannot write " + path.string());
  out << "t,g\n";
  for (std::size_t i = 0; i < values.size(); ++i) out << (i + 1) << ',' << values[i] << '\n';
}

std::vector<std::string> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "t,g") throw Error(ErrorCode::Parse, path.string() + ": missing header t,g");
  std::vector<std::string> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::Parse, path.string() + ": malformed row '" + line + "'");
    values.push_back(line.substr(comma + 1));
  }
  return values;
}

}  // namespace vbcert
