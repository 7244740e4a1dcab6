// vbcert: certify variation bounding properties of matrices and observability operators.
//
// Exit codes: 0 certified / holds / no violation, 1 refuted / violation found,
// 2 inconclusive (including unobservable pairs), 3 input error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "vbcert/error.hpp"
#include "vbcert/io.hpp"
#include "vbcert/lti.hpp"
#include "vbcert/obsv_cert.hpp"
#include "vbcert/oracle.hpp"
#include "vbcert/signcons.hpp"

namespace fs = std::filesystem;
using namespace vbcert;

namespace {

constexpr int kCertified = 0, kRefuted = 1, kInconclusive = 2, kInputError = 3;

struct Common {
  std::string file;
  int k = 1;
  std::optional<int> horizon;
  std::string arith = "exact";
  double tol = 1e-9;
  bool strict = false;
  std::string out;
  bool json = false;
};

void add_common(CLI::App* cmd, Common& o) {
  cmd->add_option("file", o.file, "JSON input file")->required();
  cmd->add_option("--k", o.k, "order k (>= 1)")->check(CLI::PositiveNumber);
  cmd->add_option("--arith", o.arith, "arithmetic backend")->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--tol", o.tol, "Float backend zero tolerance")->check(CLI::PositiveNumber);
  cmd->add_flag("--strict", o.strict, "strict variant of the property");
  cmd->add_option("--out", o.out, "directory for report.json and traces");
  cmd->add_flag("--json", o.json, "print the report as JSON on stdout");
}

Backend backend_of(const std::string& arith) { return arith == "float" ? Backend::Float : Backend::Exact; }

void warn(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

void emit(const Common& o, const ReportFile& report) {
  const Json j = to_json(report);
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    std::ofstream(fs::path(o.out) / "report.json") << j.dump(2) << '\n';
  }
  if (o.json) std::cout << j.dump(2) << '\n';
}

template <class T>
std::vector<T> cast_vec(const std::vector<Rational>& v) {
  std::vector<T> out;
  for (const auto& x : v) {
    if constexpr (std::is_same_v<T, double>)
      out.push_back(to_double(x));
    else
      out.push_back(x);
  }
  return out;
}

int matrix_exit(const MatrixCheck& m) {
  if (m.pass) return kCertified;
  return m.verdict == SignVerdict::Inconclusive ? kInconclusive : kRefuted;
}

int decision_exit(Decision d) {
  return d == Decision::Holds ? kCertified : (d == Decision::Fails ? kRefuted : kInconclusive);
}

template <class T>
int run_check_matrix(const Common& o, const std::string& property, const Matrix<T>& x, Environment env) {
  ReportFile report{env, MatrixCheck{}, {}};
  int code = kInconclusive;
  if (property == "SC" || property == "SSC" || property == "SR" || property == "TP") {
    MatrixCheck m;
    if (property == "SC") m = sign_consistent(x, o.k, o.strict);
    if (property == "SSC") m = sign_consistent(x, o.k, true);
    if (property == "SR") m = sign_regular(x, o.k, o.strict);
    if (property == "TP") m = k_positive(x, o.k, o.strict);
    code = matrix_exit(m);
    std::cout << property << "_" << o.k << ": " << (m.pass ? "holds" : "does not hold") << " (" << to_string(m.verdict)
              << ", epsilon = " << m.epsilon << ", " << to_string(m.path) << ")\n";
    if (m.witness)
      std::cout << "witness: rows " << m.witness->rows.to_string() << " cols " << m.witness->cols.to_string()
                << " minor " << m.witness->value << '\n';
    report.result = m;
  } else if (property == "VB") {
    const VariationCheck v = vb_matrix_check(x, o.k);
    const Decision d = o.strict ? v.strict_vb : v.vb;
    code = decision_exit(d);
    std::cout << (o.strict ? "SVB_" : "VB_") << o.k - 1 << ": " << to_string(d) << " (" << to_string(v.path)
              << ", rank " << v.rank << ")\n";
    if (!v.note.empty()) std::cout << "note: " << v.note << '\n';
    report.result = v;
  } else {
    const DiminishingCheck d = vd_matrix_check(x, o.k);
    const Decision dd = o.strict ? d.ovd : d.vd;
    code = decision_exit(dd);
    std::cout << (o.strict ? "OVD_" : "VD_") << o.k - 1 << ": " << to_string(dd) << " (" << to_string(d.path) << ")\n";
    if (!d.note.empty()) std::cout << "note: " << d.note << '\n';
    report.result = d;
  }
  emit(o, report);
  return code;
}

const std::map<std::string, Property> kProps{
    {"svb", Property::SVB}, {"vb", Property::VB}, {"kpos", Property::KPositive}, {"vd", Property::VD}};
const std::map<std::string, Target> kTargets{
    {"obsv", Target::Observability}, {"ctrb", Target::Controllability}, {"hankel", Target::HankelSufficient}};

template <class T>
int run_certify(const Common& o, const SystemFile& f, Property prop, Target target, int horizon, Environment env) {
  const Matrix<T> a = f.a.template cast<T>();
  const std::vector<T> c = cast_vec<T>(f.c);
  std::optional<std::vector<T>> b;
  if (f.b) b = cast_vec<T>(*f.b);
  const Certificate cert = certify(a, b, c, prop, target, o.k, horizon, o.strict);

  std::cout << cert.claim << ": " << to_string(cert.conclusion);
  if (!cert.route.empty()) std::cout << " via " << cert.route;
  if (cert.common_sign != 0) std::cout << " (common sign " << (cert.common_sign > 0 ? "+" : "-") << ")";
  std::cout << '\n';
  for (const SystemVerdict& s : cert.per_system) {
    std::cout << "  " << (s.factor.empty() ? "" : s.factor + " ") << "r=" << s.r << " k=" << s.k << " beta="
              << s.beta.to_string() << ": " << to_string(s.verdict.status);
    if (s.verdict.tail_start) std::cout << " (tail from t=" << *s.verdict.tail_start << ")";
    std::cout << '\n';
  }
  if (cert.witness)
    std::cout << "witness: r=" << cert.witness->r << " beta=" << cert.witness->beta.to_string() << " t="
              << cert.witness->t << " value " << cert.witness->value << '\n';
  for (const auto& n : cert.notes) std::cout << "note: " << n << '\n';

  ReportFile report{env, cert, {}};
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    std::map<std::string, int> seen;
    for (const SystemVerdict& s : cert.per_system) {
      std::string name = trace_file_name(s);
      if (seen[name]++ > 0) name.insert(name.size() - 4, "_k" + std::to_string(s.k));
      write_trace_csv(fs::path(o.out) / name, s.trace);
      report.traces.push_back(name);
    }
  }
  emit(o, report);
  switch (cert.conclusion) {
    case Conclusion::Certified: return kCertified;
    case Conclusion::Refuted: return kRefuted;
    case Conclusion::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

void print_oracle(const OracleReport& r) {
  std::cout << "trials " << r.trials << ", seed " << r.seed << ": " << r.confirmed() << " violation(s), "
            << r.suspects() << " suspect\n";
  if (r.tail_unresolved > 0) std::cout << r.tail_unresolved << " output(s) without a tail sign inside the horizon\n";
  for (const OracleViolation& v : r.violations) {
    if (v.suspect) continue;
    std::cout << "witness: trial " << v.trial << ", input (";
    for (std::size_t i = 0; i < v.input.size(); ++i) std::cout << (i ? ", " : "") << v.input[i];
    std::cout << "), output variation " << v.output_variation << ", sign changes at t =";
    for (int t : v.witness_times) std::cout << ' ' << t;
    std::cout << '\n';
    break;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates for k-variation bounding matrices and observability operators"};
  app.require_subcommand(1);

  Common cm, cc, co;
  std::string mproperty = "SC";
  auto* check = app.add_subcommand("check-matrix", "sign consistency / regularity / variation checks of a matrix");
  add_common(check, cm);
  check->add_option("--property", mproperty, "matrix property")
      ->check(CLI::IsMember({"SC", "SSC", "SR", "TP", "VB", "VD"}));

  std::string cproperty = "svb", ctarget = "obsv";
  auto* cert = app.add_subcommand("certify", "certify a property of the observability operator");
  add_common(cert, cc);
  cert->add_option("--property", cproperty, "operator property")->check(CLI::IsMember({"svb", "vb", "kpos", "vd"}));
  cert->add_option("--target", ctarget, "operator")->check(CLI::IsMember({"obsv", "ctrb", "hankel"}));
  cert->add_option("--horizon", cc.horizon, "samples checked per system (default max(50, 10n))")
      ->check(CLI::PositiveNumber);
  bool realize = false;
  cert->add_flag("--hankel-realization", realize,
                 "replace (A,b,c) by a realization whose observability operator is the Hankel operator of g");

  std::uint64_t trials = 1000, seed = 1;
  auto* orc = app.add_subcommand("oracle", "search for variation violations by sampling");
  add_common(orc, co);
  orc->add_option("--trials", trials, "number of sampled inputs");
  orc->add_option("--seed", seed, "random seed");
  orc->add_option("--horizon", co.horizon, "output samples for operators (default max(50, 10n))")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*check) {
      const MatrixFile f = load_matrix_file(cm.file);
      warn(f.warnings);
      Environment env{"check-matrix", cm.file, backend_of(cm.arith), cm.tol, 0, cm.k, mproperty, "", cm.strict, {}, {}};
      if (cm.arith == "float") {
        ScopedTolerance tol(cm.tol);
        return run_check_matrix(cm, mproperty, f.x.cast<double>(), env);
      }
      return run_check_matrix(cm, mproperty, f.x, env);
    }
    if (*cert) {
      SystemFile f = load_system_file(cc.file);
      warn(f.warnings);
      if (realize) {
        if (!f.b) throw Error(ErrorCode::PreconditionViolated, "--hankel-realization needs 'b'");
        const LtiSystem<Rational> h = hankel_realization(LtiSystem<Rational>(f.a, *f.b, f.c));
        f.a = h.a;
        f.b = h.b;
        f.c = h.c;
      }
      const int horizon = cc.horizon.value_or(default_horizon(static_cast<int>(f.a.rows())));
      Environment env{"certify", cc.file, backend_of(cc.arith), cc.tol, horizon, cc.k, cproperty, ctarget,
                      cc.strict, {}, {}};
      const Property p = kProps.at(cproperty);
      const Target t = kTargets.at(ctarget);
      if (cc.arith == "float") {
        ScopedTolerance tol(cc.tol);
        return run_certify<double>(cc, f, p, t, horizon, env);
      }
      return run_certify<Rational>(cc, f, p, t, horizon, env);
    }
    const Json j = read_json(co.file);
    Environment env{"oracle", co.file, Backend::Float, co.tol, 0, co.k, "", "", co.strict, seed, trials};
    OracleReport r;
    if (j.is_object() && j.contains("X")) {
      const MatrixFile f = parse_matrix_file(j);
      warn(f.warnings);
      env.target = "matrix";
      r = falsify_matrix_vb(f.x.cast<double>(), co.k, trials, seed, co.strict ? OracleMode::Strict : OracleMode::NonStrict);
    } else {
      const SystemFile f = parse_system_file(j);
      warn(f.warnings);
      env.target = "obsv";
      env.horizon = co.horizon.value_or(default_horizon(static_cast<int>(f.a.rows())));
      r = falsify_operator_vb(f.a.cast<double>(), cast_vec<double>(f.c), co.k, env.horizon, trials, seed);
    }
    print_oracle(r);
    emit(co, ReportFile{env, r, {}});
    return r.clean() ? kCertified : kRefuted;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::NotObservable ? kInconclusive : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
