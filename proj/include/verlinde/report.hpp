#pragma once

// Job configuration, reports and their JSON / CSV forms for the batch driver.

#include <chrono>
#include <cstddef>
#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "verlinde/errors.hpp"
#include "verlinde/problem.hpp"
#include "verlinde/residue.hpp"
#include "verlinde/verlinde_sum.hpp"

// std::optional as JSON null or value.
namespace nlohmann {
template <class T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& v) {
    if (v)
      j = *v;
    else
      j = nullptr;
  }
  static void from_json(const json& j, std::optional<T>& v) {
    if (j.is_null())
      v.reset();
    else
      v = j.get<T>();
  }
};
}  // namespace nlohmann

namespace verlinde {

enum class Method { Sum, Residue, Both };
enum class Backend { Exact, Float };
enum class OutputFormat { Json, Csv };

NLOHMANN_JSON_SERIALIZE_ENUM(Method, {{Method::Sum, "sum"}, {Method::Residue, "residue"}, {Method::Both, "both"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Backend, {{Backend::Exact, "exact"}, {Backend::Float, "float"}})
NLOHMANN_JSON_SERIALIZE_ENUM(OutputFormat, {{OutputFormat::Json, "json"}, {OutputFormat::Csv, "csv"}})

inline Method parse_method(const std::string& s) {
  if (s == "sum") return Method::Sum;
  if (s == "residue") return Method::Residue;
  if (s == "both") return Method::Both;
  throw ValidationError("unknown method '" + s + "' (expected sum, residue or both)");
}

inline Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::Exact;
  if (s == "float") return Backend::Float;
  throw ValidationError("unknown backend '" + s + "' (expected exact or float)");
}

inline OutputFormat parse_output(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw ValidationError("unknown output format '" + s + "' (expected json or csv)");
}

struct JobConfig {
  int n = 2;
  int d = 1;
  int g = 2;
  long k = 2;
  /// Fundamental-weight coordinates of each lambda^(s).
  std::vector<std::vector<long>> weights;
  Method method = Method::Both;
  Backend backend = Backend::Exact;
  /// When set, one job per listed level replaces the single level k.
  std::optional<std::vector<long>> sweep;
  OutputFormat output = OutputFormat::Json;

  ProblemSpec problem(long level) const {
    ProblemSpec spec{n, d, g, level, {}};
    for (const auto& w : weights) spec.weights.emplace_back(w);
    return spec;
  }
};

/// Exit codes of the driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitMismatch = 3;

struct JobReport {
  int n = 0;
  int d = 0;
  int g = 0;
  long k = 0;
  std::vector<std::vector<long>> weights;
  Method method = Method::Both;
  Backend backend = Backend::Exact;

  /// "ok", "validation_error", "disagreement" or "integrality_failure".
  std::string status;
  int exit_code = kExitOk;
  /// The Verlinde number as a decimal string, when one was established.
  std::optional<std::string> value;
  /// Per-method results ("sum", "residue"): decimal integers.
  std::map<std::string, std::string> method_values;
  /// True iff both methods ran and produced identical integers.
  bool agreement = false;
  bool integral = false;
  bool chamber_valid = false;
  /// Largest fundamental pairing over the weights (and W^b for b > 1); the
  /// chamber condition is that it stays below 1.
  std::optional<std::string> max_wall_pairing;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  /// Seconds per method.
  std::map<std::string, double> timings;

  bool operator==(const JobReport&) const = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(JobReport, n, d, g, k, weights, method, backend, status, exit_code, value,
                                   method_values, agreement, integral, chamber_valid, max_wall_pairing, errors,
                                   warnings, timings)

struct Report {
  std::vector<JobReport> jobs;

  /// Worst exit code over the jobs (0 for an empty report).
  int exit_code() const {
    int code = kExitOk;
    for (const auto& j : jobs) code = std::max(code, j.exit_code);
    return code;
  }

  bool operator==(const Report&) const = default;
};

inline nlohmann::json summary_table(const Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& j : report.jobs) rows.push_back({{"k", j.k}, {"value", j.value}, {"status", j.status}});
  return rows;
}

inline nlohmann::json to_json(const Report& report, bool include_timings = true) {
  nlohmann::json jobs = nlohmann::json::array();
  for (const auto& job : report.jobs) {
    nlohmann::json j = job;
    if (!include_timings) j.erase("timings");
    jobs.push_back(std::move(j));
  }
  return {{"jobs", jobs}, {"summary", summary_table(report)}};
}

inline Report report_from_json(const nlohmann::json& j) {
  Report r;
  for (const auto& job : j.at("jobs")) r.jobs.push_back(job.get<JobReport>());
  return r;
}

/// JSON text with timings removed, for byte-level comparison of runs.
inline std::string deterministic_digest(const Report& report) { return to_json(report, false).dump(); }

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string weights_text(const std::vector<std::vector<long>>& ws) { return nlohmann::json(ws).dump(); }

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace detail

inline std::string to_csv(const Report& report) {
  std::ostringstream os;
  os << "n,d,g,k,weights,method,backend,status,exit_code,value,sum,residue,agreement,integral,chamber_valid,"
        "max_wall_pairing,errors,warnings,sum_seconds,residue_seconds\n";
  auto opt = [](const std::map<std::string, std::string>& m, const std::string& key) {
    auto it = m.find(key);
    return it == m.end() ? std::string() : it->second;
  };
  for (const auto& j : report.jobs) {
    os << j.n << ',' << j.d << ',' << j.g << ',' << j.k << ',' << detail::csv_field(detail::weights_text(j.weights))
       << ',' << nlohmann::json(j.method).get<std::string>() << ',' << nlohmann::json(j.backend).get<std::string>()
       << ',' << j.status << ',' << j.exit_code << ',' << j.value.value_or("") << ','
       << opt(j.method_values, "sum") << ',' << opt(j.method_values, "residue") << ','
       << (j.agreement ? "true" : "false") << ',' << (j.integral ? "true" : "false") << ','
       << (j.chamber_valid ? "true" : "false") << ',' << j.max_wall_pairing.value_or("") << ','
       << detail::csv_field(detail::join(j.errors, "; ")) << ',' << detail::csv_field(detail::join(j.warnings, "; "))
       << ',';
    if (auto it = j.timings.find("sum"); it != j.timings.end()) os << it->second;
    os << ',';
    if (auto it = j.timings.find("residue"); it != j.timings.end()) os << it->second;
    os << '\n';
  }
  return os.str();
}

/// One job at one level.
inline JobReport run_job(const JobConfig& config, long level) {
  JobReport rep;
  rep.n = config.n;
  rep.d = config.d;
  rep.g = config.g;
  rep.k = level;
  rep.weights = config.weights;
  rep.method = config.method;
  rep.backend = config.backend;

  const ProblemSpec spec = config.problem(level);
  rep.errors = check_problem(spec);

  // Wall diagnostics whenever the weights are well formed.
  bool weights_ok = spec.n >= 2 && level > 0;
  for (const auto& w : spec.weights) weights_ok = weights_ok && w.n() == spec.n && w.is_dominant();
  if (weights_ok) {
    const auto diag = chamber_diagnostics(spec.n, spec.scaled_weights());
    rep.chamber_valid = diag.valid;
    if (!spec.weights.empty()) rep.max_wall_pairing = diag.max_pairing.get_str();
  }
  if (!rep.errors.empty()) {
    rep.status = "validation_error";
    rep.exit_code = kExitValidation;
    return rep;
  }

  using Clock = std::chrono::steady_clock;
  bool integrality_failed = false;
  auto attempt = [&](const std::string& name, auto&& compute) {
    const auto t0 = Clock::now();
    try {
      rep.method_values[name] = compute().get_str();
    } catch (const IntegralityError& e) {
      integrality_failed = true;
      rep.errors.push_back(name + ": " + e.what());
    } catch (const TruncationError& e) {
      integrality_failed = true;
      rep.errors.push_back(name + ": " + e.what());
    }
    rep.timings[name] = std::chrono::duration<double>(Clock::now() - t0).count();
  };
  if (config.method != Method::Residue) {
    attempt("sum", [&] {
      return config.backend == Backend::Float ? verlinde_by_sum_float(spec) : verlinde_by_sum(spec);
    });
  }
  if (config.method != Method::Sum) attempt("residue", [&] { return verlinde_by_residue(spec); });

  rep.integral = !integrality_failed;
  const bool both = rep.method_values.size() == 2;
  rep.agreement = both && rep.method_values.at("sum") == rep.method_values.at("residue");

  if (integrality_failed) {
    rep.status = "integrality_failure";
    rep.exit_code = kExitMismatch;
    return rep;
  }
  if (config.method == Method::Both && !rep.agreement) {
    rep.status = "disagreement";
    rep.exit_code = kExitMismatch;
    rep.errors.push_back("sum and residue methods disagree: " + rep.method_values.at("sum") + " vs " +
                         rep.method_values.at("residue"));
    return rep;
  }
  rep.status = "ok";
  rep.value = rep.method_values.begin()->second;
  if (!rep.value->empty() && rep.value->front() == '-')
    rep.warnings.push_back("negative value: an Euler characteristic rather than a dimension");
  return rep;
}

/// One report per level in the listed order; jobs run concurrently and a
/// failing job never affects the others.
inline Report sweep(const JobConfig& config, const std::vector<long>& levels) {
  std::vector<std::future<JobReport>> pending;
  pending.reserve(levels.size());
  for (long level : levels) pending.push_back(std::async(std::launch::async, [&config, level] { return run_job(config, level); }));
  Report out;
  for (auto& f : pending) out.jobs.push_back(f.get());
  return out;
}

/// Runs the configuration: the sweep when one is given, else the single level k.
inline Report run(const JobConfig& config) {
  if (config.sweep) return sweep(config, *config.sweep);
  return Report{{run_job(config, config.k)}};
}

/// Weight file contents: a JSON array of integer arrays.
inline std::vector<std::vector<long>> parse_weights_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("weight file is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw ValidationError("weight file must hold a JSON array of integer arrays");
  std::vector<std::vector<long>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw ValidationError("weight file must hold a JSON array of integer arrays");
    std::vector<long> w;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw ValidationError("weight coordinates must be integers");
      w.push_back(x.get<long>());
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace verlinde
