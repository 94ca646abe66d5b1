#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "qsbai/analysis.hpp"
#include "qsbai/config.hpp"
#include "qsbai/errors.hpp"

namespace qsbai {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitValidationError = 3;
inline constexpr int kExitBoundViolated = 4;

// 12 significant digits, fixed across platforms and runs. This is the only
// float formatter the data writers use, so output files are byte-stable.
inline std::string format_probability(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

inline std::string render_sweep_csv(const SweepResult& result) {
  std::string out = "t,vertex,prob\n";
  for (std::size_t t = 0; t < result.curve.size(); ++t) {
    const std::vector<double>& row = result.curve[t];
    for (std::size_t v = 0; v < row.size(); ++v) {
      out += std::to_string(t);
      out += ',';
      out += std::to_string(v);
      out += ',';
      out += format_probability(row[v]);
      out += '\n';
    }
  }
  return out;
}

inline std::string render_sweep_json(const SweepResult& result) {
  nlohmann::json doc;
  doc["horizon"] = result.horizon;
  doc["curve"] = result.curve;
  if (result.best_arm) doc["best_arm"] = *result.best_arm;
  if (result.first_max_step) doc["first_max_step"] = *result.first_max_step;
  return doc.dump(2) + "\n";
}

inline nlohmann::json report_to_json(const TheoremReport& report) {
  nlohmann::json doc;
  doc["family"] = to_string(report.family);
  doc["q_bar"] = report.q_bar;
  doc["theta"] = report.theta;
  doc["s"] = report.s;
  doc["t_star"] = report.t_star;
  doc["bound_rhs"] = report.bound_rhs;
  doc["p_observed"] = report.p_observed;
  doc["bound_satisfied"] = report.bound_satisfied;
  return doc;
}

inline std::string render_report_json(const TheoremReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

inline std::string render_report_csv(const TheoremReport& report) {
  std::string out =
      "family,q_bar,theta,s,t_star,bound_rhs,p_observed,bound_satisfied\n";
  out += to_string(report.family);
  out += ',';
  out += format_probability(report.q_bar);
  out += ',';
  out += format_probability(report.theta);
  out += ',';
  out += std::to_string(report.s);
  out += ',';
  out += std::to_string(report.t_star);
  out += ',';
  out += format_probability(report.bound_rhs);
  out += ',';
  out += format_probability(report.p_observed);
  out += ',';
  out += report.bound_satisfied ? "true" : "false";
  out += '\n';
  return out;
}

struct SampleRecord {
  Vertex arm;
  double probability;  // P_T(arm)
  std::size_t step;
  std::uint64_t seed;
};

inline std::string render_sample_json(const SampleRecord& record) {
  nlohmann::json doc;
  doc["arm"] = record.arm;
  doc["probability"] = record.probability;
  doc["step"] = record.step;
  doc["seed"] = record.seed;
  return doc.dump(2) + "\n";
}

inline std::string render_sample_csv(const SampleRecord& record) {
  std::string out = "arm,step,seed,prob\n";
  out += std::to_string(record.arm);
  out += ',';
  out += std::to_string(record.step);
  out += ',';
  out += std::to_string(record.seed);
  out += ',';
  out += format_probability(record.probability);
  out += '\n';
  return out;
}

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

// Verbosity comes from the QSBAI_LOG environment variable
// (quiet | info | debug); logs go to stderr, data to the output target.
inline LogLevel log_level() {
  const char* env = std::getenv("QSBAI_LOG");
  if (env == nullptr) return LogLevel::info;
  const std::string value(env);
  if (value == "quiet") return LogLevel::quiet;
  if (value == "debug") return LogLevel::debug;
  return LogLevel::info;
}

inline void log(LogLevel at_least, const std::string& message) {
  if (log_level() >= at_least) std::cerr << message << '\n';
}

struct RunResult {
  int exit_code = kExitOk;
  std::string data;        // rendered output document
  std::string destination; // path, or empty for stdout
};

// Executes a validated config: builds the graph and environment, runs the
// requested mode, and renders the output document. Throws qsbai errors on
// semantic problems; the caller decides what to do with the bytes and the
// exit code.
inline RunResult execute(const RunConfig& config) {
  validate(config);
  SymmetricDigraph graph = build_graph(config.graph);
  EnvironmentModel env =
      build_environment(config.environment, graph.num_vertices());
  log(LogLevel::debug,
      "graph: " + std::to_string(graph.num_vertices()) + " vertices, " +
          std::to_string(graph.num_arcs()) + " arcs, " +
          std::to_string(env.num_env_states()) + " environment states");

  RunResult result;
  result.destination = config.output.path;
  const OutputFormat format = config.output.format.value_or(
      config.mode == RunMode::sweep ? OutputFormat::csv : OutputFormat::json);

  switch (config.mode) {
    case RunMode::sweep: {
      const SweepResult sweep = run_sweep(graph, env, *config.horizon);
      result.data = format == OutputFormat::csv ? render_sweep_csv(sweep)
                                                : render_sweep_json(sweep);
      break;
    }
    case RunMode::verify: {
      const TheoremReport report =
          verify_theorem(graph, env, effective_family(config));
      result.data = format == OutputFormat::csv ? render_report_csv(report)
                                                : render_report_json(report);
      if (!report.bound_satisfied) result.exit_code = kExitBoundViolated;
      break;
    }
    case RunMode::sample: {
      const ExecutiveGraph ex = build_executive(graph, env.num_env_states());
      const WalkOperator op = make_walk_operator(ex, env);
      const WalkState evolved =
          op.evolve(initial_state(ex, env), *config.horizon);
      const std::vector<double> dist = recommendation_distribution(ex, evolved);
      const Vertex arm = sample_arm(dist, *config.seed);
      const SampleRecord record{arm, dist[arm], *config.horizon, *config.seed};
      result.data = format == OutputFormat::csv ? render_sample_csv(record)
                                                : render_sample_json(record);
      break;
    }
  }
  return result;
}

// Writes the rendered document to its destination (stdout when empty).
inline void deliver(const RunResult& result) {
  if (result.destination.empty()) {
    std::cout << result.data;
    return;
  }
  std::ofstream out(result.destination, std::ios::binary);
  if (!out) {
    throw ConfigValidationError("cannot open output file \"" +
                                result.destination + "\"");
  }
  out << result.data;
  log(LogLevel::info, "wrote " + result.destination);
}

inline std::string error_record(int exit_code, const std::string& kind,
                                const std::string& message) {
  nlohmann::json doc;
  doc["error"]["exit_code"] = exit_code;
  doc["error"]["kind"] = kind;
  doc["error"]["message"] = message;
  return doc.dump() + "\n";
}

}  // namespace qsbai
