#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsbai/analysis.hpp"
#include "qsbai/environment.hpp"
#include "qsbai/errors.hpp"
#include "qsbai/graph.hpp"

namespace qsbai {

enum class RunMode { sweep, verify, sample };
enum class OutputFormat { csv, json };

struct GraphSpec {
  enum class Kind { complete_loops, complete_bipartite, edge_list };

  Kind kind = Kind::complete_loops;
  std::size_t n = 0;   // complete_loops, edge_list
  std::size_t n1 = 0;  // complete_bipartite
  std::size_t n2 = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;  // edge_list

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;

  std::size_t num_vertices() const {
    return kind == Kind::complete_bipartite ? n1 + n2 : n;
  }
};

struct EnvironmentSpec {
  std::size_t num_env_states = 0;
  std::vector<std::vector<double>> eta;  // one row per arm
  std::vector<WinningPair> winning;

  friend bool operator==(const EnvironmentSpec&, const EnvironmentSpec&) = default;
};

struct OutputSpec {
  std::string path;  // empty means stdout
  std::optional<OutputFormat> format;

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

/// One run of the tool: which graph and environment to build, what to do
/// with them, and where the result goes. Parsed from a JSON config file;
/// see the README for the exact schema.
struct RunConfig {
  RunMode mode = RunMode::sweep;
  GraphSpec graph;
  EnvironmentSpec environment;
  std::optional<std::size_t> horizon;     // sweep: T; sample: measurement step
  std::optional<std::uint64_t> seed;      // sample
  std::optional<GraphFamily> family;      // verify; inferred from kind if absent
  OutputSpec output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

inline void require_keys(const nlohmann::json& obj,
                         std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigParseError("unknown key \"" + key + "\" in " + where);
    }
  }
}

inline const nlohmann::json& require(const nlohmann::json& obj,
                                     const char* key,
                                     const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigParseError("missing key \"" + std::string(key) + "\" in " +
                           where);
  }
  return *it;
}

}  // namespace detail

inline RunMode parse_mode(const std::string& text) {
  if (text == "sweep") return RunMode::sweep;
  if (text == "verify") return RunMode::verify;
  if (text == "sample") return RunMode::sample;
  throw ConfigParseError("unknown mode \"" + text + "\"");
}

inline GraphFamily parse_family(const std::string& text) {
  if (text == "complete") return GraphFamily::complete;
  if (text == "complete_bipartite") return GraphFamily::complete_bipartite;
  throw ConfigParseError("unknown family \"" + text + "\"");
}

inline OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigParseError("unknown output format \"" + text + "\"");
}

inline std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::sweep: return "sweep";
    case RunMode::verify: return "verify";
    case RunMode::sample: return "sample";
  }
  return {};
}

inline std::string to_string(GraphFamily family) {
  return family == GraphFamily::complete ? "complete" : "complete_bipartite";
}

inline std::string to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

inline std::string to_string(GraphSpec::Kind kind) {
  switch (kind) {
    case GraphSpec::Kind::complete_loops: return "complete_loops";
    case GraphSpec::Kind::complete_bipartite: return "complete_bipartite";
    case GraphSpec::Kind::edge_list: return "edge_list";
  }
  return {};
}

// Parses a config document. Structural problems (bad JSON, wrong types,
// unknown keys) raise ConfigParseError; semantic checks live in validate().
inline RunConfig parse_config(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr,
                                             /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw ConfigParseError("config is not valid JSON");
  try {
    detail::require_keys(doc,
                         {"mode", "graph", "environment", "horizon", "seed",
                          "family", "output"},
                         "config");
    RunConfig config;
    config.mode =
        parse_mode(detail::require(doc, "mode", "config").get<std::string>());

    const nlohmann::json& graph = detail::require(doc, "graph", "config");
    const std::string kind =
        detail::require(graph, "kind", "graph").get<std::string>();
    if (kind == "complete_loops") {
      detail::require_keys(graph, {"kind", "n"}, "graph");
      config.graph.kind = GraphSpec::Kind::complete_loops;
      config.graph.n = detail::require(graph, "n", "graph").get<std::size_t>();
    } else if (kind == "complete_bipartite") {
      detail::require_keys(graph, {"kind", "n1", "n2"}, "graph");
      config.graph.kind = GraphSpec::Kind::complete_bipartite;
      config.graph.n1 = detail::require(graph, "n1", "graph").get<std::size_t>();
      config.graph.n2 = detail::require(graph, "n2", "graph").get<std::size_t>();
    } else if (kind == "edge_list") {
      detail::require_keys(graph, {"kind", "n", "edges"}, "graph");
      config.graph.kind = GraphSpec::Kind::edge_list;
      config.graph.n = detail::require(graph, "n", "graph").get<std::size_t>();
      for (const auto& edge : detail::require(graph, "edges", "graph")) {
        if (!edge.is_array() || edge.size() != 2) {
          throw ConfigParseError("each edge must be a pair [u, v]");
        }
        config.graph.edges.emplace_back(edge[0].get<Vertex>(),
                                        edge[1].get<Vertex>());
      }
    } else {
      throw ConfigParseError("unknown graph kind \"" + kind + "\"");
    }

    const nlohmann::json& env = detail::require(doc, "environment", "config");
    detail::require_keys(env, {"num_env_states", "eta", "winning"},
                         "environment");
    config.environment.num_env_states =
        detail::require(env, "num_env_states", "environment").get<std::size_t>();
    for (const auto& row : detail::require(env, "eta", "environment")) {
      config.environment.eta.push_back(row.get<std::vector<double>>());
    }
    for (const auto& pair : detail::require(env, "winning", "environment")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ConfigParseError("each winning entry must be a pair [arm, state]");
      }
      config.environment.winning.emplace_back(pair[0].get<Vertex>(),
                                              pair[1].get<std::size_t>());
    }

    if (doc.contains("horizon")) {
      config.horizon = doc["horizon"].get<std::size_t>();
    }
    if (doc.contains("seed")) {
      config.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("family")) {
      config.family = parse_family(doc["family"].get<std::string>());
    }
    if (doc.contains("output")) {
      const nlohmann::json& output = doc["output"];
      detail::require_keys(output, {"path", "format"}, "output");
      if (output.contains("path")) {
        config.output.path = output["path"].get<std::string>();
      }
      if (output.contains("format")) {
        config.output.format =
            parse_format(output["format"].get<std::string>());
      }
    }
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParseError(std::string("malformed config: ") + e.what());
  }
}

inline std::string serialize_config(const RunConfig& config) {
  nlohmann::json doc;
  doc["mode"] = to_string(config.mode);
  nlohmann::json graph;
  graph["kind"] = to_string(config.graph.kind);
  switch (config.graph.kind) {
    case GraphSpec::Kind::complete_loops:
      graph["n"] = config.graph.n;
      break;
    case GraphSpec::Kind::complete_bipartite:
      graph["n1"] = config.graph.n1;
      graph["n2"] = config.graph.n2;
      break;
    case GraphSpec::Kind::edge_list: {
      graph["n"] = config.graph.n;
      nlohmann::json edges = nlohmann::json::array();
      for (const auto& [u, v] : config.graph.edges) {
        edges.push_back({u, v});
      }
      graph["edges"] = std::move(edges);
      break;
    }
  }
  doc["graph"] = std::move(graph);

  nlohmann::json env;
  env["num_env_states"] = config.environment.num_env_states;
  env["eta"] = config.environment.eta;
  nlohmann::json winning = nlohmann::json::array();
  for (const auto& [arm, state] : config.environment.winning) {
    winning.push_back({arm, state});
  }
  env["winning"] = std::move(winning);
  doc["environment"] = std::move(env);

  if (config.horizon) doc["horizon"] = *config.horizon;
  if (config.seed) doc["seed"] = *config.seed;
  if (config.family) doc["family"] = to_string(*config.family);
  if (!config.output.path.empty() || config.output.format) {
    nlohmann::json output;
    output["path"] = config.output.path;
    if (config.output.format) {
      output["format"] = to_string(*config.output.format);
    }
    doc["output"] = std::move(output);
  }
  return doc.dump(2) + "\n";
}

inline SymmetricDigraph build_graph(const GraphSpec& spec) {
  switch (spec.kind) {
    case GraphSpec::Kind::complete_loops:
      return build_complete_with_loops(spec.n);
    case GraphSpec::Kind::complete_bipartite:
      return build_complete_bipartite(spec.n1, spec.n2);
    case GraphSpec::Kind::edge_list:
      return build_from_edges(spec.n, spec.edges);
  }
  throw ConfigValidationError("unreachable graph kind");
}

inline EnvironmentModel build_environment(const EnvironmentSpec& spec,
                                          std::size_t num_arms) {
  std::vector<double> eta;
  eta.reserve(num_arms * spec.num_env_states);
  for (const auto& row : spec.eta) {
    if (row.size() != spec.num_env_states) {
      throw ConfigValidationError("eta row length does not match num_env_states");
    }
    eta.insert(eta.end(), row.begin(), row.end());
  }
  return EnvironmentModel(num_arms, spec.num_env_states, std::move(eta),
                          spec.winning);
}

// The graph family a verify run checks against: explicit "family" key, or
// inferred from the graph kind. Edge-list graphs must declare it.
inline GraphFamily effective_family(const RunConfig& config) {
  if (config.family) return *config.family;
  switch (config.graph.kind) {
    case GraphSpec::Kind::complete_loops:
      return GraphFamily::complete;
    case GraphSpec::Kind::complete_bipartite:
      return GraphFamily::complete_bipartite;
    case GraphSpec::Kind::edge_list:
      break;
  }
  throw ConfigValidationError(
      "verify mode on an edge-list graph needs an explicit \"family\"");
}

// Semantic cross-checks. Structural shape was already enforced by
// parse_config; graph and environment constructors run their own checks
// when the run executes.
inline void validate(const RunConfig& config) {
  if (config.environment.eta.size() != config.graph.num_vertices()) {
    throw ConfigValidationError(
        "eta must have exactly one row per graph vertex (" +
        std::to_string(config.environment.eta.size()) + " rows for " +
        std::to_string(config.graph.num_vertices()) + " vertices)");
  }
  for (const auto& row : config.environment.eta) {
    if (row.size() != config.environment.num_env_states) {
      throw ConfigValidationError("eta row length does not match num_env_states");
    }
  }
  switch (config.mode) {
    case RunMode::sweep:
      if (!config.horizon) {
        throw ConfigValidationError("sweep mode needs \"horizon\"");
      }
      break;
    case RunMode::sample:
      if (!config.horizon) {
        throw ConfigValidationError("sample mode needs \"horizon\"");
      }
      if (!config.seed) {
        throw ConfigValidationError("sample mode needs \"seed\"");
      }
      break;
    case RunMode::verify:
      effective_family(config);  // throws for undeclared edge-list family
      break;
  }
}

}  // namespace qsbai
