#pragma once

// Shared test utilities: dense reference operators built entrywise from the
// coin/oracle definitions (kept independent of WalkOperator's gather/scatter
// evolution path), plus seeded random instance generators.

#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsbai/qsbai.hpp"

namespace qsbai::test {

// Dense realization of the walk unitary, assembled coefficient by
// coefficient from eta, the original degrees and the winning set.
inline Eigen::MatrixXcd dense_walk_unitary(const ExecutiveGraph& ex,
                                           const EnvironmentModel& env) {
  const SymmetricDigraph& base = ex.base();
  const auto n = static_cast<Eigen::Index>(base.num_arcs());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  for (Vertex pv = 0; pv < base.num_vertices(); ++pv) {
    const auto [arm, state] = ex.pair_of(pv);
    const double deg = static_cast<double>(ex.original().degree(arm));
    const double sign = env.wins(arm, state) ? -1.0 : 1.0;
    std::span<const std::size_t> arcs = base.in_arcs(pv);
    for (std::size_t j = 0; j < arcs.size(); ++j) {  // source arc
      const auto [v, s] = ex.pair_of(base.arc(arcs[j]).origin);
      for (std::size_t i = 0; i < arcs.size(); ++i) {  // reflected arc
        const auto [vpp, spp] = ex.pair_of(base.arc(arcs[i]).origin);
        double gamma =
            2.0 * std::sqrt(env.eta(v, s) * env.eta(vpp, spp)) / deg -
            ((v == vpp && s == spp) ? 1.0 : 0.0);
        u(static_cast<Eigen::Index>(base.inverse_of(arcs[i])),
          static_cast<Eigen::Index>(arcs[j])) = sign * gamma;
      }
    }
  }
  return u;
}

// Dense classic-search unitary: Grover coin entries 2/deg - delta with
// marked-terminus signs.
inline Eigen::MatrixXcd dense_search_unitary(const SymmetricDigraph& g,
                                             std::span<const Vertex> marked) {
  std::vector<char> is_marked(g.num_vertices(), 0);
  for (Vertex v : marked) is_marked[v] = 1;
  const auto n = static_cast<Eigen::Index>(g.num_arcs());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const double deg = static_cast<double>(g.degree(v));
    const double sign = is_marked[v] ? -1.0 : 1.0;
    std::span<const std::size_t> arcs = g.in_arcs(v);
    for (std::size_t j = 0; j < arcs.size(); ++j) {
      for (std::size_t i = 0; i < arcs.size(); ++i) {
        double gamma = 2.0 / deg - (arcs[i] == arcs[j] ? 1.0 : 0.0);
        u(static_cast<Eigen::Index>(g.inverse_of(arcs[i])),
          static_cast<Eigen::Index>(arcs[j])) = sign * gamma;
      }
    }
  }
  return u;
}

inline Eigen::VectorXcd dense_initial_state(const ExecutiveGraph& ex,
                                            const EnvironmentModel& env) {
  const SymmetricDigraph& base = ex.base();
  Eigen::VectorXcd phi(static_cast<Eigen::Index>(base.num_arcs()));
  const double arc_count = static_cast<double>(ex.original().num_arcs());
  for (std::size_t a = 0; a < base.num_arcs(); ++a) {
    const auto [v, s] = ex.pair_of(base.arc(a).origin);
    const auto [vp, sp] = ex.pair_of(base.arc(a).terminus);
    phi(static_cast<Eigen::Index>(a)) =
        std::sqrt(env.eta(v, s) * env.eta(vp, sp) / arc_count);
  }
  return phi;
}

inline Eigen::VectorXcd to_eigen(const WalkState& state) {
  return Eigen::Map<const Eigen::VectorXcd>(
      state.amplitudes.data(), static_cast<Eigen::Index>(state.amplitudes.size()));
}

// Random eta table: uniform positive rows, normalized.
inline std::vector<double> random_eta(std::size_t num_arms, std::size_t num_states,
                                      std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  std::vector<double> eta(num_arms * num_states);
  for (std::size_t v = 0; v < num_arms; ++v) {
    double sum = 0.0;
    for (std::size_t s = 0; s < num_states; ++s) {
      eta[v * num_states + s] = uniform(rng);
      sum += eta[v * num_states + s];
    }
    for (std::size_t s = 0; s < num_states; ++s) eta[v * num_states + s] /= sum;
  }
  return eta;
}

// Random winning set: each pair marked with the given probability.
inline std::vector<WinningPair> random_winning(std::size_t num_arms,
                                               std::size_t num_states,
                                               double mark_probability,
                                               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<WinningPair> winning;
  for (Vertex v = 0; v < num_arms; ++v) {
    for (std::size_t s = 0; s < num_states; ++s) {
      if (uniform(rng) < mark_probability) winning.emplace_back(v, s);
    }
  }
  return winning;
}

inline EnvironmentModel random_environment(std::size_t num_arms,
                                           std::size_t num_states,
                                           double mark_probability,
                                           std::mt19937_64& rng) {
  return EnvironmentModel(num_arms, num_states,
                          random_eta(num_arms, num_states, rng),
                          random_winning(num_arms, num_states,
                                         mark_probability, rng));
}

// Random symmetric digraph with no isolated vertices: a path backbone plus
// random extra edges and the occasional self-loop.
inline SymmetricDigraph random_edge_graph(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (n == 1) {
    edges.emplace_back(0, 0);
  } else {
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  }
  const std::size_t extra = n / 2 + 1;
  for (std::size_t k = 0; k < extra; ++k) {
    Vertex u = pick(rng);
    Vertex v = uniform(rng) < 0.15 ? u : pick(rng);
    edges.emplace_back(u, v);
  }
  return build_from_edges(n, edges);
}

// The five-vertex example graph used in the bundled edge-list config.
inline SymmetricDigraph example_graph() {
  return build_from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {3, 4}});
}

struct Instance {
  SymmetricDigraph graph;
  EnvironmentModel env;
};

// Environment whose per-arm winning probabilities equal the target q values
// exactly. Two-state recipe: eta_v = (q_v, 1 - q_v), winning = V x {0};
// three-state recipe splits q_v over two winning states.
inline EnvironmentModel environment_for_q(std::span<const double> q,
                                          bool three_state,
                                          std::mt19937_64& rng) {
  const std::size_t n = q.size();
  if (!three_state) {
    std::vector<double> eta;
    eta.reserve(2 * n);
    std::vector<WinningPair> winning;
    for (Vertex v = 0; v < n; ++v) {
      eta.push_back(q[v]);
      eta.push_back(1.0 - q[v]);
      winning.emplace_back(v, 0);
    }
    return EnvironmentModel(n, 2, std::move(eta), std::move(winning));
  }
  std::uniform_real_distribution<double> split(0.2, 0.8);
  std::vector<double> eta;
  eta.reserve(3 * n);
  std::vector<WinningPair> winning;
  for (Vertex v = 0; v < n; ++v) {
    const double u = split(rng);
    eta.push_back(q[v] * u);
    eta.push_back(1.0 - q[v]);
    eta.push_back(q[v] * (1.0 - u));
    winning.emplace_back(v, 0);
    winning.emplace_back(v, 2);
  }
  return EnvironmentModel(n, 3, std::move(eta), std::move(winning));
}

// Random q vector in [0.01, 0.99] with a strictly unique maximum.
inline std::vector<double> random_q(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.01, 0.99);
  while (true) {
    std::vector<double> q(n);
    for (double& x : q) x = uniform(rng);
    std::size_t best = 0;
    bool tie = false;
    for (std::size_t v = 1; v < n; ++v) {
      if (q[v] > q[best]) best = v;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (v != best && q[v] == q[best]) tie = true;
    }
    if (!tie) return q;
  }
}

// Corpus for the dense-equivalence and stationarity checks: randomized
// instances across both theorem families plus edge-list graphs, all with
// |arcs of the executive graph| <= 2000.
inline std::vector<Instance> evolution_corpus() {
  std::mt19937_64 rng(20260810);
  std::vector<Instance> corpus;
  auto add = [&](SymmetricDigraph g, std::size_t num_states,
                 double mark_probability) {
    EnvironmentModel env = random_environment(g.num_vertices(), num_states,
                                              mark_probability, rng);
    corpus.push_back({std::move(g), std::move(env)});
  };
  for (std::size_t n : {2, 3, 4, 5, 6, 8, 10, 12}) {
    add(build_complete_with_loops(n), 2, 0.3);
  }
  add(build_complete_with_loops(5), 1, 0.4);
  add(build_complete_with_loops(9), 3, 0.3);
  add(build_complete_with_loops(22), 2, 0.3);  // 1936 product arcs
  for (auto [n1, n2] : std::vector<std::pair<std::size_t, std::size_t>>{
           {1, 1}, {2, 3}, {5, 4}, {10, 5}, {15, 8}, {10, 10}}) {
    add(build_complete_bipartite(n1, n2), 2, 0.3);
  }
  add(build_complete_bipartite(4, 4), 3, 0.3);
  add(build_complete_bipartite(7, 3), 1, 0.5);
  add(example_graph(), 2, 0.3);
  add(random_edge_graph(8, rng), 2, 0.25);
  add(random_edge_graph(14, rng), 2, 0.25);
  // one instance with an empty winning set and one fully marked
  corpus.push_back({build_complete_with_loops(6),
                    EnvironmentModel(6, 2, random_eta(6, 2, rng), {})});
  std::vector<WinningPair> all;
  for (Vertex v = 0; v < 4; ++v) {
    for (std::size_t s = 0; s < 2; ++s) all.emplace_back(v, s);
  }
  corpus.push_back({build_complete_with_loops(4),
                    EnvironmentModel(4, 2, random_eta(4, 2, rng), all)});
  return corpus;
}

}  // namespace qsbai::test
