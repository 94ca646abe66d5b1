#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qsbai/environment.hpp"
#include "qsbai/errors.hpp"
#include "qsbai/graph.hpp"
#include "qsbai/walk.hpp"

namespace qsbai {

enum class GraphFamily { complete, complete_bipartite };

struct TimingSchedule {
  double theta;        // arcsin(sqrt(q_bar)), radians
  std::size_t s;       // floor(pi / (4 theta))
  std::size_t t_star;  // 2s, the predicted measurement step
};

// Measurement-timing rule. theta is computed exactly via arcsin of the
// square root; no small-angle shortcut, so it stays valid down to |V| = 2.
inline TimingSchedule timing(double q_bar) {
  if (!(q_bar > 0.0) || !(q_bar < 1.0)) {
    throw DegenerateEnvironment("mean winning probability must lie in (0,1), got " +
                                std::to_string(q_bar));
  }
  TimingSchedule tm;
  tm.theta = std::asin(std::sqrt(q_bar));
  // floor in the exact-arithmetic sense: a ratio sitting within rounding
  // noise below an integer (q_bar = 1/2 gives pi/4theta = 1 exactly) must
  // not lose a whole step to the last ulp of asin
  tm.s = static_cast<std::size_t>(
      std::floor(std::numbers::pi / (4.0 * tm.theta) + 1e-12));
  tm.t_star = 2 * tm.s;
  return tm;
}

// Lower bound on the peak recommendation probability of the best arm on a
// complete graph with self-loops:
//   (1/|V|) * (1 + (q_best - q_bar)(1 - 2 q_bar) / (q_bar (1 - q_bar))).
inline double bound_complete(const ArmStatistics& stats,
                             std::size_t num_vertices) {
  const double q_bar = stats.q_bar;
  if (!(q_bar > 0.0) || !(q_bar < 1.0)) {
    throw DegenerateEnvironment("bound undefined at mean winning probability " +
                                std::to_string(q_bar));
  }
  const double q_best = stats.q[stats.best_arm];
  return (1.0 / static_cast<double>(num_vertices)) *
         (1.0 + (q_best - q_bar) * (1.0 - 2.0 * q_bar) /
                    (q_bar * (1.0 - q_bar)));
}

// Complete-bipartite counterpart over the cluster holding the best arm:
// exactly half the complete-graph bound for the same cluster statistics.
inline double bound_bipartite(const ArmStatistics& stats,
                              std::size_t cluster_size) {
  if (std::find(stats.subset.begin(), stats.subset.end(), stats.best_arm) ==
      stats.subset.end()) {
    throw FamilyMismatch("best arm lies outside the statistics cluster");
  }
  return 0.5 * bound_complete(stats, cluster_size);
}

// True iff g is the complete graph with all self-loops on its vertex set.
inline bool is_complete_with_loops(const SymmetricDigraph& g) {
  const std::size_t n = g.num_vertices();
  if (g.num_arcs() != n * n) return false;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) != n) return false;
  }
  return true;
}

// Recovers the two clusters of a complete bipartite graph (first cluster
// contains vertex 0), or nullopt if g is not complete bipartite.
inline std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>>
bipartite_clusters(const SymmetricDigraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<char> in_second(n, 0);
  for (std::size_t a : g.in_arcs(0)) {
    const Vertex u = g.arc(a).origin;
    if (u == 0) return std::nullopt;  // self-loop
    in_second[u] = 1;
  }
  std::vector<Vertex> first, second;
  for (Vertex v = 0; v < n; ++v) {
    (in_second[v] ? second : first).push_back(v);
  }
  if (second.empty()) return std::nullopt;
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t expected = in_second[v] ? first.size() : second.size();
    if (g.degree(v) != expected) return std::nullopt;
    for (std::size_t a : g.in_arcs(v)) {
      if (in_second[g.arc(a).origin] == in_second[v]) return std::nullopt;
    }
  }
  return std::pair{std::move(first), std::move(second)};
}

namespace detail {

// Step of the first local maximum of a curve: locate the first strict
// decrease, take the plateau value just before it (or the global maximum if
// the curve never decreases), and return the earliest step within plateau
// tolerance of that value. The 1e-12 tolerance keeps floating-point
// plateaus around the peak from shifting the reported step.
inline std::size_t first_peak_step(std::span<const double> curve) {
  constexpr double kTol = 1e-12;
  double peak = *std::max_element(curve.begin(), curve.end());
  for (std::size_t t = 1; t < curve.size(); ++t) {
    if (curve[t] < curve[t - 1] - kTol) {
      peak = curve[t - 1];
      break;
    }
  }
  for (std::size_t t = 0; t < curve.size(); ++t) {
    if (curve[t] >= peak - kTol) return t;
  }
  return 0;
}

}  // namespace detail

struct SweepResult {
  std::size_t horizon;
  std::vector<std::vector<double>> curve;  // per step, the distribution P_t(.)
  std::optional<Vertex> best_arm;          // absent when the best arm ties
  std::optional<std::size_t> first_max_step;  // first peak of P_t(best_arm)
};

// Records the full recommendation distribution for t = 0..horizon and the
// first peak step of the best arm's curve. Deterministic given its inputs.
inline SweepResult run_sweep(const SymmetricDigraph& g,
                             const EnvironmentModel& env,
                             std::size_t horizon) {
  if (env.num_arms() != g.num_vertices()) {
    throw DimensionMismatch("environment arm count does not match graph");
  }
  const ExecutiveGraph ex = build_executive(g, env.num_env_states());
  const WalkOperator op = make_walk_operator(ex, env);
  WalkState state = initial_state(ex, env);

  SweepResult result;
  result.horizon = horizon;
  result.curve.reserve(horizon + 1);
  result.curve.push_back(recommendation_distribution(ex, state));
  std::vector<Amplitude> scratch(op.dimension());
  for (std::size_t t = 1; t <= horizon; ++t) {
    op.step(state.amplitudes, scratch);
    state.amplitudes.swap(scratch);
    result.curve.push_back(recommendation_distribution(ex, state));
  }
  try {
    result.best_arm = best_arm(env);
  } catch (const AmbiguousBestArm&) {
    return result;  // flat-environment sweeps are still meaningful
  }
  std::vector<double> best_curve(horizon + 1);
  for (std::size_t t = 0; t <= horizon; ++t) {
    best_curve[t] = result.curve[t][*result.best_arm];
  }
  result.first_max_step = detail::first_peak_step(best_curve);
  return result;
}

struct TheoremReport {
  GraphFamily family;
  double q_bar;            // mean q over V, or over the best arm's cluster
  double theta;
  std::size_t s;
  std::size_t t_star;
  double bound_rhs;
  double p_observed;       // simulated P_{t_star}(best arm)
  bool bound_satisfied;    // p_observed >= bound_rhs - 1e-9
};

// Evaluates the closed-form peak bound for the declared graph family and
// checks it against the simulated recommendation probability at t = 2s.
// The 1e-9 slack on the observed side absorbs rounding only; the bound
// itself is exact in real arithmetic.
inline TheoremReport verify_theorem(const SymmetricDigraph& g,
                                    const EnvironmentModel& env,
                                    GraphFamily family) {
  if (env.num_arms() != g.num_vertices()) {
    throw DimensionMismatch("environment arm count does not match graph");
  }
  const Vertex star = best_arm(env);

  ArmStatistics stats;
  double rhs = 0.0;
  if (family == GraphFamily::complete) {
    if (!is_complete_with_loops(g)) {
      throw FamilyMismatch("graph is not complete with self-loops");
    }
    stats = arm_statistics(env);
    rhs = bound_complete(stats, g.num_vertices());
  } else {
    auto clusters = bipartite_clusters(g);
    if (!clusters) {
      throw FamilyMismatch("graph is not complete bipartite");
    }
    const auto& [first, second] = *clusters;
    const std::vector<Vertex>& cluster =
        std::find(first.begin(), first.end(), star) != first.end() ? first
                                                                   : second;
    stats = arm_statistics(env, cluster);
    rhs = bound_bipartite(stats, cluster.size());
  }

  const TimingSchedule tm = timing(stats.q_bar);
  const ExecutiveGraph ex = build_executive(g, env.num_env_states());
  const WalkOperator op = make_walk_operator(ex, env);
  const WalkState evolved = op.evolve(initial_state(ex, env), tm.t_star);
  const double p = recommendation(ex, evolved, star);

  return TheoremReport{family,   stats.q_bar, tm.theta,          tm.s,
                       tm.t_star, rhs,        p,                 p >= rhs - 1e-9};
}

// Draws one arm by inverse CDF over the fixed vertex order. The generator
// and the uniform draw are pinned (mt19937_64, 53-bit mantissa), so the
// same (distribution, seed) pair always returns the same arm. Entries more
// negative than -1e-12 are rejected; tinier negatives are clamped to zero
// and the distribution renormalized.
inline Vertex sample_arm(std::span<const double> distribution,
                         std::uint64_t seed) {
  if (distribution.empty()) {
    throw InvalidDistribution("empty recommendation distribution");
  }
  double raw_sum = 0.0;
  for (double p : distribution) {
    if (p < -1e-12) {
      throw InvalidDistribution("negative probability " + std::to_string(p));
    }
    raw_sum += p;
  }
  if (std::abs(raw_sum - 1.0) > 1e-9) {
    throw InvalidDistribution("distribution sums to " + std::to_string(raw_sum));
  }
  std::vector<double> p(distribution.begin(), distribution.end());
  double sum = 0.0;
  for (double& x : p) {
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  std::mt19937_64 rng(seed);
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double cdf = 0.0;
  for (Vertex v = 0; v + 1 < p.size(); ++v) {
    cdf += p[v] / sum;
    if (u < cdf) return v;
  }
  return static_cast<Vertex>(p.size() - 1);
}

}  // namespace qsbai
