#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsbai/errors.hpp"
#include "qsbai/graph.hpp"

namespace qsbai {

using WinningPair = std::pair<Vertex, std::size_t>;  // (arm, environment state)

/// Bandit environment: the environment-state distributions eta_v and the
/// winning set W. Each eta row must sum to 1 within 1e-12; rows are then
/// renormalized exactly so that downstream walk unitarity does not inherit
/// input rounding. Immutable after construction.
class EnvironmentModel {
 public:
  EnvironmentModel(std::size_t num_arms, std::size_t num_env_states,
                   std::vector<double> eta, std::vector<WinningPair> winning)
      : num_arms_(num_arms),
        num_env_states_(num_env_states),
        eta_(std::move(eta)),
        winning_(std::move(winning)) {
    if (num_arms_ == 0) throw InvalidEnvironment("need at least one arm");
    if (num_env_states_ == 0) {
      throw InvalidEnvironment("need at least one environment state");
    }
    if (eta_.size() != num_arms_ * num_env_states_) {
      throw InvalidEnvironment(
          "eta table must have one row per arm and one column per state");
    }
    for (std::size_t v = 0; v < num_arms_; ++v) {
      double sum = 0.0;
      for (std::size_t s = 0; s < num_env_states_; ++s) {
        double p = eta_[v * num_env_states_ + s];
        if (p < 0.0) {
          throw InvalidEnvironment("negative eta entry at arm " +
                                   std::to_string(v));
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12) {
        throw InvalidEnvironment("eta row of arm " + std::to_string(v) +
                                 " sums to " + std::to_string(sum));
      }
      for (std::size_t s = 0; s < num_env_states_; ++s) {
        eta_[v * num_env_states_ + s] /= sum;
      }
    }
    std::sort(winning_.begin(), winning_.end());
    winning_.erase(std::unique(winning_.begin(), winning_.end()),
                   winning_.end());
    wins_.assign(num_arms_ * num_env_states_, 0);
    for (const auto& [v, s] : winning_) {
      if (v >= num_arms_ || s >= num_env_states_) {
        throw std::out_of_range("winning pair (" + std::to_string(v) + "," +
                                std::to_string(s) + ") out of range");
      }
      wins_[v * num_env_states_ + s] = 1;
    }
  }

  std::size_t num_arms() const { return num_arms_; }
  std::size_t num_env_states() const { return num_env_states_; }

  double eta(Vertex arm, std::size_t state) const {
    return eta_[arm * num_env_states_ + state];
  }

  // The classical oracle f(v, s): true iff arm v wins under state s.
  bool wins(Vertex arm, std::size_t state) const {
    return wins_[arm * num_env_states_ + state] != 0;
  }

  // W, sorted and deduplicated.
  const std::vector<WinningPair>& winning() const { return winning_; }

 private:
  std::size_t num_arms_;
  std::size_t num_env_states_;
  std::vector<double> eta_;
  std::vector<WinningPair> winning_;
  std::vector<char> wins_;
};

// q_v: probability that arm v wins, summed over its winning states.
inline double winning_probability(const EnvironmentModel& env, Vertex arm) {
  if (arm >= env.num_arms()) throw std::out_of_range("arm out of range");
  double q = 0.0;
  for (std::size_t s = 0; s < env.num_env_states(); ++s) {
    if (env.wins(arm, s)) q += env.eta(arm, s);
  }
  return q;
}

inline std::vector<double> winning_probabilities(const EnvironmentModel& env) {
  std::vector<double> q(env.num_arms());
  for (Vertex v = 0; v < env.num_arms(); ++v) {
    q[v] = winning_probability(env, v);
  }
  return q;
}

// The unique argmax of q. A tie at the maximum is an error: the analysis
// downstream assumes a unique best arm.
inline Vertex best_arm(const EnvironmentModel& env) {
  const std::vector<double> q = winning_probabilities(env);
  Vertex best = 0;
  for (Vertex v = 1; v < q.size(); ++v) {
    if (q[v] > q[best]) best = v;
  }
  for (Vertex v = 0; v < q.size(); ++v) {
    if (v != best && q[v] == q[best]) {
      throw AmbiguousBestArm("arms " + std::to_string(best) + " and " +
                             std::to_string(v) +
                             " tie for the highest winning probability");
    }
  }
  return best;
}

// Arithmetic mean of q over a vertex subset (unweighted).
inline double cluster_mean_q(const EnvironmentModel& env,
                             std::span<const Vertex> subset) {
  if (subset.empty()) {
    throw InvalidEnvironment("mean winning probability over an empty subset");
  }
  double sum = 0.0;
  for (Vertex v : subset) {
    if (v >= env.num_arms()) throw std::out_of_range("subset vertex out of range");
    sum += winning_probability(env, v);
  }
  return sum / static_cast<double>(subset.size());
}

struct ArmStatistics {
  std::vector<double> q;        // winning probability per arm
  Vertex best_arm;              // unique global argmax of q
  double q_bar;                 // mean of q over `subset`
  std::vector<Vertex> subset;   // vertex set the mean was taken over
};

inline ArmStatistics arm_statistics(const EnvironmentModel& env,
                                    std::span<const Vertex> subset) {
  ArmStatistics stats;
  stats.q = winning_probabilities(env);
  stats.best_arm = best_arm(env);
  stats.q_bar = cluster_mean_q(env, subset);
  stats.subset.assign(subset.begin(), subset.end());
  return stats;
}

inline ArmStatistics arm_statistics(const EnvironmentModel& env) {
  std::vector<Vertex> all(env.num_arms());
  for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
  return arm_statistics(env, all);
}

}  // namespace qsbai
