#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsbai/environment.hpp"
#include "qsbai/errors.hpp"
#include "qsbai/graph.hpp"

namespace qsbai {

using Amplitude = std::complex<double>;

/// Unit complex vector indexed by the arcs of the graph the walk runs on.
struct WalkState {
  std::vector<Amplitude> amplitudes;

  double norm() const {
    double sum = 0.0;
    for (const Amplitude& a : amplitudes) sum += std::norm(a);
    return std::sqrt(sum);
  }
};

/// Per-vertex coin blocks in rank-one form. The block acting on the arcs
/// T(v) is the reflection 2*x x^T - I for a real unit vector x, so applying
/// it costs one inner product and one axpy instead of a dense multiply, and
/// unitarity is exact up to rounding. Weight entries are stored aligned
/// with the graph's in-arc lists.
class CoinBlocks {
 public:
  explicit CoinBlocks(const SymmetricDigraph& g)
      : offsets_(g.num_vertices() + 1, 0), weights_(g.num_arcs(), 0.0) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      offsets_[v + 1] = offsets_[v] + g.degree(v);
    }
  }

  std::span<const double> weights(Vertex v) const {
    return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::span<double> weights(Vertex v) {
    return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t num_vertices() const { return offsets_.size() - 1; }
  std::size_t num_arcs() const { return weights_.size(); }

  // The full |T(v)| x |T(v)| block, row-major. Entry (i, j) couples the
  // j-th in-arc of v to the reverse of the i-th in-arc. Intended for
  // verification; evolution never materializes it.
  std::vector<Amplitude> dense_block(Vertex v) const {
    std::span<const double> w = weights(v);
    std::vector<Amplitude> block(w.size() * w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = 0; j < w.size(); ++j) {
        block[i * w.size() + j] = 2.0 * w[i] * w[j] - (i == j ? 1.0 : 0.0);
      }
    }
    return block;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<double> weights_;
};

// Szegedy coin for the walk on the executive graph. At product vertex
// (v', s') the reflection vector has entry sqrt(eta_v(s) / deg_G(v')) for
// the in-arc arriving from (v, s); the block depends on v' only through
// deg_G(v') and not on s' at all.
inline CoinBlocks build_szegedy_coin(const ExecutiveGraph& ex,
                                     const EnvironmentModel& env) {
  if (env.num_arms() != ex.num_arms() ||
      env.num_env_states() != ex.num_env_states()) {
    throw DimensionMismatch("environment does not match executive graph");
  }
  const SymmetricDigraph& base = ex.base();
  CoinBlocks coin(base);
  const std::size_t m = ex.num_env_states();
  for (Vertex pv = 0; pv < base.num_vertices(); ++pv) {
    const double deg = static_cast<double>(ex.original().degree(
        static_cast<Vertex>(pv / m)));
    std::span<const std::size_t> arcs = base.in_arcs(pv);
    std::span<double> w = coin.weights(pv);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const Vertex origin = base.arc(arcs[i]).origin;
      const auto [v, s] = std::pair{static_cast<Vertex>(origin / m),
                                    origin % m};
      w[i] = std::sqrt(env.eta(v, s) / deg);
    }
  }
  return coin;
}

// Grover coin: constant off-diagonal 2/deg(v), diagonal 2/deg(v) - 1.
// The reflection vector is uniform, 1/sqrt(deg(v)).
inline CoinBlocks build_grover_coin(const SymmetricDigraph& g) {
  CoinBlocks coin(g);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::span<double> w = coin.weights(v);
    const double x = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
    for (double& entry : w) entry = x;
  }
  return coin;
}

// Oracle signs for QSBAI: -1 exactly on arcs whose terminus pair lies in W.
inline std::vector<double> build_oracle(const ExecutiveGraph& ex,
                                        const EnvironmentModel& env) {
  if (env.num_arms() != ex.num_arms() ||
      env.num_env_states() != ex.num_env_states()) {
    throw DimensionMismatch("environment does not match executive graph");
  }
  const SymmetricDigraph& base = ex.base();
  std::vector<double> signs(base.num_arcs(), 1.0);
  for (std::size_t a = 0; a < base.num_arcs(); ++a) {
    const auto [arm, state] = ex.pair_of(base.arc(a).terminus);
    if (env.wins(arm, state)) signs[a] = -1.0;
  }
  return signs;
}

// Oracle signs for classic spatial search: -1 on arcs into marked vertices.
inline std::vector<double> build_oracle(const SymmetricDigraph& g,
                                        std::span<const Vertex> marked) {
  std::vector<char> is_marked(g.num_vertices(), 0);
  for (Vertex v : marked) {
    if (v >= g.num_vertices()) throw std::out_of_range("marked vertex out of range");
    is_marked[v] = 1;
  }
  std::vector<double> signs(g.num_arcs(), 1.0);
  for (std::size_t a = 0; a < g.num_arcs(); ++a) {
    if (is_marked[g.arc(a).terminus]) signs[a] = -1.0;
  }
  return signs;
}

/// One walk step U = U0 R_f in matrix-free form: flip oracle signs, apply
/// the coin block at each terminus over its in-arcs, write the result onto
/// the reversed arcs. Holds flattened copies of the arc structure it needs,
/// so it stays valid independently of the graph it was built from.
class WalkOperator {
 public:
  WalkOperator(const SymmetricDigraph& g, CoinBlocks coin,
               std::vector<double> oracle_signs)
      : num_vertices_(g.num_vertices()),
        num_arcs_(g.num_arcs()),
        coin_(std::move(coin)),
        signs_(std::move(oracle_signs)) {
    if (coin_.num_vertices() != num_vertices_ ||
        coin_.num_arcs() != num_arcs_) {
      throw DimensionMismatch("coin blocks do not match the graph");
    }
    if (signs_.size() != num_arcs_) {
      throw DimensionMismatch("oracle sign vector does not match the graph");
    }
    for (double s : signs_) {
      if (s != 1.0 && s != -1.0) {
        throw Error("oracle signs must be +1 or -1");
      }
    }
    in_offsets_.resize(num_vertices_ + 1);
    in_offsets_[0] = 0;
    in_list_.reserve(num_arcs_);
    for (Vertex v = 0; v < num_vertices_; ++v) {
      std::span<const std::size_t> arcs = g.in_arcs(v);
      in_list_.insert(in_list_.end(), arcs.begin(), arcs.end());
      in_offsets_[v + 1] = in_list_.size();
    }
    inverse_.resize(num_arcs_);
    for (std::size_t a = 0; a < num_arcs_; ++a) inverse_[a] = g.inverse_of(a);
  }

  std::size_t dimension() const { return num_arcs_; }
  const CoinBlocks& coin() const { return coin_; }
  const std::vector<double>& oracle_signs() const { return signs_; }

  // out <- U * in; the buffers must not alias. Reduction over each block
  // runs in ascending arc order, independent of any partitioning, so
  // repeated runs are bit-identical.
  void step(std::span<const Amplitude> in, std::span<Amplitude> out) const {
    if (in.size() != num_arcs_ || out.size() != num_arcs_) {
      throw DimensionMismatch("state length does not match operator");
    }
    for (Vertex v = 0; v < num_vertices_; ++v) {
      const std::size_t begin = in_offsets_[v];
      const std::size_t end = in_offsets_[v + 1];
      std::span<const double> w = coin_.weights(v);
      Amplitude inner{0.0, 0.0};
      for (std::size_t i = begin; i < end; ++i) {
        const std::size_t a = in_list_[i];
        inner += w[i - begin] * (signs_[a] * in[a]);
      }
      inner *= 2.0;
      for (std::size_t i = begin; i < end; ++i) {
        const std::size_t a = in_list_[i];
        out[inverse_[a]] = w[i - begin] * inner - signs_[a] * in[a];
      }
    }
  }

  WalkState apply(const WalkState& state) const {
    WalkState next;
    next.amplitudes.resize(num_arcs_);
    step(state.amplitudes, next.amplitudes);
    return next;
  }

  WalkState evolve(WalkState state, std::size_t steps) const {
    if (state.amplitudes.size() != num_arcs_) {
      throw DimensionMismatch("state length does not match operator");
    }
    std::vector<Amplitude> scratch(num_arcs_);
    for (std::size_t t = 0; t < steps; ++t) {
      step(state.amplitudes, scratch);
      state.amplitudes.swap(scratch);
    }
    return state;
  }

  // Dense realization of U, row-major dimension^2. Exists as an oracle for
  // verification; evolution never touches it.
  std::vector<Amplitude> dense_unitary() const {
    std::vector<Amplitude> dense(num_arcs_ * num_arcs_, Amplitude{0.0, 0.0});
    for (Vertex v = 0; v < num_vertices_; ++v) {
      const std::size_t begin = in_offsets_[v];
      const std::size_t end = in_offsets_[v + 1];
      std::span<const double> w = coin_.weights(v);
      for (std::size_t i = begin; i < end; ++i) {
        const std::size_t b = in_list_[i];
        const std::size_t row = inverse_[b];
        for (std::size_t j = begin; j < end; ++j) {
          const std::size_t a = in_list_[j];
          double gamma = 2.0 * w[j - begin] * w[i - begin] - (a == b ? 1.0 : 0.0);
          dense[row * num_arcs_ + a] = signs_[a] * gamma;
        }
      }
    }
    return dense;
  }

 private:
  std::size_t num_vertices_;
  std::size_t num_arcs_;
  CoinBlocks coin_;
  std::vector<double> signs_;
  std::vector<std::size_t> in_offsets_;
  std::vector<std::size_t> in_list_;
  std::vector<std::size_t> inverse_;
};

// U = U0 R_f for QSBAI on the executive graph: Szegedy coin plus the
// winning-case oracle.
inline WalkOperator make_walk_operator(const ExecutiveGraph& ex,
                                       const EnvironmentModel& env) {
  return WalkOperator(ex.base(), build_szegedy_coin(ex, env),
                      build_oracle(ex, env));
}

// Classic spatial search operator: Grover coin plus marked-vertex oracle.
inline WalkOperator make_search_operator(const SymmetricDigraph& g,
                                         std::span<const Vertex> marked) {
  return WalkOperator(g, build_grover_coin(g), build_oracle(g, marked));
}

// Flow-weighted initial state: amplitude sqrt(eta_v(s) * eta_v'(s') / |A|)
// on the product arc ((v,s),(v',s')), |A| counted on the original graph.
// Unit norm follows from eta normalization and sum_v deg(v) = |A|.
inline WalkState initial_state(const ExecutiveGraph& ex,
                               const EnvironmentModel& env) {
  if (env.num_arms() != ex.num_arms() ||
      env.num_env_states() != ex.num_env_states()) {
    throw DimensionMismatch("environment does not match executive graph");
  }
  const SymmetricDigraph& base = ex.base();
  const double arc_count = static_cast<double>(ex.original().num_arcs());
  WalkState state;
  state.amplitudes.resize(base.num_arcs());
  for (std::size_t a = 0; a < base.num_arcs(); ++a) {
    const auto [v, s] = ex.pair_of(base.arc(a).origin);
    const auto [vp, sp] = ex.pair_of(base.arc(a).terminus);
    state.amplitudes[a] =
        std::sqrt(env.eta(v, s) * env.eta(vp, sp) / arc_count);
  }
  return state;
}

// mu(v): probability of finding the particle at vertex v, i.e. the summed
// squared amplitude over arcs terminating at v.
inline double vertex_probability(const SymmetricDigraph& g,
                                 const WalkState& state, Vertex v) {
  if (state.amplitudes.size() != g.num_arcs()) {
    throw DimensionMismatch("state length does not match graph");
  }
  if (v >= g.num_vertices()) throw std::out_of_range("vertex out of range");
  double sum = 0.0;
  for (std::size_t a : g.in_arcs(v)) sum += std::norm(state.amplitudes[a]);
  return sum;
}

inline double vertex_probability(const ExecutiveGraph& ex,
                                 const WalkState& state,
                                 Vertex product_vertex) {
  return vertex_probability(ex.base(), state, product_vertex);
}

// P_t(w): probability that measurement recommends arm w, summed over all
// environment states of the measured product vertex.
inline double recommendation(const ExecutiveGraph& ex, const WalkState& state,
                             Vertex arm) {
  if (arm >= ex.num_arms()) throw std::out_of_range("arm out of range");
  double sum = 0.0;
  for (std::size_t s = 0; s < ex.num_env_states(); ++s) {
    sum += vertex_probability(ex.base(), state, ex.vertex_of(arm, s));
  }
  return sum;
}

// Full recommendation distribution over arms in one pass over the arcs.
inline std::vector<double> recommendation_distribution(
    const ExecutiveGraph& ex, const WalkState& state) {
  const SymmetricDigraph& base = ex.base();
  if (state.amplitudes.size() != base.num_arcs()) {
    throw DimensionMismatch("state length does not match executive graph");
  }
  std::vector<double> dist(ex.num_arms(), 0.0);
  const std::size_t m = ex.num_env_states();
  for (std::size_t a = 0; a < base.num_arcs(); ++a) {
    dist[base.arc(a).terminus / m] += std::norm(state.amplitudes[a]);
  }
  return dist;
}

// Success probability of classic spatial search: total measurement
// probability over the marked vertices.
inline double marked_vertex_probability(const SymmetricDigraph& g,
                                        std::span<const Vertex> marked,
                                        const WalkState& state) {
  double sum = 0.0;
  for (Vertex v : marked) sum += vertex_probability(g, state, v);
  return sum;
}

}  // namespace qsbai
