#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qsbai/errors.hpp"

namespace qsbai {

using Vertex = std::uint32_t;

struct Arc {
  Vertex origin;
  Vertex terminus;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Finite symmetric digraph. Every arc (u,v) comes with its inverse (v,u);
/// a self-loop is a single arc that is its own inverse. Arc order is fixed
/// at construction and indexes amplitude vectors downstream, so builders
/// are careful to produce a deterministic ordering. Immutable once built.
class SymmetricDigraph {
 public:
  SymmetricDigraph(std::size_t num_vertices, std::vector<Arc> arcs)
      : num_vertices_(num_vertices), arcs_(std::move(arcs)) {
    if (num_vertices_ == 0) {
      throw InvalidGraph("graph must have at least one vertex");
    }
    arc_lookup_.reserve(arcs_.size());
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      const Arc& arc = arcs_[a];
      if (arc.origin >= num_vertices_ || arc.terminus >= num_vertices_) {
        throw std::out_of_range("arc endpoint out of range: (" +
                                std::to_string(arc.origin) + "," +
                                std::to_string(arc.terminus) + ")");
      }
      if (!arc_lookup_.emplace(pack(arc.origin, arc.terminus), a).second) {
        throw InvalidGraph("duplicate arc (" + std::to_string(arc.origin) +
                           "," + std::to_string(arc.terminus) + ")");
      }
    }
    inverse_.resize(arcs_.size());
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      auto it = arc_lookup_.find(pack(arcs_[a].terminus, arcs_[a].origin));
      if (it == arc_lookup_.end()) {
        throw InvalidGraph("missing inverse of arc (" +
                           std::to_string(arcs_[a].origin) + "," +
                           std::to_string(arcs_[a].terminus) + ")");
      }
      inverse_[a] = it->second;
    }
    // CSR of in-arc lists T(v), each ascending in arc index.
    in_offsets_.assign(num_vertices_ + 1, 0);
    for (const Arc& arc : arcs_) ++in_offsets_[arc.terminus + 1];
    for (std::size_t v = 0; v < num_vertices_; ++v) {
      if (in_offsets_[v + 1] == 0) {
        throw InvalidGraph("isolated vertex " + std::to_string(v));
      }
      in_offsets_[v + 1] += in_offsets_[v];
    }
    in_list_.resize(arcs_.size());
    std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      in_list_[cursor[arcs_[a].terminus]++] = a;
    }
  }

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_arcs() const { return arcs_.size(); }
  const Arc& arc(std::size_t a) const { return arcs_[a]; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  // Index of the reversed arc; an involution.
  std::size_t inverse_of(std::size_t a) const { return inverse_[a]; }

  // T(v): arcs terminating at v, ascending in arc index.
  std::span<const std::size_t> in_arcs(Vertex v) const {
    return {in_list_.data() + in_offsets_[v],
            in_offsets_[v + 1] - in_offsets_[v]};
  }

  std::size_t degree(Vertex v) const {
    return in_offsets_[v + 1] - in_offsets_[v];
  }

  bool has_arc(Vertex origin, Vertex terminus) const {
    return origin < num_vertices_ && terminus < num_vertices_ &&
           arc_lookup_.contains(pack(origin, terminus));
  }

  std::size_t arc_index(Vertex origin, Vertex terminus) const {
    auto it = arc_lookup_.find(pack(origin, terminus));
    if (it == arc_lookup_.end()) {
      throw std::out_of_range("no arc (" + std::to_string(origin) + "," +
                              std::to_string(terminus) + ")");
    }
    return it->second;
  }

 private:
  std::uint64_t pack(Vertex o, Vertex t) const {
    return static_cast<std::uint64_t>(o) * num_vertices_ + t;
  }

  std::size_t num_vertices_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> in_offsets_;
  std::vector<std::size_t> in_list_;
  std::unordered_map<std::uint64_t, std::size_t> arc_lookup_;
};

// Complete graph on n vertices including all self-loops: arcs are all n^2
// ordered pairs, so deg(v) = n and the adjacency matrix is all-ones.
inline SymmetricDigraph build_complete_with_loops(std::size_t n) {
  if (n == 0) throw InvalidGraph("complete graph needs n >= 1");
  std::vector<Arc> arcs;
  arcs.reserve(n * n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) arcs.push_back({u, v});
  }
  return SymmetricDigraph(n, std::move(arcs));
}

// Complete bipartite graph: cluster one is vertices [0, n1), cluster two is
// [n1, n1+n2). No self-loops, no intra-cluster arcs; |arcs| = 2*n1*n2.
inline SymmetricDigraph build_complete_bipartite(std::size_t n1,
                                                 std::size_t n2) {
  if (n1 == 0 || n2 == 0) {
    throw InvalidGraph("complete bipartite graph needs both cluster sizes >= 1");
  }
  std::vector<Arc> arcs;
  arcs.reserve(2 * n1 * n2);
  for (Vertex u = 0; u < n1; ++u) {
    for (Vertex w = static_cast<Vertex>(n1); w < n1 + n2; ++w) {
      arcs.push_back({u, w});
    }
  }
  for (Vertex w = static_cast<Vertex>(n1); w < n1 + n2; ++w) {
    for (Vertex u = 0; u < n1; ++u) {
      arcs.push_back({w, u});
    }
  }
  std::sort(arcs.begin(), arcs.end());
  return SymmetricDigraph(n1 + n2, std::move(arcs));
}

// Symmetric digraph from an undirected edge list. Duplicate edges collapse,
// a pair (v,v) denotes a self-loop, and every vertex must end up with
// degree >= 1.
inline SymmetricDigraph build_from_edges(
    std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  if (n == 0) throw InvalidGraph("graph must have at least one vertex");
  std::vector<Arc> arcs;
  arcs.reserve(2 * edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::out_of_range("edge endpoint out of range: (" +
                              std::to_string(u) + "," + std::to_string(v) +
                              ")");
    }
    arcs.push_back({u, v});
    if (u != v) arcs.push_back({v, u});
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return SymmetricDigraph(n, std::move(arcs));
}

/// Direct product of a graph G with the complete-with-loops graph on the
/// environment-state set. Product vertex (v, s) gets index v*|Sigma| + s;
/// product arcs are ordered by (original arc index, s, s'), which keeps
/// amplitude indexing reproducible and makes the back-map to original arcs
/// a plain division.
class ExecutiveGraph {
 public:
  ExecutiveGraph(SymmetricDigraph original, std::size_t num_env_states)
      : original_(std::move(original)),
        num_env_states_(num_env_states),
        base_(build_product(original_, num_env_states)) {}

  const SymmetricDigraph& base() const { return base_; }
  const SymmetricDigraph& original() const { return original_; }
  std::size_t num_arms() const { return original_.num_vertices(); }
  std::size_t num_env_states() const { return num_env_states_; }

  Vertex vertex_of(Vertex arm, std::size_t env_state) const {
    return static_cast<Vertex>(arm * num_env_states_ + env_state);
  }

  std::pair<Vertex, std::size_t> pair_of(Vertex product_vertex) const {
    return {static_cast<Vertex>(product_vertex / num_env_states_),
            product_vertex % num_env_states_};
  }

  // Original arc underlying a product arc.
  std::size_t original_arc(std::size_t product_arc) const {
    return product_arc / (num_env_states_ * num_env_states_);
  }

 private:
  static SymmetricDigraph build_product(const SymmetricDigraph& g,
                                        std::size_t m) {
    if (m == 0) throw InvalidGraph("need at least one environment state");
    std::vector<Arc> arcs;
    arcs.reserve(g.num_arcs() * m * m);
    for (std::size_t a = 0; a < g.num_arcs(); ++a) {
      const Arc& base = g.arc(a);
      for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t sp = 0; sp < m; ++sp) {
          arcs.push_back({static_cast<Vertex>(base.origin * m + s),
                          static_cast<Vertex>(base.terminus * m + sp)});
        }
      }
    }
    return SymmetricDigraph(g.num_vertices() * m, std::move(arcs));
  }

  SymmetricDigraph original_;
  std::size_t num_env_states_;
  SymmetricDigraph base_;
};

inline ExecutiveGraph build_executive(SymmetricDigraph g,
                                      std::size_t num_env_states) {
  return ExecutiveGraph(std::move(g), num_env_states);
}

}  // namespace qsbai
