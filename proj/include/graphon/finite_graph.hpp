#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "graphon/analytic.hpp"
#include "graphon/rng.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

/// Simple undirected graph: node count plus a sorted, deduplicated edge set
/// of pairs (u, v) with u < v.
struct FiniteGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

inline FiniteGraph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  FiniteGraph g;
  g.n = n;
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (u == v) throw BadParameter("BadParameter: self-loop at node " + std::to_string(u));
    if (u < 0 || v >= n) {
      throw IndexOutOfRange("IndexOutOfRange: edge endpoint outside [0, n)");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  return g;
}

inline std::vector<std::vector<int>> adjacency(const FiniteGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
  for (const auto& [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

/// Nodes of the k-core: iteratively drop nodes of induced degree < k.
inline std::vector<int> k_core(const FiniteGraph& g, int k) {
  const auto adj = adjacency(g);
  std::vector<int> deg(static_cast<std::size_t>(g.n));
  std::vector<char> alive(static_cast<std::size_t>(g.n), 1);
  for (int v = 0; v < g.n; ++v) deg[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
  std::vector<int> queue;
  for (int v = 0; v < g.n; ++v) {
    if (deg[static_cast<std::size_t>(v)] < k) queue.push_back(v);
  }
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    if (!alive[static_cast<std::size_t>(v)]) continue;
    alive[static_cast<std::size_t>(v)] = 0;
    for (int u : adj[static_cast<std::size_t>(v)]) {
      if (alive[static_cast<std::size_t>(u)] && --deg[static_cast<std::size_t>(u)] < k) {
        queue.push_back(u);
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < g.n; ++v) {
    if (alive[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

/// Per-node shell indices and the degeneracy, by min-degree peeling.
struct GraphCoreResult {
  std::vector<int> shells;
  int degeneracy = 0;

  std::vector<int> k_core_members(int k) const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(shells.size()); ++v) {
      if (shells[static_cast<std::size_t>(v)] >= k) out.push_back(v);
    }
    return out;
  }
};

inline GraphCoreResult graph_decompose(const FiniteGraph& g) {
  const auto adj = adjacency(g);
  std::vector<int> deg(static_cast<std::size_t>(g.n));
  std::vector<char> alive(static_cast<std::size_t>(g.n), 1);
  for (int v = 0; v < g.n; ++v) deg[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
  GraphCoreResult out;
  out.shells.assign(static_cast<std::size_t>(g.n), 0);
  int running = 0;
  for (int step = 0; step < g.n; ++step) {
    int arg = -1, dmin = std::numeric_limits<int>::max();
    for (int v = 0; v < g.n; ++v) {
      if (alive[static_cast<std::size_t>(v)] && deg[static_cast<std::size_t>(v)] < dmin) {
        dmin = deg[static_cast<std::size_t>(v)];
        arg = v;
      }
    }
    running = std::max(running, dmin);
    out.shells[static_cast<std::size_t>(arg)] = running;
    alive[static_cast<std::size_t>(arg)] = 0;
    for (int u : adj[static_cast<std::size_t>(arg)]) {
      if (alive[static_cast<std::size_t>(u)]) --deg[static_cast<std::size_t>(u)];
    }
  }
  out.degeneracy = running;
  return out;
}

/// Test oracle: max over nonempty induced subgraphs of the min degree.
/// Capped at 16 nodes.
inline std::pair<int, std::vector<int>> brute_force_graph_degeneracy(const FiniteGraph& g) {
  if (g.n > 16) {
    throw TooManyBlocks("TooManyBlocks: graph brute force capped at 16 nodes");
  }
  std::vector<std::vector<char>> adj_mat(static_cast<std::size_t>(g.n),
                                         std::vector<char>(static_cast<std::size_t>(g.n), 0));
  for (const auto& [u, v] : g.edges) {
    adj_mat[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    adj_mat[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
  }
  int best = -1;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask < (1u << g.n); ++mask) {
    int dmin = std::numeric_limits<int>::max();
    for (int v = 0; v < g.n && dmin >= 0; ++v) {
      if (!((mask >> v) & 1u)) continue;
      int d = 0;
      for (int u = 0; u < g.n; ++u) {
        if (((mask >> u) & 1u) && adj_mat[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) ++d;
      }
      dmin = std::min(dmin, d);
    }
    if (dmin > best) {
      best = dmin;
      best_mask = mask;
    }
  }
  std::vector<int> witness;
  for (int v = 0; v < g.n; ++v) {
    if ((best_mask >> v) & 1u) witness.push_back(v);
  }
  return {best, witness};
}

/// Both sides of the edge-count bounds for a given degeneracy:
/// C(d+1, 2) <= |E| <= C(d+1, 2) + (n - d - 1) d.
struct KwprReport {
  int degeneracy = 0;
  long long lower = 0;
  long long edges = 0;
  long long upper = 0;
  bool holds = false;
};

inline KwprReport check_kwpr(const FiniteGraph& g) {
  KwprReport rep;
  rep.degeneracy = graph_decompose(g).degeneracy;
  const long long d = rep.degeneracy;
  rep.lower = d * (d + 1) / 2;
  rep.edges = static_cast<long long>(g.edges.size());
  rep.upper = rep.lower + (g.n - d - 1) * d;
  rep.holds = rep.lower <= rep.edges && rep.edges <= rep.upper;
  return rep;
}

namespace detail {

/// Shared sampler: x_1..x_n drawn in index order, then pair coins in
/// lexicographic order (0,1), (0,2), ..., (n-2, n-1).
template <typename Kernel>
FiniteGraph sample_graph_impl(Kernel&& w, int n, std::uint64_t seed) {
  if (n < 1) throw BadParameter("BadParameter: sample size must be >= 1");
  Rng rng(seed);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = rng.uniform();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < w(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)])) {
        edges.emplace_back(i, j);
      }
    }
  }
  return make_graph(n, std::move(edges));
}

}  // namespace detail

/// W-random graph from a step graphon; reproducible given (g, n, seed).
inline FiniteGraph sample_graph(const StepGraphon& g, int n, std::uint64_t seed) {
  return detail::sample_graph_impl(
      [&g](double x, double y) { return g.values(detail::block_of(g, x), detail::block_of(g, y)); },
      n, seed);
}

inline FiniteGraph sample_graph(const AnalyticGraphon& a, int n, std::uint64_t seed) {
  return detail::sample_graph_impl([&a](double x, double y) { return evaluate(a, x, y); }, n,
                                   seed);
}

/// The adjacency-matrix step graphon: n equal blocks, 0/1 values, zero
/// diagonal. Its degeneracy is the graph degeneracy divided by n.
inline StepGraphon graph_to_graphon(const FiniteGraph& g) {
  if (g.n < 1) throw BadParameter("BadParameter: graph must have >= 1 node");
  StepGraphon w;
  w.boundaries = Eigen::VectorXd::LinSpaced(g.n + 1, 0.0, 1.0);
  w.boundaries(0) = 0.0;
  w.boundaries(g.n) = 1.0;
  w.values = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const auto& [u, v] : g.edges) {
    w.values(u, v) = 1.0;
    w.values(v, u) = 1.0;
  }
  return w;
}

/// Edge-list text format: first line "n m", then m lines "u v" (0-based),
/// pairs sorted lexicographically.
inline void write_edge_list(std::ostream& os, const FiniteGraph& g) {
  os << g.n << ' ' << g.edges.size() << '\n';
  for (const auto& [u, v] : g.edges) os << u << ' ' << v << '\n';
}

inline FiniteGraph read_edge_list(std::istream& is) {
  int n = 0;
  long long m = 0;
  if (!(is >> n >> m)) throw ParseError("ParseError: missing edge list header");
  std::vector<std::pair<int, int>> edges;
  for (long long i = 0; i < m; ++i) {
    int u = 0, v = 0;
    if (!(is >> u >> v)) {
      throw ParseError("ParseError: edge " + std::to_string(i) + " missing");
    }
    edges.emplace_back(u, v);
  }
  return make_graph(n, std::move(edges));
}

}  // namespace graphon
