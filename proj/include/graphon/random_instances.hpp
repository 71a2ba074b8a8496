#pragma once

#include <utility>
#include <vector>

#include "graphon/finite_graph.hpp"
#include "graphon/rng.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

/// Random valid step graphon with `blocks` blocks. Random boundaries are
/// built from gaps bounded away from zero so validation always passes;
/// equal_mass forces the uniform partition (needed for permutation tests).
inline StepGraphon random_step_graphon(Rng& rng, int blocks, bool equal_mass = false) {
  StepGraphon g;
  g.boundaries.resize(blocks + 1);
  if (equal_mass) {
    g.boundaries = Eigen::VectorXd::LinSpaced(blocks + 1, 0.0, 1.0);
  } else {
    std::vector<double> gaps(static_cast<std::size_t>(blocks));
    double total = 0.0;
    for (double& gap : gaps) {
      gap = 0.1 + rng.uniform();
      total += gap;
    }
    double acc = 0.0;
    g.boundaries(0) = 0.0;
    for (int i = 0; i < blocks; ++i) {
      acc += gaps[static_cast<std::size_t>(i)] / total;
      g.boundaries(i + 1) = acc;
    }
  }
  g.boundaries(0) = 0.0;
  g.boundaries(blocks) = 1.0;
  g.values.resize(blocks, blocks);
  for (int i = 0; i < blocks; ++i) {
    for (int j = i; j < blocks; ++j) {
      const double v = rng.uniform();
      g.values(i, j) = v;
      g.values(j, i) = v;
    }
  }
  return g;
}

/// Erdos-Renyi graph G(n, p) with the portable generator.
inline FiniteGraph random_graph(Rng& rng, int n, double p) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) edges.emplace_back(i, j);
    }
  }
  return make_graph(n, std::move(edges));
}

inline FiniteGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return make_graph(n, std::move(edges));
}

inline FiniteGraph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return make_graph(n, std::move(edges));
}

}  // namespace graphon
