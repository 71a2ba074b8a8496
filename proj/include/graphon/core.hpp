#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <tuple>
#include <utility>
#include <vector>

#include "graphon/step_graphon.hpp"

namespace graphon {

/// One peeling step record: block removed, its degree at removal, and the
/// running maximum of removal degrees so far.
struct PeelStep {
  int block;
  double degree_at_removal;
  double running_max;
};

/// Shell indices, degeneracy, and the peeling trace that produced them.
struct CoreDecomposition {
  Eigen::VectorXd shells;
  double degeneracy = 0.0;
  std::vector<PeelStep> peel_order;
};

/// The iteration K^0 = [0,1], K^{n+1} = filter(K^n) down to its fixed point.
/// stages[0] is the full set; stages[n] is K^n; terminal is the kappa-core.
struct CoreTrace {
  double kappa = 0.0;
  std::vector<ActiveSet> stages;
  ActiveSet terminal;
};

/// One filtration step: keeps the blocks of K whose restricted degree
/// (w.r.t. K) is >= kappa - kTol.
inline ActiveSet core_stage(const StepGraphon& g, double kappa, const ActiveSet& k) {
  const int m = g.block_count();
  const Eigen::VectorXd mu = g.masses();
  std::vector<char> next(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    if (!k.contains(i)) continue;
    double d = 0.0;
    for (int j = 0; j < m; ++j) {
      if (k.contains(j)) d += g.values(i, j) * mu(j);
    }
    if (d >= kappa - kTol) next[static_cast<std::size_t>(i)] = 1;
  }
  return make_active_set(g, std::move(next));
}

/// Runs the filtration from the full set to its fixed point (the kappa-core).
inline CoreTrace kappa_core(const StepGraphon& g, double kappa) {
  CoreTrace trace;
  trace.kappa = kappa;
  trace.stages.push_back(full_set(g));
  for (;;) {
    ActiveSet next = core_stage(g, kappa, trace.stages.back());
    if (next == trace.stages.back()) break;
    trace.stages.push_back(std::move(next));
  }
  trace.terminal = trace.stages.back();
  return trace;
}

/// Greedy peeling: repeatedly removes the active block of minimal current
/// restricted degree (ties to the lowest index). The shell of a removed
/// block is the running maximum of removal degrees; the degeneracy is the
/// final running maximum.
inline CoreDecomposition decompose(const StepGraphon& g) {
  const int m = g.block_count();
  const Eigen::VectorXd mu = g.masses();
  Eigen::VectorXd deg = g.values * mu;
  std::vector<char> active(static_cast<std::size_t>(m), 1);
  CoreDecomposition out;
  out.shells.resize(m);
  double running = 0.0;
  for (int step = 0; step < m; ++step) {
    int arg = -1;
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (active[static_cast<std::size_t>(i)] && deg(i) < dmin) {
        dmin = deg(i);
        arg = i;
      }
    }
    running = std::max(running, dmin);
    out.shells(arg) = running;
    out.peel_order.push_back({arg, dmin, running});
    active[static_cast<std::size_t>(arg)] = 0;
    for (int j = 0; j < m; ++j) {
      if (active[static_cast<std::size_t>(j)]) deg(j) -= g.values(j, arg) * mu(arg);
    }
  }
  out.degeneracy = running;
  return out;
}

/// Exact degeneracy by enumeration: max over nonempty block subsets S of
/// min_{i in S} d^S(i). Test oracle; capped at 20 blocks.
inline std::pair<double, std::vector<int>> brute_force_degeneracy(const StepGraphon& g) {
  const int m = g.block_count();
  if (m > 20) {
    throw TooManyBlocks("TooManyBlocks: brute force capped at 20, got " + std::to_string(m));
  }
  const Eigen::VectorXd mu = g.masses();
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(m);
  std::uint32_t gray = 0;
  double best = -1.0;
  std::uint32_t best_mask = 0;
  const std::uint32_t total = 1u << m;
  for (std::uint32_t idx = 1; idx < total; ++idx) {
    const std::uint32_t next_gray = idx ^ (idx >> 1);
    const std::uint32_t flipped = next_gray ^ gray;
    int b = 0;
    while (!((flipped >> b) & 1u)) ++b;
    const double sign = ((next_gray >> b) & 1u) ? 1.0 : -1.0;
    for (int j = 0; j < m; ++j) deg(j) += sign * g.values(j, b) * mu(b);
    gray = next_gray;
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if ((gray >> i) & 1u) dmin = std::min(dmin, deg(i));
    }
    if (dmin > best) {
      best = dmin;
      best_mask = gray;
    }
  }
  std::vector<int> witness;
  for (int i = 0; i < m; ++i) {
    if ((best_mask >> i) & 1u) witness.push_back(i);
  }
  return {best, witness};
}

/// Shell index of the point x (constant on blocks).
inline double shell_of(const StepGraphon& g, double x) {
  return decompose(g).shells(detail::block_of(g, x));
}

/// |K_kappa(w)| evaluated on the given grid of kappa values.
inline std::vector<std::pair<double, double>> mass_of_core_curve(const StepGraphon& g,
                                                                 const std::vector<double>& grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double kappa : grid) {
    out.emplace_back(kappa, kappa_core(g, kappa).terminal.mass);
  }
  return out;
}

}  // namespace graphon
