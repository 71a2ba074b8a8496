#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphon/core.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

/// Trajectory of the min-graphon boundary recursion
/// k_{n+1} = 1 - sqrt(1 - k_n^2 - 2 kappa), k_0 = 0.
struct RecursionResult {
  std::vector<double> values;  // k_0, k_1, ...
  bool converged = false;      // false means the radicand went negative
};

/// Iterates the recursion until convergence (successive difference < 1e-12),
/// abort (negative radicand, i.e. the next stage is empty), or n_max steps.
inline RecursionResult min_graphon_recursion(double kappa, int n_max) {
  RecursionResult r;
  double k = 0.0;
  r.values.push_back(k);
  for (int n = 0; n < n_max; ++n) {
    const double radicand = 1.0 - k * k - 2.0 * kappa;
    if (radicand < 0.0) return r;  // aborted
    const double next = 1.0 - std::sqrt(radicand);
    r.values.push_back(next);
    if (std::abs(next - k) < 1e-12) {
      r.converged = true;
      return r;
    }
    k = next;
  }
  return r;
}

/// The kappa-core of w(x,y) = min{x,y}: the interval
/// [ (1 - sqrt(1 - 4 kappa)) / 2, 1 ] for kappa <= 1/4, empty above.
inline std::optional<std::pair<double, double>> min_graphon_core(double kappa) {
  if (kappa > 0.25) return std::nullopt;
  return std::make_pair(0.5 * (1.0 - std::sqrt(1.0 - 4.0 * kappa)), 1.0);
}

/// Degeneracy of the two-block graphon (value b on [0,alpha]^2, a elsewhere):
/// (1-alpha) a + alpha b when b < a, else max(a, alpha b).
inline double two_block_degeneracy(double a, double b, double alpha) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0 && alpha > 0.0 && alpha < 1.0)) {
    throw BadParameter("BadParameter: two-block parameters must lie in (0,1)");
  }
  if (b < a) return (1.0 - alpha) * a + alpha * b;
  return std::max(a, alpha * b);
}

/// The extremal graphons for the edge-density bounds at degeneracy delta:
/// first the lower-extremal (1 on [0,delta]^2, e = delta^2), then the
/// upper-extremal (1 where max{x,y} >= 1-delta, e = delta(2-delta)).
inline std::pair<StepGraphon, StepGraphon> extremal_pair(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw BadParameter("BadParameter: delta must lie in (0,1)");
  }
  StepGraphon lower;
  lower.boundaries.resize(3);
  lower.boundaries << 0.0, delta, 1.0;
  lower.values.resize(2, 2);
  lower.values << 1.0, 0.0, 0.0, 0.0;
  StepGraphon upper;
  upper.boundaries.resize(3);
  upper.boundaries << 0.0, 1.0 - delta, 1.0;
  upper.values.resize(2, 2);
  upper.values << 0.0, 1.0, 1.0, 1.0;
  return {lower, upper};
}

/// Truncated parameter set for the two-chain graphon of the appendix
/// construction, instantiated from f(n) = 1 - 1/(n+1) with the parity-split
/// definitions of alpha and alpha'. Index 0 entries are the conventional
/// zeros (alpha_0 = eps_0 = 0).
struct AppendixSpec {
  int depth = 0;
  std::vector<double> alpha, alpha_p;  // alpha[0..N]
  std::vector<double> eps, eps_p;      // eps[0..N], eps[0] = 0
  std::vector<double> beta, beta_p;    // beta[0..N], beta[0] = 0

  /// kappa_i = (1/5)(1 + (eps_i + eps'_i)/2).
  double kappa(int i) const { return 0.2 * (1.0 + 0.5 * (eps[i] + eps_p[i])); }

  /// Smallest i >= 0 with eps_{i+1} < 5 kappa - 1.
  int i_kappa(double kappa_val) const {
    const double t = 5.0 * kappa_val - 1.0;
    for (int i = 0; i + 1 <= depth; ++i) {
      if (eps[static_cast<std::size_t>(i + 1)] < t) return i;
    }
    return depth;
  }
  int ip_kappa(double kappa_val) const {
    const double t = 5.0 * kappa_val - 1.0;
    for (int i = 0; i + 1 <= depth; ++i) {
      if (eps_p[static_cast<std::size_t>(i + 1)] < t) return i;
    }
    return depth;
  }
};

inline AppendixSpec appendix_spec(int n_depth) {
  if (n_depth < 4) throw BadDepth("BadDepth: truncation depth must be >= 4");
  const auto f = [](int n) { return 1.0 - 1.0 / (n + 1); };
  AppendixSpec s;
  s.depth = n_depth;
  s.alpha.assign(static_cast<std::size_t>(n_depth) + 1, 0.0);
  s.alpha_p.assign(static_cast<std::size_t>(n_depth) + 1, 0.0);
  s.eps.assign(static_cast<std::size_t>(n_depth) + 1, 0.0);
  s.eps_p.assign(static_cast<std::size_t>(n_depth) + 1, 0.0);
  s.beta.assign(static_cast<std::size_t>(n_depth) + 1, 0.0);
  s.beta_p.assign(static_cast<std::size_t>(n_depth) + 1, 0.0);
  for (int n = 1; n <= n_depth; ++n) {
    const std::size_t u = static_cast<std::size_t>(n);
    s.alpha[u] = (n % 2 == 1) ? 0.5 * (f(n - 1) + f(n + 1)) : f(n);
    s.alpha_p[u] = (n % 2 == 1) ? f(n) : 0.5 * (f(n - 1) + f(n + 1));
    s.eps[u] = s.alpha[u] - s.alpha[u - 1];
    s.eps_p[u] = s.alpha_p[u] - s.alpha_p[u - 1];
    s.beta[u] = s.beta[u - 1] + s.eps[u] * (1.0 - s.eps[u - 1]);
    s.beta_p[u] = s.beta_p[u - 1] + s.eps_p[u] * (1.0 - s.eps_p[u - 1]);
  }
  // Structural invariants of the construction.
  for (int n = 1; n <= n_depth; ++n) {
    const std::size_t u = static_cast<std::size_t>(n);
    if (!(s.eps[u] > 0.0 && s.eps_p[u] > 0.0)) {
      throw BadDepth("BadDepth: increments must stay positive");
    }
    if (n > 1 && (s.eps[u] > s.eps[u - 1] + kTol || s.eps_p[u] > s.eps_p[u - 1] + kTol)) {
      throw BadDepth("BadDepth: increments must be nonincreasing");
    }
    const bool ok = (n % 2 == 1) ? s.eps_p[u] > s.eps[u] : s.eps[u] > s.eps_p[u];
    if (!ok) throw BadDepth("BadDepth: interleaving violated at index " + std::to_string(n));
  }
  if (!(s.alpha.back() < 1.0 && s.alpha_p.back() < 1.0)) {
    throw BadDepth("BadDepth: partial sums must stay below 1");
  }
  return s;
}

/// Block indices of the truncated appendix graphon. The partition is, in
/// ascending order: left tail, L_N ... L_1, the three middle fifths
/// B1 = [1/5,2/5), B2 = [2/5,3/5), B3 = [3/5,4/5), R_1 ... R_N, right tail.
struct AppendixLayout {
  int n = 0;
  int left_tail() const { return 0; }
  int left(int i) const { return 1 + (n - i); }  // L_i, i = 1..N
  int band1() const { return n + 1; }
  int band2() const { return n + 2; }
  int band3() const { return n + 3; }
  int right(int i) const { return n + 3 + i; }  // R_i, i = 1..N
  int right_tail() const { return 2 * n + 4; }
  int block_count() const { return 2 * n + 5; }
};

/// Builds the truncated two-chain step graphon. Tail mass is kept as
/// explicit zero-valued blocks so the total mass is exactly 1.
inline StepGraphon appendix_graphon(const AppendixSpec& s) {
  const int n = s.depth;
  const AppendixLayout lay{n};
  const int m = lay.block_count();
  StepGraphon g;
  g.boundaries.resize(m + 1);
  g.boundaries(0) = 0.0;
  for (int i = n; i >= 1; --i) {
    g.boundaries(lay.left(i)) = 0.2 * (1.0 - s.alpha[static_cast<std::size_t>(i)]);
  }
  g.boundaries(lay.band1()) = 0.2;
  g.boundaries(lay.band2()) = 0.4;
  g.boundaries(lay.band3()) = 0.6;
  g.boundaries(lay.right(1)) = 0.8;
  for (int i = 1; i <= n; ++i) {
    g.boundaries(lay.right(i) + 1) = 0.2 * (4.0 + s.alpha_p[static_cast<std::size_t>(i)]);
  }
  g.boundaries(m) = 1.0;
  g.values = Eigen::MatrixXd::Zero(m, m);
  const auto set = [&g](int i, int j, double v) {
    g.values(i, j) = v;
    g.values(j, i) = v;
  };
  for (int i = 1; i + 1 <= n; ++i) set(lay.left(i + 1), lay.left(i), 1.0);
  for (int i = 1; i <= n; ++i) {
    set(lay.left(i), lay.band1(), 1.0 - s.eps[static_cast<std::size_t>(i - 1)]);
  }
  set(lay.band1(), lay.band2(), 1.0);
  set(lay.band2(), lay.band3(), 1.0);
  for (int i = 1; i <= n; ++i) {
    set(lay.band3(), lay.right(i), 1.0 - s.eps_p[static_cast<std::size_t>(i - 1)]);
  }
  for (int i = 1; i + 1 <= n; ++i) set(lay.right(i), lay.right(i + 1), 1.0);
  return g;
}

/// Departure bookkeeping for the two middle bands at kappa_i.
struct AlternationRow {
  int i = 0;
  double kappa = 0.0;
  int stage_mid_left = 0;   // first stage n with [2/5,3/5) not in K^n
  int stage_mid_right = 0;  // first stage n with [3/5,4/5) not in K^n
  std::string order;        // "left_first" | "right_first" | "simultaneous"
  int i_kappa = 0;
  int ip_kappa = 0;
  bool intervals_ok = false;  // stage intervals match the closed form
};

struct AlternationReport {
  std::vector<AlternationRow> rows;
  bool alternates = false;    // leave-order swaps with the parity of i
  bool intervals_ok = false;  // all rows
};

namespace detail {

inline int leave_stage(const CoreTrace& trace, int block) {
  for (std::size_t k = 0; k < trace.stages.size(); ++k) {
    if (!trace.stages[k].contains(block)) return static_cast<int>(k);
  }
  return -1;  // never leaves
}

}  // namespace detail

/// Peels the truncated appendix graphon at kappa_i for i = 1..i_max and
/// records when the bands [2/5,3/5) and [3/5,4/5) leave the active set,
/// plus whether the early stage sets match the closed-form intervals
/// K^k = [(1 - alpha_{i_kappa - k})/5, (4 + alpha'_{i'_kappa - k})/5)
/// for k <= min(i_kappa, i'_kappa), up to the truncation tail slack.
inline AlternationReport appendix_alternation(const AppendixSpec& s, int i_max) {
  if (i_max > s.depth - 10) {
    throw BadDepth("BadDepth: i_max must be <= depth - 10");
  }
  const StepGraphon g = appendix_graphon(s);
  const AppendixLayout lay{s.depth};
  const double slack = 0.2 * (1.0 - s.alpha[static_cast<std::size_t>(s.depth)]) + 1e-9;
  AlternationReport rep;
  rep.intervals_ok = true;
  for (int i = 1; i <= i_max; ++i) {
    AlternationRow row;
    row.i = i;
    row.kappa = s.kappa(i);
    row.i_kappa = s.i_kappa(row.kappa);
    row.ip_kappa = s.ip_kappa(row.kappa);
    const CoreTrace trace = kappa_core(g, row.kappa);
    row.stage_mid_left = detail::leave_stage(trace, lay.band2());
    row.stage_mid_right = detail::leave_stage(trace, lay.band3());
    if (row.stage_mid_left < row.stage_mid_right) {
      row.order = "left_first";
    } else if (row.stage_mid_right < row.stage_mid_left) {
      row.order = "right_first";
    } else {
      row.order = "simultaneous";
    }
    row.intervals_ok = true;
    const int kmax = std::min(row.i_kappa, row.ip_kappa);
    for (int k = 1; k <= kmax && k < static_cast<int>(trace.stages.size()); ++k) {
      const ActiveSet& st = trace.stages[static_cast<std::size_t>(k)];
      int lo = -1, hi = -1;
      for (int b = 0; b < g.block_count(); ++b) {
        if (st.contains(b)) {
          if (lo < 0) lo = b;
          hi = b;
        }
      }
      if (lo < 0) {
        row.intervals_ok = false;
        break;
      }
      const double left_edge = g.boundaries(lo);
      const double right_edge = g.boundaries(hi + 1);
      const double want_left = 0.2 * (1.0 - s.alpha[static_cast<std::size_t>(row.i_kappa - k)]);
      const double want_right =
          0.2 * (4.0 + s.alpha_p[static_cast<std::size_t>(row.ip_kappa - k)]);
      bool contiguous = true;
      for (int b = lo; b <= hi; ++b) {
        if (!st.contains(b)) contiguous = false;
      }
      if (!contiguous || std::abs(left_edge - want_left) > slack ||
          std::abs(right_edge - want_right) > slack) {
        row.intervals_ok = false;
      }
    }
    rep.intervals_ok = rep.intervals_ok && row.intervals_ok;
    rep.rows.push_back(row);
  }
  // Expected leave order per parity: odd i -> right band first, even -> left.
  rep.alternates = true;
  for (const AlternationRow& row : rep.rows) {
    const std::string expect = (row.i % 2 == 1) ? "right_first" : "left_first";
    if (row.order != expect) rep.alternates = false;
  }
  return rep;
}

}  // namespace graphon
