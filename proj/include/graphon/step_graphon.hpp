#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "graphon/error.hpp"

namespace graphon {

/// Comparison tolerance for threshold and set-membership tests.
inline constexpr double kTol = 1e-12;

/// Default tolerance for end-to-end assertions.
inline constexpr double kCheckTol = 1e-9;

/// Piecewise-constant symmetric kernel on the unit square.
///
/// `boundaries` holds the m+1 cut points 0 = b_0 < b_1 < ... < b_m = 1;
/// `values(i, j)` is the kernel value on block i x block j.
struct StepGraphon {
  Eigen::VectorXd boundaries;
  Eigen::MatrixXd values;

  int block_count() const { return static_cast<int>(values.rows()); }

  /// Block masses mu_i = b_i - b_{i-1}.
  Eigen::VectorXd masses() const {
    const int m = block_count();
    return boundaries.tail(m) - boundaries.head(m);
  }
};

/// Checks all StepGraphon invariants; throws naming the first offender.
inline void validate(const StepGraphon& g) {
  const int m = g.block_count();
  const int nb = static_cast<int>(g.boundaries.size());
  if (nb != m + 1 || m < 1) {
    throw BadBoundaries("BadBoundaries: expected " + std::to_string(m + 1) +
                        " boundaries, got " + std::to_string(nb));
  }
  if (g.boundaries(0) != 0.0) throw BadBoundaries("BadBoundaries: boundary 0 must be exactly 0");
  if (g.boundaries(m) != 1.0) {
    throw BadBoundaries("BadBoundaries: boundary " + std::to_string(m) + " must be exactly 1");
  }
  for (int i = 0; i < m; ++i) {
    if (!(g.boundaries(i + 1) > g.boundaries(i))) {
      throw BadBoundaries("BadBoundaries: boundary " + std::to_string(i + 1) +
                          " not strictly increasing");
    }
  }
  if (g.values.cols() != m) {
    throw BadBoundaries("BadBoundaries: values matrix is not square of block count");
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double v = g.values(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw OutOfRange("OutOfRange: value at (" + std::to_string(i) + "," + std::to_string(j) +
                         ") outside [0,1]");
      }
      if (j > i && g.values(i, j) != g.values(j, i)) {
        throw NonSymmetric("NonSymmetric: values at (" + std::to_string(i) + "," +
                           std::to_string(j) + ") differ from transpose");
      }
    }
  }
}

/// Union of whole blocks of a StepGraphon; carries its total mass.
struct ActiveSet {
  std::vector<char> member;
  double mass = 0.0;

  bool contains(int i) const { return member[static_cast<std::size_t>(i)] != 0; }
  int count() const {
    return static_cast<int>(std::count(member.begin(), member.end(), char(1)));
  }
  bool empty() const { return count() == 0; }

  friend bool operator==(const ActiveSet& a, const ActiveSet& b) {
    return a.member == b.member;
  }
};

/// Builds an ActiveSet from a membership vector, recomputing the mass.
inline ActiveSet make_active_set(const StepGraphon& g, std::vector<char> member) {
  if (static_cast<int>(member.size()) != g.block_count()) {
    throw MismatchedBlockCount("MismatchedBlockCount: active set has " +
                               std::to_string(member.size()) + " entries, graphon has " +
                               std::to_string(g.block_count()) + " blocks");
  }
  ActiveSet k{std::move(member), 0.0};
  const Eigen::VectorXd mu = g.masses();
  for (int i = 0; i < g.block_count(); ++i) {
    if (k.contains(i)) k.mass += mu(i);
  }
  return k;
}

inline ActiveSet full_set(const StepGraphon& g) {
  return make_active_set(g, std::vector<char>(static_cast<std::size_t>(g.block_count()), 1));
}

inline ActiveSet empty_set(const StepGraphon& g) {
  return make_active_set(g, std::vector<char>(static_cast<std::size_t>(g.block_count()), 0));
}

/// d_w on block i: sum_j values(i,j) * mu_j.
inline double degree(const StepGraphon& g, int i) {
  if (i < 0 || i >= g.block_count()) {
    throw IndexOutOfRange("IndexOutOfRange: block " + std::to_string(i));
  }
  return g.values.row(i).dot(g.masses());
}

/// d_w^K on block i: the degree integral restricted to the active set K.
inline double restricted_degree(const StepGraphon& g, int i, const ActiveSet& k) {
  if (i < 0 || i >= g.block_count()) {
    throw IndexOutOfRange("IndexOutOfRange: block " + std::to_string(i));
  }
  if (static_cast<int>(k.member.size()) != g.block_count()) {
    throw MismatchedBlockCount("MismatchedBlockCount: active set does not match graphon");
  }
  const Eigen::VectorXd mu = g.masses();
  double d = 0.0;
  for (int j = 0; j < g.block_count(); ++j) {
    if (k.contains(j)) d += g.values(i, j) * mu(j);
  }
  return d;
}

/// e(w) = double integral of w over the unit square.
inline double edge_density(const StepGraphon& g) {
  const Eigen::VectorXd mu = g.masses();
  return mu.dot(g.values * mu);
}

namespace detail {

/// Index of the block covering x, with block j covering [b_{j-1}, b_j) and
/// the last block closed on the right.
inline int block_of(const StepGraphon& g, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw PointOutOfRange("PointOutOfRange: x = " + std::to_string(x));
  }
  const int m = g.block_count();
  for (int i = 0; i < m; ++i) {
    if (x < g.boundaries(i + 1)) return i;
  }
  return m - 1;
}

/// Merges two ascending boundary lists, de-duplicating within kTol.
inline std::vector<double> merge_boundaries(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  std::vector<double> all(a.data(), a.data() + a.size());
  all.insert(all.end(), b.data(), b.data() + b.size());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double x : all) {
    if (out.empty() || x - out.back() > kTol) out.push_back(x);
  }
  out.front() = 0.0;
  out.back() = 1.0;
  return out;
}

/// Re-expresses g on the given boundary list (a refinement of g's own).
inline StepGraphon refine_to(const StepGraphon& g, const std::vector<double>& bounds) {
  const int m = static_cast<int>(bounds.size()) - 1;
  StepGraphon out;
  out.boundaries = Eigen::Map<const Eigen::VectorXd>(bounds.data(), m + 1);
  out.values.resize(m, m);
  std::vector<int> parent(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    parent[static_cast<std::size_t>(i)] = block_of(g, 0.5 * (bounds[i] + bounds[i + 1]));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.values(i, j) = g.values(parent[static_cast<std::size_t>(i)],
                                  parent[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

}  // namespace detail

/// Rewrites both graphons on the union of their boundary lists. The outputs
/// represent the same functions pointwise a.e.
inline std::pair<StepGraphon, StepGraphon> common_refinement(const StepGraphon& g1,
                                                             const StepGraphon& g2) {
  const std::vector<double> bounds = detail::merge_boundaries(g1.boundaries, g2.boundaries);
  return {detail::refine_to(g1, bounds), detail::refine_to(g2, bounds)};
}

/// Pullback along the doubling map sigma_2(x) = 2x mod 1. Each block of g
/// reappears twice, at half scale, in each half of [0,1].
inline StepGraphon pullback_sigma2(const StepGraphon& g) {
  const int m = g.block_count();
  StepGraphon out;
  out.boundaries.resize(2 * m + 1);
  for (int i = 0; i <= m; ++i) {
    out.boundaries(i) = 0.5 * g.boundaries(i);
    out.boundaries(m + i) = 0.5 + 0.5 * g.boundaries(i);
  }
  out.boundaries(0) = 0.0;
  out.boundaries(2 * m) = 1.0;
  out.values.resize(2 * m, 2 * m);
  for (int i = 0; i < 2 * m; ++i) {
    for (int j = 0; j < 2 * m; ++j) {
      out.values(i, j) = g.values(i % m, j % m);
    }
  }
  return out;
}

/// Relabels equal-mass blocks: values'(i,j) = values(perm[i], perm[j]).
inline StepGraphon apply_block_permutation(const StepGraphon& g, const std::vector<int>& perm) {
  const int m = g.block_count();
  const Eigen::VectorXd mu = g.masses();
  for (int i = 1; i < m; ++i) {
    if (std::abs(mu(i) - mu(0)) > kTol) {
      throw UnequalBlockMasses("UnequalBlockMasses: block " + std::to_string(i) +
                               " mass differs from block 0");
    }
  }
  if (static_cast<int>(perm.size()) != m) {
    throw MismatchedBlockCount("MismatchedBlockCount: permutation size mismatch");
  }
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (int p : perm) {
    if (p < 0 || p >= m || seen[static_cast<std::size_t>(p)]) {
      throw BadParameter("BadParameter: not a permutation of block indices");
    }
    seen[static_cast<std::size_t>(p)] = 1;
  }
  StepGraphon out;
  out.boundaries = g.boundaries;
  out.values.resize(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.values(i, j) = g.values(perm[static_cast<std::size_t>(i)],
                                  perm[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

/// Averages g onto the uniform m-block partition (overlap-weighted).
inline StepGraphon resample_to_uniform(const StepGraphon& g, int m) {
  if (m < 1) throw BadGrid("BadGrid: block count must be >= 1");
  StepGraphon out;
  out.boundaries = Eigen::VectorXd::LinSpaced(m + 1, 0.0, 1.0);
  out.boundaries(0) = 0.0;
  out.boundaries(m) = 1.0;
  out.values = Eigen::MatrixXd::Zero(m, m);
  const int n = g.block_count();
  const double cell = 1.0 / m;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      double acc = 0.0;
      for (int p = 0; p < n; ++p) {
        const double ox = std::max(
            0.0, std::min(g.boundaries(p + 1), (i + 1) * cell) - std::max(g.boundaries(p), i * cell));
        if (ox <= 0.0) continue;
        for (int q = 0; q < n; ++q) {
          const double oy =
              std::max(0.0, std::min(g.boundaries(q + 1), (j + 1) * cell) -
                                std::max(g.boundaries(q), j * cell));
          if (oy > 0.0) acc += g.values(p, q) * ox * oy;
        }
      }
      out.values(i, j) = acc / (cell * cell);
      out.values(j, i) = out.values(i, j);
    }
  }
  return out;
}

/// L1 distance between two step graphons (integral of |g1 - g2|).
inline double l1_distance(const StepGraphon& g1, const StepGraphon& g2) {
  auto [r1, r2] = common_refinement(g1, g2);
  const Eigen::VectorXd mu = r1.masses();
  double acc = 0.0;
  for (int i = 0; i < r1.block_count(); ++i) {
    for (int j = 0; j < r1.block_count(); ++j) {
      acc += std::abs(r1.values(i, j) - r2.values(i, j)) * mu(i) * mu(j);
    }
  }
  return acc;
}

}  // namespace graphon
