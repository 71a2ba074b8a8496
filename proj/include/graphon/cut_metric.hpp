#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "graphon/core.hpp"
#include "graphon/rng.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

/// The exact cut-norm value together with the optimizing block rectangle.
/// S and T are block indices of the common refinement of the two inputs.
struct CutNormWitness {
  double value = 0.0;
  std::vector<int> s, t;
  int sign = 1;
  StepGraphon refined_a, refined_b;  // the common refinement used
};

/// Exact d_box between two step graphons.
///
/// On the common refinement, D_ij = (v1_ij - v2_ij) mu_i mu_j. The objective
/// is bilinear in block-membership fractions, so the supremum is attained at
/// unions of whole blocks. S is enumerated over all subsets in binary
/// counting order with incremental column-sum updates; for each S the
/// optimal T is read off from the column-sum signs, with both signs of the
/// absolute value evaluated. The witness is the first optimum encountered.
inline CutNormWitness cut_norm(const StepGraphon& g1, const StepGraphon& g2) {
  auto [r1, r2] = common_refinement(g1, g2);
  const int m = r1.block_count();
  if (m > 24) {
    throw TooManyBlocks("TooManyBlocks: cut_norm refinement capped at 24, got " +
                        std::to_string(m));
  }
  const Eigen::VectorXd mu = r1.masses();
  Eigen::MatrixXd diff = (r1.values - r2.values).cwiseProduct(mu * mu.transpose());
  CutNormWitness best;
  best.value = 0.0;
  best.sign = 1;
  Eigen::VectorXd col = Eigen::VectorXd::Zero(m);
  std::uint32_t mask = 0;
  std::uint32_t best_mask = 0;
  int best_sign = 1;
  double best_value = 0.0;
  const std::uint32_t total = 1u << m;
  for (std::uint32_t s = 1; s < total; ++s) {
    std::uint32_t flipped = s ^ mask;
    while (flipped != 0) {
      const int b = std::countr_zero(flipped);
      flipped &= flipped - 1;
      const double sgn = ((s >> b) & 1u) ? 1.0 : -1.0;
      col += sgn * diff.row(b).transpose();
    }
    mask = s;
    double pos = 0.0, neg = 0.0;
    for (int j = 0; j < m; ++j) {
      if (col(j) > 0.0) {
        pos += col(j);
      } else {
        neg -= col(j);
      }
    }
    if (pos > best_value) {
      best_value = pos;
      best_mask = s;
      best_sign = 1;
    }
    if (neg > best_value) {
      best_value = neg;
      best_mask = s;
      best_sign = -1;
    }
  }
  best.value = best_value;
  best.sign = best_sign;
  for (int i = 0; i < m; ++i) {
    if ((best_mask >> i) & 1u) best.s.push_back(i);
  }
  // Recover T from the column sums of the winning S.
  Eigen::VectorXd wcol = Eigen::VectorXd::Zero(m);
  for (int i : best.s) wcol += diff.row(i).transpose();
  for (int j = 0; j < m; ++j) {
    if (best_sign * wcol(j) > 0.0) best.t.push_back(j);
  }
  best.refined_a = std::move(r1);
  best.refined_b = std::move(r2);
  return best;
}

/// Independent oracle: full enumeration over both S and T. Capped at 12
/// refinement blocks.
inline double cut_norm_bruteforce(const StepGraphon& g1, const StepGraphon& g2) {
  auto [r1, r2] = common_refinement(g1, g2);
  const int m = r1.block_count();
  if (m > 12) {
    throw TooManyBlocks("TooManyBlocks: cut_norm_bruteforce capped at 12, got " +
                        std::to_string(m));
  }
  const Eigen::VectorXd mu = r1.masses();
  Eigen::MatrixXd diff = (r1.values - r2.values).cwiseProduct(mu * mu.transpose());
  const std::uint32_t total = 1u << m;
  double best = 0.0;
  Eigen::VectorXd col = Eigen::VectorXd::Zero(m);
  std::uint32_t smask = 0;
  for (std::uint32_t s = 0; s < total; ++s) {
    std::uint32_t flipped = s ^ smask;
    while (flipped != 0) {
      const int b = std::countr_zero(flipped);
      flipped &= flipped - 1;
      col += (((s >> b) & 1u) ? 1.0 : -1.0) * diff.row(b).transpose();
    }
    smask = s;
    double tsum = 0.0;
    std::uint32_t tmask = 0;
    for (std::uint32_t t = 0; t < total; ++t) {
      std::uint32_t tf = t ^ tmask;
      while (tf != 0) {
        const int b = std::countr_zero(tf);
        tf &= tf - 1;
        tsum += (((t >> b) & 1u) ? 1.0 : -1.0) * col(b);
      }
      tmask = t;
      best = std::max(best, std::abs(tsum));
    }
  }
  return best;
}

/// A certified interval around delta_box, plus the permutation witness of
/// the upper bound and the resampling slack of each input.
struct DeltaBoxEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<int> best_permutation;
  std::string method;            // "exhaustive" | "local-search"
  double resample_defect_a = 0.0;  // L1 distance input -> uniform-grid proxy
  double resample_defect_b = 0.0;
};

enum class DeltaBoxMode { kExhaustive, kLocalSearch };

namespace detail {

inline double permuted_cut_norm(const StepGraphon& a, const StepGraphon& b,
                                const std::vector<int>& perm) {
  return cut_norm(apply_block_permutation(a, perm), b).value;
}

}  // namespace detail

/// Bounds delta_box(g1, g2).
///
/// Upper bound: both inputs are averaged onto the uniform grid of
/// `grid_blocks` equal-mass blocks and the minimum of d_box over block
/// permutations of the first argument is taken (all permutations when
/// exhaustive; seeded 2-swap first-improvement hill climbing with
/// `restarts` restarts otherwise). The L1 defects of the two resampling
/// steps are reported alongside, not folded into the bound.
///
/// Lower bound (certified): max of |e(g1) - e(g2)| (edge density is
/// invariant under measure-preserving maps and is dominated by d_box via
/// S = T = [0,1]) and (|delta(g1) - delta(g2)| / 2)^2 (the continuity
/// inequality rearranged).
inline DeltaBoxEstimate delta_box_bounds(const StepGraphon& g1, const StepGraphon& g2,
                                         int grid_blocks, DeltaBoxMode mode, int restarts = 32,
                                         std::uint64_t seed = 0) {
  if (grid_blocks < 1) throw BadGrid("BadGrid: grid must have >= 1 block");
  if (mode == DeltaBoxMode::kExhaustive && grid_blocks > 8) {
    throw BadGrid("BadGrid: exhaustive mode requires grid <= 8");
  }
  DeltaBoxEstimate est;
  const StepGraphon a = resample_to_uniform(g1, grid_blocks);
  const StepGraphon b = resample_to_uniform(g2, grid_blocks);
  est.resample_defect_a = l1_distance(g1, a);
  est.resample_defect_b = l1_distance(g2, b);

  est.lower = std::abs(edge_density(g1) - edge_density(g2));
  const double dgap = std::abs(decompose(g1).degeneracy - decompose(g2).degeneracy);
  est.lower = std::max(est.lower, 0.25 * dgap * dgap);

  std::vector<int> perm(static_cast<std::size_t>(grid_blocks));
  std::iota(perm.begin(), perm.end(), 0);
  if (mode == DeltaBoxMode::kExhaustive) {
    est.method = "exhaustive";
    est.upper = std::numeric_limits<double>::infinity();
    std::vector<int> p = perm;
    do {
      const double v = detail::permuted_cut_norm(a, b, p);
      if (v < est.upper) {
        est.upper = v;
        est.best_permutation = p;
      }
    } while (std::next_permutation(p.begin(), p.end()));
  } else {
    est.method = "local-search";
    est.upper = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
      Rng rng(seed + static_cast<std::uint64_t>(r));
      std::vector<int> p = perm;
      for (int i = grid_blocks - 1; i > 0; --i) {
        std::swap(p[static_cast<std::size_t>(i)],
                  p[static_cast<std::size_t>(rng.uniform_int(0, i))]);
      }
      double cur = detail::permuted_cut_norm(a, b, p);
      bool improved = true;
      while (improved) {
        improved = false;
        for (int i = 0; i < grid_blocks && !improved; ++i) {
          for (int j = i + 1; j < grid_blocks && !improved; ++j) {
            std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
            const double v = detail::permuted_cut_norm(a, b, p);
            if (v < cur - kTol) {
              cur = v;
              improved = true;
            } else {
              std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
            }
          }
        }
      }
      if (cur < est.upper) {
        est.upper = cur;
        est.best_permutation = p;
      }
    }
  }
  return est;
}

/// Both sides of the degeneracy continuity bound
/// |delta(g1) - delta(g2)| <= 2 sqrt(d_box(g1, g2)).
struct ContinuityReport {
  double degeneracy_gap = 0.0;
  double cut_norm_value = 0.0;
  double bound = 0.0;  // 2 sqrt(cut_norm_value)
  bool holds = false;  // gap <= bound + 1e-9
};

inline ContinuityReport check_continuity(const StepGraphon& g1, const StepGraphon& g2) {
  ContinuityReport rep;
  rep.degeneracy_gap = std::abs(decompose(g1).degeneracy - decompose(g2).degeneracy);
  rep.cut_norm_value = cut_norm(g1, g2).value;
  rep.bound = 2.0 * std::sqrt(rep.cut_norm_value);
  rep.holds = rep.degeneracy_gap <= rep.bound + kCheckTol;
  return rep;
}

}  // namespace graphon
