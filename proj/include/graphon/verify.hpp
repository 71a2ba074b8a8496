#pragma once

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "graphon/closed_forms.hpp"
#include "graphon/core.hpp"
#include "graphon/cut_metric.hpp"
#include "graphon/finite_graph.hpp"
#include "graphon/random_instances.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

/// Outcome of one verification suite run. Empty failures means exit 0.
struct VerifyReport {
  std::string suite;
  int trials = 0;
  std::vector<std::string> failures;
  double wall_ms = 0.0;
};

/// End-to-end assertion tolerance; GRAPHON_TOL overrides the 1e-9 default
/// (the 1e-12 arithmetic tolerance kTol is fixed).
inline double assertion_tol() {
  if (const char* env = std::getenv("GRAPHON_TOL")) {
    const double v = std::atof(env);
    if (v > 0.0) return v;
  }
  return kCheckTol;
}

namespace detail {

inline void fail(VerifyReport& rep, std::uint64_t seed, const std::string& what) {
  rep.failures.push_back("seed=" + std::to_string(seed) + ": " + what);
}

inline bool same_set(const ActiveSet& a, const ActiveSet& b) { return a.member == b.member; }

}  // namespace detail

/// Core-lemma properties on random step graphons: stage nesting and trace
/// length, core nesting in kappa, core mass bound, curve monotonicity and
/// left-continuity, core/shell duality, the degree sandwich, and the
/// high-degree mass bound.
inline VerifyReport verify_lemmas_core(int trials, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep{"lemmas-core", trials, {}, 0.0};
  const double tol = assertion_tol();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    Rng rng(s);
    const StepGraphon g = random_step_graphon(rng, 1 + rng.uniform_int(0, 7));
    const CoreDecomposition dec = decompose(g);
    const int m = g.block_count();

    const double k1 = rng.uniform();
    const double k2 = rng.uniform();
    const double khi = std::max(k1, k2);
    const double klo = std::min(k1, k2);
    const CoreTrace thi = kappa_core(g, khi);
    const CoreTrace tlo = kappa_core(g, klo);
    for (int i = 0; i < m; ++i) {
      if (thi.terminal.contains(i) && !tlo.terminal.contains(i)) {
        detail::fail(rep, s, "core nesting violated");
        break;
      }
    }
    if (static_cast<int>(thi.stages.size()) > m + 1) {
      detail::fail(rep, s, "trace longer than m+1");
    }
    for (std::size_t n = 1; n < thi.stages.size(); ++n) {
      for (int i = 0; i < m; ++i) {
        if (thi.stages[n].contains(i) && !thi.stages[n - 1].contains(i)) {
          detail::fail(rep, s, "stages not nested");
        }
      }
    }
    if (!thi.terminal.empty() && thi.terminal.mass < khi - tol) {
      detail::fail(rep, s, "nonempty core with mass < kappa");
    }

    // Duality and curve checks on a grid plus all shell values +- 1e-9.
    std::vector<double> kappas;
    for (int i = 0; i <= 10; ++i) kappas.push_back(i / 10.0);
    for (int i = 0; i < m; ++i) {
      kappas.push_back(std::max(0.0, dec.shells(i) - 1e-9));
      kappas.push_back(std::min(1.0, dec.shells(i) + 1e-9));
      kappas.push_back(dec.shells(i));
    }
    std::sort(kappas.begin(), kappas.end());
    double prev_mass = 1.0;
    bool first = true;
    for (double kappa : kappas) {
      const CoreTrace tr = kappa_core(g, kappa);
      for (int i = 0; i < m; ++i) {
        const bool in_core = tr.terminal.contains(i);
        const bool by_shell = dec.shells(i) >= kappa - kTol;
        if (in_core != by_shell) {
          detail::fail(rep, s, "core/shell duality violated at kappa=" + std::to_string(kappa));
        }
      }
      if (!first && tr.terminal.mass > prev_mass + kTol) {
        detail::fail(rep, s, "core mass curve not nonincreasing");
      }
      prev_mass = tr.terminal.mass;
      first = false;
    }
    for (int i = 0; i < m; ++i) {
      const double sv = dec.shells(i);
      const double at = kappa_core(g, sv).terminal.mass;
      const double below = kappa_core(g, std::max(0.0, sv - 1e-9)).terminal.mass;
      if (std::abs(at - below) > tol) {
        detail::fail(rep, s, "core mass not left-continuous at a shell value");
      }
    }

    double dmin = 1.0, dmax = 0.0;
    for (int i = 0; i < m; ++i) {
      dmin = std::min(dmin, degree(g, i));
      dmax = std::max(dmax, degree(g, i));
    }
    if (dec.degeneracy < dmin - tol || dec.degeneracy > dmax + tol) {
      detail::fail(rep, s, "degree sandwich violated");
    }
    double high_mass = 0.0;
    const Eigen::VectorXd mu = g.masses();
    for (int i = 0; i < m; ++i) {
      if (degree(g, i) >= dec.degeneracy - tol) high_mass += mu(i);
    }
    if (high_mass < dec.degeneracy - tol) {
      detail::fail(rep, s, "high-degree mass below degeneracy");
    }
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// |delta(w) - delta(w')| <= 2 sqrt(d_box) on random pairs, plus the
/// two-block ratio growing like 1/alpha.
inline VerifyReport verify_continuity(int trials, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep{"continuity", trials, {}, 0.0};
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    Rng rng(s);
    const StepGraphon g1 = random_step_graphon(rng, 1 + rng.uniform_int(0, 7));
    const StepGraphon g2 = random_step_graphon(rng, 1 + rng.uniform_int(0, 7));
    if (!check_continuity(g1, g2).holds) {
      detail::fail(rep, s, "continuity bound violated");
    }
  }
  double prev_ratio = 0.0;
  for (double alpha : {0.5, 0.25, 0.125, 0.0625}) {
    const StepGraphon w = natural_step_graphon(Constant{0.5});
    const StepGraphon wp = natural_step_graphon(TwoBlock{0.5, 0.2, alpha});
    const ContinuityReport r = check_continuity(w, wp);
    const double ratio = r.degeneracy_gap / r.cut_norm_value;
    if (ratio <= prev_ratio) {
      detail::fail(rep, seed, "Holder ratio not increasing at alpha=" + std::to_string(alpha));
    }
    prev_ratio = ratio;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// delta^2 <= e <= delta (2 - delta) on random step graphons, with the
/// extremal families achieving equality.
inline VerifyReport verify_density_bounds(int trials, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep{"density-bounds", trials, {}, 0.0};
  const double tol = assertion_tol();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    Rng rng(s);
    const StepGraphon g = random_step_graphon(rng, 1 + rng.uniform_int(0, 7));
    const double e = edge_density(g);
    const double d = decompose(g).degeneracy;
    if (e < d * d - tol || e > d * (2.0 - d) + tol) {
      detail::fail(rep, s, "edge density bound violated");
    }
  }
  for (int i = 1; i <= 9; ++i) {
    const double d = i / 10.0;
    auto [lower, upper] = extremal_pair(d);
    if (std::abs(edge_density(lower) - d * d) > kTol ||
        std::abs(edge_density(upper) - d * (2.0 - d)) > kTol) {
      detail::fail(rep, seed, "extremal equality violated at delta=" + std::to_string(d));
    }
    if (std::abs(decompose(lower).degeneracy - d) > assertion_tol() ||
        std::abs(decompose(upper).degeneracy - d) > assertion_tol()) {
      detail::fail(rep, seed, "extremal degeneracy wrong at delta=" + std::to_string(d));
    }
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Invariance of degeneracy and edge density under sigma_2 pullback and
/// block permutations; stage sets of the pullback are the sigma_2 preimages.
inline VerifyReport verify_mp_invariance(int trials, std::uint64_t seed, int perms_per_trial = 8) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep{"mp-invariance", trials, {}, 0.0};
  const double tol = assertion_tol();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    Rng rng(s);
    const int m = 2 + rng.uniform_int(0, 5);
    const StepGraphon g = random_step_graphon(rng, m, /*equal_mass=*/true);
    const double d0 = decompose(g).degeneracy;
    const double e0 = edge_density(g);

    const StepGraphon pb = pullback_sigma2(g);
    if (std::abs(decompose(pb).degeneracy - d0) > tol) {
      detail::fail(rep, s, "degeneracy not sigma2-invariant");
    }
    if (std::abs(edge_density(pb) - e0) > kTol) {
      detail::fail(rep, s, "edge density not sigma2-invariant");
    }
    const double kappa = rng.uniform();
    const CoreTrace tr = kappa_core(g, kappa);
    const CoreTrace trp = kappa_core(pb, kappa);
    if (tr.stages.size() != trp.stages.size()) {
      detail::fail(rep, s, "sigma2 trace length mismatch");
    } else {
      for (std::size_t n = 0; n < tr.stages.size(); ++n) {
        for (int i = 0; i < 2 * m; ++i) {
          if (trp.stages[n].contains(i) != tr.stages[n].contains(i % m)) {
            detail::fail(rep, s, "sigma2 stage preimage mismatch");
            n = tr.stages.size() - 1;
            break;
          }
        }
      }
    }

    for (int p = 0; p < perms_per_trial; ++p) {
      std::vector<int> perm(static_cast<std::size_t>(m));
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = m - 1; i > 0; --i) {
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
      }
      const StepGraphon h = apply_block_permutation(g, perm);
      if (std::abs(decompose(h).degeneracy - d0) > tol) {
        detail::fail(rep, s, "degeneracy not permutation-invariant");
      }
      if (std::abs(edge_density(h) - e0) > kTol) {
        detail::fail(rep, s, "edge density not permutation-invariant");
      }
    }
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Peeling degeneracy against the subset oracle (graphons) and the induced
/// subgraph oracle (graphs).
inline VerifyReport verify_oracle(int trials, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep{"oracle", trials, {}, 0.0};
  const double tol = assertion_tol();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    Rng rng(s);
    const StepGraphon g = random_step_graphon(rng, 1 + rng.uniform_int(0, 11));
    const double peel = decompose(g).degeneracy;
    const double exact = brute_force_degeneracy(g).first;
    if (std::abs(peel - exact) > tol) {
      detail::fail(rep, s, "graphon peeling disagrees with subset oracle");
    }
    const int n = 2 + rng.uniform_int(0, 10);
    const FiniteGraph fg = random_graph(rng, n, 0.2 + 0.6 * rng.uniform());
    if (graph_decompose(fg).degeneracy != brute_force_graph_degeneracy(fg).first) {
      detail::fail(rep, s, "graph peeling disagrees with subgraph oracle");
    }
    const StepGraphon emb = graph_to_graphon(fg);
    if (std::abs(decompose(emb).degeneracy -
                 static_cast<double>(graph_decompose(fg).degeneracy) / fg.n) > tol) {
      detail::fail(rep, s, "embedding identity violated");
    }
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// The degeneracy / edge count inequalities on random graphs, complete
/// graphs, and paths.
inline VerifyReport verify_kwpr(int trials, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep{"kwpr", trials, {}, 0.0};
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    Rng rng(s);
    const int n = 2 + rng.uniform_int(0, 38);
    if (!check_kwpr(random_graph(rng, n, rng.uniform())).holds) {
      detail::fail(rep, s, "KWPR inequality violated on a random graph");
    }
  }
  for (int n = 2; n <= 12; ++n) {
    if (!check_kwpr(complete_graph(n)).holds) {
      detail::fail(rep, seed, "KWPR inequality violated on K_" + std::to_string(n));
    }
    if (!check_kwpr(path_graph(n)).holds) {
      detail::fail(rep, seed, "KWPR inequality violated on P_" + std::to_string(n));
    }
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// The appendix construction: spec invariants, the band leave-order
/// alternation, and the closed-form stage intervals.
inline VerifyReport verify_appendix(int trials, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep{"appendix", trials, {}, 0.0};
  (void)trials;
  try {
    const AppendixSpec s = appendix_spec(40);
    const AlternationReport alt = appendix_alternation(s, 6);
    if (!alt.intervals_ok) {
      detail::fail(rep, seed, "stage intervals deviate from the closed form");
    }
    if (!alt.alternates) {
      std::string orders;
      for (const auto& row : alt.rows) orders += row.order + " ";
      detail::fail(rep, seed, "band leave-order does not alternate: " + orders);
    }
  } catch (const Error& e) {
    detail::fail(rep, seed, e.what());
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline VerifyReport verify_suite(const std::string& suite, int trials, std::uint64_t seed) {
  if (suite == "lemmas-core") return verify_lemmas_core(trials, seed);
  if (suite == "continuity") return verify_continuity(trials, seed);
  if (suite == "density-bounds") return verify_density_bounds(trials, seed);
  if (suite == "mp-invariance") return verify_mp_invariance(trials, seed);
  if (suite == "oracle") return verify_oracle(trials, seed);
  if (suite == "kwpr") return verify_kwpr(trials, seed);
  if (suite == "appendix") return verify_appendix(trials, seed);
  if (suite == "all") {
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport all{"all", 0, {}, 0.0};
    for (const char* name :
         {"lemmas-core", "continuity", "density-bounds", "mp-invariance", "oracle", "kwpr",
          "appendix"}) {
      VerifyReport r = verify_suite(name, trials, seed);
      all.trials += r.trials;
      for (std::string& f : r.failures) all.failures.push_back(r.suite + ": " + std::move(f));
    }
    all.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return all;
  }
  throw ParseError("ParseError: unknown suite '" + suite + "'");
}

}  // namespace graphon
