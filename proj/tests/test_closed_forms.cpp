#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "graphon/analytic.hpp"
#include "graphon/closed_forms.hpp"
#include "graphon/core.hpp"

using namespace graphon;

TEST_CASE("min-kernel boundary recursion") {
  const RecursionResult zero = min_graphon_recursion(0.0, 100);
  CHECK(zero.converged);
  for (double v : zero.values) CHECK(v == doctest::Approx(0.0));

  for (double kappa : {0.05, 0.1, 0.125, 0.2, 0.24}) {
    const RecursionResult r = min_graphon_recursion(kappa, 100000);
    CHECK(r.converged);
    const double fixed = 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * kappa));
    CHECK(std::abs(r.values.back() - fixed) < 1e-9);
  }
  // At the critical threshold the fixed point is neutral (unit derivative)
  // and the iteration approaches 1/2 only sublinearly, like c/n; assert the
  // approach, not the 1e-12 successive-difference stopping rule.
  const RecursionResult crit = min_graphon_recursion(0.25, 1000000);
  CHECK_FALSE(crit.values.empty());
  CHECK(std::abs(crit.values.back() - 0.5) < 1e-5);
  CHECK(crit.values.back() < 0.5);
  // At kappa = 0.125 the fixed point is (1 - sqrt(0.5)) / 2.
  const RecursionResult r = min_graphon_recursion(0.125, 10000);
  CHECK(r.converged);
  CHECK(std::abs(r.values.back() - 0.5 * (1.0 - std::sqrt(0.5))) < 1e-9);

  for (double kappa : {0.26, 0.3, 0.5}) {
    CHECK_FALSE(min_graphon_recursion(kappa, 100000).converged);
  }
}

TEST_CASE("min-kernel core interval") {
  const auto quarter = min_graphon_core(0.25);
  REQUIRE(quarter.has_value());
  CHECK(quarter->first == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(quarter->second == doctest::Approx(1.0));

  const auto zero = min_graphon_core(0.0);
  REQUIRE(zero.has_value());
  CHECK(zero->first == doctest::Approx(0.0));

  CHECK_FALSE(min_graphon_core(0.3).has_value());
}

TEST_CASE("discretized min-kernel cores are right intervals matching the closed form") {
  for (double kappa : {0.05, 0.125, 0.2}) {
    const StepGraphon g = discretize(MinGraphon{}, 256);
    const CoreTrace tr = kappa_core(g, kappa);
    int first = -1;
    for (int i = 0; i < g.block_count(); ++i) {
      if (tr.terminal.contains(i)) {
        first = i;
        break;
      }
    }
    REQUIRE(first >= 0);
    for (int i = first; i < g.block_count(); ++i) CHECK(tr.terminal.contains(i));
    CHECK(std::abs(g.boundaries(first) - min_graphon_core(kappa)->first) < 0.02);
  }
}

TEST_CASE("two-block degeneracy closed form vs peeling") {
  CHECK(two_block_degeneracy(0.5, 0.2, 0.5) == doctest::Approx(0.35).epsilon(1e-12));
  CHECK(two_block_degeneracy(0.4, 0.4, 0.3) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(two_block_degeneracy(0.3, 0.8, 0.5) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK_THROWS_AS(two_block_degeneracy(0.0, 0.5, 0.5), BadParameter);
  CHECK_THROWS_AS(two_block_degeneracy(0.5, 0.5, 1.0), BadParameter);

  for (int ia = 1; ia <= 5; ++ia) {
    for (int ib = 1; ib <= 5; ++ib) {
      for (int ic = 1; ic <= 5; ++ic) {
        const double a = ia / 6.0, b = ib / 6.0, alpha = ic / 6.0;
        const double peel =
            decompose(natural_step_graphon(TwoBlock{a, b, alpha})).degeneracy;
        CHECK(std::abs(peel - two_block_degeneracy(a, b, alpha)) < 1e-9);
      }
    }
  }
}

TEST_CASE("extremal pair densities and degeneracies") {
  auto [lower, upper] = extremal_pair(0.3);
  CHECK(edge_density(lower) == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(edge_density(upper) == doctest::Approx(0.51).epsilon(1e-12));
  CHECK(decompose(lower).degeneracy == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(decompose(upper).degeneracy == doctest::Approx(0.3).epsilon(1e-9));

  auto [tiny_lo, tiny_up] = extremal_pair(1e-3);
  CHECK(edge_density(tiny_lo) < 1e-5);
  CHECK(edge_density(tiny_up) < 3e-3);

  CHECK_THROWS_AS(extremal_pair(0.0), BadParameter);
  CHECK_THROWS_AS(extremal_pair(1.0), BadParameter);
}

TEST_CASE("two-chain parameter sequences") {
  const AppendixSpec s = appendix_spec(40);
  CHECK(s.eps[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(s.eps_p[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.eps_p[1] > s.eps[1]);

  CHECK_THROWS_AS(appendix_spec(3), BadDepth);

  for (int n : {20, 40, 80}) {
    const AppendixSpec sp = appendix_spec(n);
    // alpha reconstructible as the prefix sums of eps.
    double acc = 0.0, accp = 0.0;
    for (int i = 1; i <= n; ++i) {
      acc += sp.eps[static_cast<std::size_t>(i)];
      accp += sp.eps_p[static_cast<std::size_t>(i)];
      CHECK(std::abs(acc - sp.alpha[static_cast<std::size_t>(i)]) < 1e-12);
      CHECK(std::abs(accp - sp.alpha_p[static_cast<std::size_t>(i)]) < 1e-12);
      // interleaving per parity, nonincreasing within each chain.
      if (i % 2 == 1) {
        CHECK(sp.eps_p[static_cast<std::size_t>(i)] > sp.eps[static_cast<std::size_t>(i)]);
      } else {
        CHECK(sp.eps[static_cast<std::size_t>(i)] > sp.eps_p[static_cast<std::size_t>(i)]);
      }
      if (i > 1) {
        CHECK(sp.eps[static_cast<std::size_t>(i)] <=
              sp.eps[static_cast<std::size_t>(i - 1)] + kTol);
      }
    }
    CHECK(1.0 - sp.alpha[static_cast<std::size_t>(n)] <= 1.0 / n);
  }

  // kappa_i sits strictly between the two single-increment thresholds.
  for (int i = 1; i <= 6; ++i) {
    const double k = s.kappa(i);
    const double lo = 0.2 * (1.0 + std::min(s.eps[static_cast<std::size_t>(i)],
                                            s.eps_p[static_cast<std::size_t>(i)]));
    const double hi = 0.2 * (1.0 + std::max(s.eps[static_cast<std::size_t>(i)],
                                            s.eps_p[static_cast<std::size_t>(i)]));
    CHECK(k > lo);
    CHECK(k < hi);
  }
}

TEST_CASE("two-chain graphon structure and band degrees") {
  const int n = 40;
  const AppendixSpec s = appendix_spec(n);
  const StepGraphon g = appendix_graphon(s);
  const AppendixLayout lay{n};
  CHECK(g.block_count() == 2 * n + 5);
  CHECK_NOTHROW(validate(g));

  CHECK(g.boundaries(lay.band1()) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(g.boundaries(lay.band2()) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(g.boundaries(lay.band3()) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(g.boundaries(lay.right(1)) == doctest::Approx(0.8).epsilon(1e-12));

  CHECK(g.values(lay.band1(), lay.band2()) == 1.0);
  CHECK(g.values(lay.band2(), lay.band3()) == 1.0);
  for (int i = 1; i <= n; ++i) {
    CHECK(g.values(lay.left(i), lay.band1()) ==
          doctest::Approx(1.0 - s.eps[static_cast<std::size_t>(i - 1)]).epsilon(1e-12));
    CHECK(g.values(lay.band3(), lay.right(i)) ==
          doctest::Approx(1.0 - s.eps_p[static_cast<std::size_t>(i - 1)]).epsilon(1e-12));
  }

  // Tail blocks interact with nothing.
  CHECK(g.values.row(lay.left_tail()).maxCoeff() == 0.0);
  CHECK(g.values.row(lay.right_tail()).maxCoeff() == 0.0);

  const double tail_tol = 1.0 / (5.0 * (n + 1)) + 1e-9;
  CHECK(std::abs(degree(g, lay.band2()) - 0.4) <= tail_tol);
  CHECK(std::abs(degree(g, lay.band1()) -
                 0.2 * (1.0 + s.beta[static_cast<std::size_t>(n)])) <= tail_tol);
  CHECK(std::abs(degree(g, lay.band3()) -
                 0.2 * (1.0 + s.beta_p[static_cast<std::size_t>(n)])) <= tail_tol);
}

TEST_CASE("two-chain peeling: stage intervals and departure bookkeeping") {
  const AppendixSpec s = appendix_spec(40);
  const AlternationReport rep = appendix_alternation(s, 6);
  REQUIRE(rep.rows.size() == 6);
  CHECK(rep.intervals_ok);

  // The two threshold indices swap sides with the parity of i.
  for (const AlternationRow& row : rep.rows) {
    if (row.i % 2 == 1) {
      CHECK(row.i_kappa < row.ip_kappa);
    } else {
      CHECK(row.i_kappa > row.ip_kappa);
    }
    CHECK(std::abs(row.i_kappa - row.ip_kappa) == 1);
  }

  // Frozen departure orders, confirmed by an independent exact-rational
  // peeling of the same construction: the two bands never leave in the
  // left-first order, so the strict parity alternation does not occur.
  const std::vector<std::string> orders = {"right_first", "right_first", "simultaneous",
                                           "right_first", "simultaneous", "right_first"};
  for (std::size_t k = 0; k < rep.rows.size(); ++k) {
    CHECK(rep.rows[k].order == orders[k]);
  }
  CHECK_FALSE(rep.alternates);

  CHECK_THROWS_AS(appendix_alternation(s, 31), BadDepth);
}
