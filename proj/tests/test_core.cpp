#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "graphon/analytic.hpp"
#include "graphon/core.hpp"
#include "graphon/random_instances.hpp"

using namespace graphon;

TEST_CASE("core_stage: vacuous threshold, constant kernel, two-block cut") {
  Rng rng(1);
  const StepGraphon g = random_step_graphon(rng, 6);
  CHECK(core_stage(g, 0.0, full_set(g)) == full_set(g));

  const StepGraphon c = natural_step_graphon(Constant{0.4});
  CHECK(core_stage(c, 0.4, full_set(c)) == full_set(c));

  const StepGraphon tb = natural_step_graphon(TwoBlock{0.5, 0.2, 0.5});
  const ActiveSet next = core_stage(tb, 0.4, full_set(tb));
  CHECK_FALSE(next.contains(0));
  CHECK(next.contains(1));
}

TEST_CASE("kappa_core: fixed points, empty cores, stage bookkeeping") {
  const StepGraphon c = natural_step_graphon(Constant{0.4});
  const CoreTrace ct = kappa_core(c, 0.4);
  CHECK(ct.stages.size() == 1);
  CHECK(ct.terminal.mass == doctest::Approx(1.0));

  // Threshold just above the degeneracy: the low block falls first, then the
  // high block once its restricted degree drops to 0.3.
  const StepGraphon up = natural_step_graphon(UpperExtremal{0.3});
  const CoreTrace ut = kappa_core(up, 0.31);
  CHECK(ut.stages.size() == 3);
  CHECK(ut.terminal.empty());
  CHECK(ut.terminal.mass == doctest::Approx(0.0));

  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const StepGraphon g = random_step_graphon(rng, 1 + rng.uniform_int(0, 7));
    const double kappa = rng.uniform();
    const CoreTrace tr = kappa_core(g, kappa);
    CHECK(tr.stages.size() <= static_cast<std::size_t>(g.block_count()) + 1);
    for (std::size_t n = 1; n < tr.stages.size(); ++n) {
      for (int i = 0; i < g.block_count(); ++i) {
        if (tr.stages[n].contains(i)) CHECK(tr.stages[n - 1].contains(i));
      }
    }
    for (int i = 0; i < g.block_count(); ++i) {
      if (tr.terminal.contains(i)) {
        CHECK(restricted_degree(g, i, tr.terminal) >= kappa - kTol);
      }
    }
    if (!tr.terminal.empty()) CHECK(tr.terminal.mass >= kappa - kCheckTol);
  }
}

TEST_CASE("kappa_core on the discretized min kernel finds the interval core") {
  const StepGraphon g = discretize(MinGraphon{}, 512);
  const CoreTrace tr = kappa_core(g, 0.125);
  int first = -1;
  bool suffix = true;
  for (int i = 0; i < g.block_count(); ++i) {
    if (tr.terminal.contains(i)) {
      if (first < 0) first = i;
    } else if (first >= 0) {
      suffix = false;
    }
  }
  REQUIRE(first >= 0);
  CHECK(suffix);  // cores of a pointwise-monotone kernel are right intervals
  const double left_edge = g.boundaries(first);
  CHECK(std::abs(left_edge - 0.5 * (1.0 - std::sqrt(0.5))) < 0.01);
}

TEST_CASE("decompose: closed forms and trace invariants") {
  const CoreDecomposition c = decompose(natural_step_graphon(Constant{0.4}));
  CHECK(c.degeneracy == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(c.shells(0) == doctest::Approx(0.4).epsilon(1e-12));

  for (double d : {0.2, 0.3, 0.6}) {
    CHECK(decompose(natural_step_graphon(UpperExtremal{d})).degeneracy ==
          doctest::Approx(d).epsilon(1e-9));
  }
  CHECK(decompose(natural_step_graphon(TwoBlock{0.5, 0.2, 0.5})).degeneracy ==
        doctest::Approx(0.35).epsilon(1e-9));

  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const StepGraphon g = random_step_graphon(rng, 1 + rng.uniform_int(0, 7));
    const CoreDecomposition dec = decompose(g);
    CHECK(dec.degeneracy == doctest::Approx(dec.shells.maxCoeff()).epsilon(1e-12));
    double prev = 0.0;
    for (const PeelStep& s : dec.peel_order) {
      CHECK(s.running_max >= prev);
      prev = s.running_max;
    }
    CHECK(prev == doctest::Approx(dec.degeneracy).epsilon(1e-12));
    for (int i = 0; i < g.block_count(); ++i) {
      CHECK(dec.shells(i) <= degree(g, i) + kCheckTol);
    }
  }
}

TEST_CASE("brute_force_degeneracy oracle") {
  const auto [cv, cw] = brute_force_degeneracy(natural_step_graphon(Constant{0.4}));
  CHECK(cv == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(cw == std::vector<int>{0});

  const auto [lv, lw] = brute_force_degeneracy(natural_step_graphon(LowerExtremal{0.4}));
  CHECK(lv == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(lw == std::vector<int>{0});

  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const StepGraphon g = random_step_graphon(rng, 1 + rng.uniform_int(0, 7));
    CHECK(std::abs(brute_force_degeneracy(g).first - decompose(g).degeneracy) < 1e-9);
  }

  Rng big(18);
  CHECK_THROWS_AS(brute_force_degeneracy(random_step_graphon(big, 21)), TooManyBlocks);
}

TEST_CASE("shell_of") {
  CHECK(shell_of(natural_step_graphon(Constant{0.4}), 0.77) == doctest::Approx(0.4));
  const StepGraphon low = natural_step_graphon(LowerExtremal{0.4});
  CHECK(shell_of(low, 0.2) == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(shell_of(low, 0.7) == doctest::Approx(0.0));
  CHECK(shell_of(low, 0.4) == doctest::Approx(0.0));  // boundary resolves right
  CHECK_THROWS_AS(shell_of(low, 1.5), PointOutOfRange);
}

TEST_CASE("mass_of_core_curve: step drop, monotonicity, duality") {
  const StepGraphon c = natural_step_graphon(Constant{0.3});
  const auto curve = mass_of_core_curve(c, {0.0, 0.2, 0.3, 0.30001, 0.9});
  CHECK(curve[0].second == doctest::Approx(1.0));
  CHECK(curve[2].second == doctest::Approx(1.0));  // closed threshold keeps the core
  CHECK(curve[3].second == doctest::Approx(0.0));

  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const StepGraphon g = random_step_graphon(rng, 1 + rng.uniform_int(0, 7));
    const CoreDecomposition dec = decompose(g);
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
    for (int i = 0; i < g.block_count(); ++i) grid.push_back(dec.shells(i));
    std::sort(grid.begin(), grid.end());
    double prev = 2.0;
    for (const auto& [kappa, mass] : mass_of_core_curve(g, grid)) {
      CHECK(mass <= prev + kTol);
      prev = mass;
      const CoreTrace tr = kappa_core(g, kappa);
      for (int i = 0; i < g.block_count(); ++i) {
        CHECK(tr.terminal.contains(i) == (dec.shells(i) >= kappa - kTol));
      }
    }
  }
}
