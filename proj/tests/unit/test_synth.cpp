#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dsrkit/elements.hpp"
#include "dsrkit/synth.hpp"
#include "support.hpp"

using namespace dsrkit;
using testsupport::log_uniform;

namespace {

double branch_reactance(double c, double lc, double cc, double f) {
  const Impedance z = dsr_shunt_impedance(c, lc, cc, f);
  REQUIRE(!z.is_infinite);
  return z.value.imag();
}

// Frequency in (dsr zero, dsr pole) where the branch reactance reaches
// `target` (> 0); the reactance is continuous and strictly increasing there.
double find_reactance_crossing(double c, double lc, double cc,
                               double target) {
  double lo = dsr_shunt_zero_hz(c, lc, cc) * (1.0 + 1e-9);
  double hi = dsr_shunt_pole_hz(lc, cc) * (1.0 - 1e-9);
  REQUIRE(branch_reactance(c, lc, cc, lo) < target);
  REQUIRE(branch_reactance(c, lc, cc, hi) > target);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (branch_reactance(c, lc, cc, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("bandwidth parameter and band edges") {
  // 2 * 0.06 / 1.521 = 7.89%.
  CHECK(delta_from_fbw(0.06, 1.521) ==
        doctest::Approx(0.0788954635108481).epsilon(1e-12));
  CHECK_THROWS_AS(delta_from_fbw(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(delta_from_fbw(0.06, 0.0), std::domain_error);

  const auto [f1, f2] = band_edges(1.5e9, 0.0788954635108481);
  CHECK(f1 == doctest::Approx(1.4408284024e9).epsilon(1e-9));
  CHECK(f2 == doctest::Approx(1.5591715976e9).epsilon(1e-9));
  CHECK(f1 + f2 == doctest::Approx(2.0 * 1.5e9));  // equidistant edges
  CHECK_THROWS_AS(band_edges(1.5e9, 2.0), std::domain_error);
  CHECK_THROWS_AS(band_edges(1.5e9, 0.0), std::domain_error);
}

TEST_CASE("feed element formulas") {
  const double cg = gap_capacitance(1.5e9, 50.0);
  CHECK(cg == doctest::Approx(1.0610e-12).epsilon(1e-3));
  // The gap makes w0 Cg Z0 exactly one half.
  const double w0 = 2.0 * std::numbers::pi * 1.5e9;
  CHECK(w0 * cg * 50.0 == doctest::Approx(0.5).epsilon(1e-15));

  const double l = line_inductance(1.5e9, cg, 50.0);
  CHECK(l == doctest::Approx(31.831e-9).epsilon(1e-3));
  CHECK(l == doctest::Approx(6.0 * 50.0 / w0).epsilon(1e-15));

  // General resonance identity: w0^2 L Cg / 2 - w0 Cg Z0 = 1.
  const double cg2 = 2e-12;
  const double w1 = 2.0 * std::numbers::pi * 1e9;
  const double l2 = line_inductance(1e9, cg2, 50.0);
  CHECK(w1 * w1 * l2 * cg2 / 2.0 - w1 * cg2 * 50.0 ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(gap_capacitance(-1e9, 50.0), std::domain_error);
  CHECK_THROWS_AS(line_inductance(1e9, 0.0, 50.0), std::domain_error);
}

TEST_CASE("shunt solver recovers forward-generated element triples") {
  std::mt19937_64 rng(0xd15ea5e);
  for (int trial = 0; trial < 100; ++trial) {
    const double c = log_uniform(rng, 1e-12, 5e-10);
    const double lc = log_uniform(rng, 1e-10, 1e-8);
    const double cc = log_uniform(rng, 1e-12, 5e-11);
    const double z0 = log_uniform(rng, 20.0, 120.0);

    const double f0 = find_reactance_crossing(c, lc, cc, z0);
    const double f1 = find_reactance_crossing(c, lc, cc, z0 / 2.0);
    const double f2 = dsr_shunt_pole_hz(lc, cc);
    REQUIRE(f1 < f0);
    REQUIRE(f0 < f2);

    const ShuntSolve sol =
        solve_shunt_branch(f0, f1, f2, z0, ReactanceSign::plus_j);
    REQUIRE(sol.feasible);
    CHECK(std::abs(sol.c_coup_f - c) / c < 1e-8);
    CHECK(std::abs(sol.l_strip_half_h - lc) / lc < 1e-8);
    CHECK(std::abs(sol.c_patch_f - cc) / cc < 1e-8);
    CHECK(sol.residuals[0] < 1e-9);
    CHECK(sol.residuals[1] < 1e-9);
    CHECK(sol.residuals[2] < 1e-9);
  }
}

TEST_CASE("shunt solver is deterministic") {
  const ShuntSolve a =
      solve_shunt_branch(1.0e9, 0.9e9, 1.2e9, 50.0, ReactanceSign::plus_j);
  const ShuntSolve b =
      solve_shunt_branch(1.0e9, 0.9e9, 1.2e9, 50.0, ReactanceSign::plus_j);
  CHECK(a.feasible == b.feasible);
  CHECK(a.c_coup_f == b.c_coup_f);
  CHECK(a.l_strip_half_h == b.l_strip_half_h);
  CHECK(a.c_patch_f == b.c_patch_f);
}

TEST_CASE("shunt solver preconditions") {
  CHECK_THROWS_AS(solve_shunt_branch(1e9, 1e9, 1.2e9, 50.0,
                                     ReactanceSign::plus_j),
                  std::domain_error);
  CHECK_THROWS_AS(solve_shunt_branch(1e9, 1.1e9, 1.2e9, 50.0,
                                     ReactanceSign::plus_j),
                  std::domain_error);
  CHECK_THROWS_AS(solve_shunt_branch(1e9, 0.9e9, 1e9, 50.0,
                                     ReactanceSign::plus_j),
                  std::domain_error);
  CHECK_THROWS_AS(solve_shunt_branch(1e9, 0.9e9, 1.2e9, 0.0,
                                     ReactanceSign::plus_j),
                  std::domain_error);
}

TEST_CASE("reference specification is infeasible under both conventions") {
  const FilterSpec spec{3, 1.5e9, 0.06, 50.0, 1.521};

  const SynthReport plus = synthesize(spec, ReactanceSign::plus_j);
  CHECK(!plus.feasible());
  // Frozen from an independent linear solve of the two reactance conditions:
  // the coupling capacitance comes out negative; the other two elements are
  // positive, so the diagnostic must name exactly the capacitance.
  CHECK(plus.shunt.c_coup_f == doctest::Approx(-1.141292e-10).epsilon(1e-4));
  CHECK(plus.shunt.l_strip_half_h ==
        doctest::Approx(3.87683e-10).epsilon(1e-4));
  CHECK(plus.shunt.c_patch_f == doctest::Approx(2.68766e-11).epsilon(1e-4));
  CHECK(plus.shunt.infeasibility.find("c_coup_f") != std::string::npos);
  CHECK(plus.shunt.infeasibility.find("l_strip_half_h") ==
        std::string::npos);

  const SynthReport minus = synthesize(spec, ReactanceSign::minus_j);
  CHECK(!minus.feasible());
  // Sign flip moves the defect into the resonator elements instead.
  CHECK(minus.shunt.c_coup_f == doctest::Approx(1.141292e-10).epsilon(1e-4));
  CHECK(minus.shunt.l_strip_half_h ==
        doctest::Approx(-3.87683e-10).epsilon(1e-4));
  CHECK(minus.shunt.infeasibility.find("l_strip_half_h") !=
        std::string::npos);
  CHECK(minus.shunt.infeasibility.find("c_patch_f") != std::string::npos);

  // Feed elements are solved regardless.
  CHECK(plus.c_gap_f == doctest::Approx(1.0610e-12).epsilon(1e-3));
  CHECK(plus.l_line_h == doctest::Approx(31.831e-9).epsilon(1e-3));
  CHECK(plus.delta == doctest::Approx(0.0789).epsilon(1e-2));
}

TEST_CASE("equidistant band edges never admit a positive triple") {
  // Property of the arithmetic-symmetric edge placement: for any bandwidth
  // parameter the linear system puts at least one element at or below zero,
  // under either sign convention. Scale-free in f0 and z0.
  for (double delta : {0.02, 0.1, 0.3, 0.8, 1.2, 1.8}) {
    const auto [f1, f2] = band_edges(1.0e9, delta);
    for (ReactanceSign sign :
         {ReactanceSign::plus_j, ReactanceSign::minus_j}) {
      const ShuntSolve sol = solve_shunt_branch(1.0e9, f1, f2, 50.0, sign);
      CHECK(!sol.feasible);
      CHECK(!sol.infeasibility.empty());
    }
  }
}

TEST_CASE("specification validation") {
  CHECK_THROWS_AS(synthesize({0, 1.5e9, 0.06, 50.0, 1.521},
                             ReactanceSign::plus_j),
                  std::domain_error);
  CHECK_THROWS_AS(synthesize({1, 1.5e9, 1.0, 50.0, 1.521},
                             ReactanceSign::plus_j),
                  std::domain_error);
  CHECK_THROWS_AS(synthesize({1, -1.5e9, 0.06, 50.0, 1.521},
                             ReactanceSign::plus_j),
                  std::domain_error);
  CHECK_THROWS_AS(synthesize({1, 1.5e9, 0.06, 0.0, 1.521},
                             ReactanceSign::plus_j),
                  std::domain_error);
}
