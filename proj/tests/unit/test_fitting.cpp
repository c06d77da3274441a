#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dsrkit/fitting.hpp"
#include "support.hpp"

using namespace dsrkit;

namespace {

// Element values of the reference differential cell used as ground truth.
const std::vector<double> kTruth = {7.4e-9, 0.9e-12, 217.5e-12, 0.8e-9,
                                    13e-12};

FitProblem make_problem(std::size_t points, double bound_factor = 100.0) {
  FitProblem p;
  p.kind = FitCellKind::dm_bandpass;
  p.topology = CellTopology::symmetric_t;
  for (double v : kTruth) {
    p.bounds.push_back({v / bound_factor, v * bound_factor});
  }
  const FrequencyGrid grid = FrequencyGrid::linspace(0.5e9, 2.5e9, points);
  for (double f : grid) {
    p.freq_hz.push_back(f);
    p.target.push_back(
        evaluate_cell(p.kind, p.topology, kTruth, f, p.z_ref_ohm));
  }
  return p;
}

}  // namespace

TEST_CASE("parameter bookkeeping per cell kind") {
  CHECK(parameter_count(FitCellKind::dm_bandpass) == 5);
  CHECK(parameter_count(FitCellKind::cm_bandpass) == 3);
  CHECK(parameter_count(FitCellKind::dm_bandstop) == 4);

  const auto dm = parameter_names(FitCellKind::dm_bandpass);
  REQUIRE(dm.size() == 5);
  CHECK(dm[0] == "l_line_h");
  CHECK(dm[1] == "c_gap_f");
  CHECK(dm[2] == "c_coup_f");
  CHECK(dm[3] == "l_strip_half_h");
  CHECK(dm[4] == "c_patch_f");

  const auto cm = parameter_names(FitCellKind::cm_bandpass);
  REQUIRE(cm.size() == 3);
  CHECK(cm[2] == "c1_f");

  const auto bs = parameter_names(FitCellKind::dm_bandstop);
  REQUIRE(bs.size() == 4);
  CHECK(bs[0] == "l_line_h");
  CHECK(bs[1] == "c_coup_f");
}

TEST_CASE("objective is zero on the generating parameters") {
  const FitProblem p = make_problem(41);
  CHECK(objective(kTruth, p) == 0.0);
}

TEST_CASE("objective scores known magnitude and phase offsets") {
  FitProblem p = make_problem(41);
  p.freq_hz = {1.5e9};
  p.target = {evaluate_cell(p.kind, p.topology, kTruth, 1.5e9, p.z_ref_ohm)};
  p.phase_weight = 0.0;

  // Scaling the target s21 by one dB leaves every other term untouched, so
  // the objective is exactly mag_weight * 1 dB^2.
  const double one_db = std::pow(10.0, 1.0 / 20.0);
  p.target[0].s21 *= one_db;
  CHECK(objective(kTruth, p) == doctest::Approx(1.0).epsilon(1e-9));
  p.mag_weight = 2.0;
  CHECK(objective(kTruth, p) == doctest::Approx(2.0).epsilon(1e-9));

  // A 90 degree rotation of s11 is a pure phase error.
  p = make_problem(41);
  p.freq_hz = {1.5e9};
  p.target = {evaluate_cell(p.kind, p.topology, kTruth, 1.5e9, p.z_ref_ohm)};
  p.mag_weight = 0.0;
  p.phase_weight = 1.0;
  p.target[0].s11 *= Complex(0.0, 1.0);
  CHECK(objective(kTruth, p) == doctest::Approx(8100.0).epsilon(1e-9));

  // Phase differences wrap into (-180, 180]: rotating the target by 170
  // degrees scores 170^2 whether or not the raw difference crosses -180.
  p.target[0] = evaluate_cell(p.kind, p.topology, kTruth, 1.5e9, p.z_ref_ohm);
  p.target[0].s11 *= std::polar(1.0, -170.0 * std::numbers::pi / 180.0);
  CHECK(objective(kTruth, p) == doctest::Approx(28900.0).epsilon(1e-9));
}

TEST_CASE("per-point weights scale the objective exactly") {
  FitProblem p = make_problem(41);
  // Perturb one parameter so the objective is non-zero.
  std::vector<double> params = kTruth;
  params[2] *= 1.1;
  const double base = objective(params, p);
  REQUIRE(base > 0.0);

  p.weights.assign(p.freq_hz.size(), 4.0);
  CHECK(objective(params, p) == 4.0 * base);  // power-of-two scale is exact
}

TEST_CASE("objective rejects out-of-bounds and malformed parameters") {
  const FitProblem p = make_problem(41);
  std::vector<double> params = kTruth;
  params[0] = p.bounds[0].upper * 1.01;
  CHECK(std::isinf(objective(params, p)));
  params[0] = p.bounds[0].lower * 0.99;
  CHECK(std::isinf(objective(params, p)));
  params[0] = -1.0;
  CHECK(std::isinf(objective(params, p)));

  std::vector<double> wrong(4, 1e-9);
  CHECK_THROWS_AS(objective(wrong, p), std::invalid_argument);
  CHECK_THROWS_AS(
      evaluate_cell(FitCellKind::dm_bandpass, CellTopology::symmetric_t,
                    wrong, 1e9, 50.0),
      std::invalid_argument);
}

TEST_CASE("problem validation") {
  FitProblem p = make_problem(41);
  CHECK_NOTHROW(p.validate());

  FitProblem bad = p;
  bad.bounds.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.bounds[0].lower = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.bounds[0].upper = bad.bounds[0].lower;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.target.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.freq_hz.resize(9);  // fewer than two points per parameter
  bad.target.resize(9);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.freq_hz[5] = bad.freq_hz[4];
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.weights.assign(3, 1.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.weights.assign(bad.freq_hz.size(), 1.0);
  bad.weights[0] = -0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.mag_weight = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.z_ref_ohm = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("fit keeps an already-perfect start") {
  const FitProblem p = make_problem(41);
  const FitResult r = fit(p, kTruth);
  CHECK(r.converged);
  CHECK(r.cost == 0.0);
  for (std::size_t i = 0; i < kTruth.size(); ++i) {
    CHECK(r.parameters[i] ==
          doctest::Approx(kTruth[i]).epsilon(1e-12));
  }
}

TEST_CASE("fit recovers perturbed parameters") {
  const FitProblem p = make_problem(161);
  std::vector<double> start = kTruth;
  for (double& v : start) {
    v *= 1.25;
  }
  const FitResult r = fit(p, start);
  CHECK(r.converged);
  CHECK(r.evaluations <= FitOptions{}.max_evals);
  CHECK(r.iterations > 0);
  REQUIRE(r.parameters.size() == kTruth.size());
  for (std::size_t i = 0; i < kTruth.size(); ++i) {
    CHECK(std::abs(r.parameters[i] - kTruth[i]) / kTruth[i] < 0.01);
  }

  // The running-best trace never gets worse and ends at the reported cost.
  REQUIRE(static_cast<int>(r.trace.size()) == r.iterations);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    CHECK(r.trace[i] <= r.trace[i - 1]);
  }
  CHECK(r.trace.back() == r.cost);
}

TEST_CASE("fit is deterministic") {
  const FitProblem p = make_problem(81);
  std::vector<double> start = kTruth;
  for (double& v : start) {
    v *= 1.3;
  }
  const FitResult a = fit(p, start);
  const FitResult b = fit(p, start);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.cost == b.cost);
  for (std::size_t i = 0; i < a.parameters.size(); ++i) {
    CHECK(a.parameters[i] == b.parameters[i]);
  }
}

TEST_CASE("uniform weight rescaling does not move the optimum") {
  FitProblem p = make_problem(81);
  std::vector<double> start = kTruth;
  for (double& v : start) {
    v *= 1.3;
  }
  const FitResult plain = fit(p, start);
  p.weights.assign(p.freq_hz.size(), 4.0);
  const FitResult scaled = fit(p, start);
  // Power-of-two weights scale every objective value exactly, so the simplex
  // walks the identical path.
  CHECK(scaled.evaluations == plain.evaluations);
  CHECK(scaled.cost == 4.0 * plain.cost);
  for (std::size_t i = 0; i < plain.parameters.size(); ++i) {
    CHECK(scaled.parameters[i] == plain.parameters[i]);
  }
}

TEST_CASE("fit respects the evaluation budget") {
  const FitProblem p = make_problem(41);
  std::vector<double> start = kTruth;
  for (double& v : start) {
    v *= 2.0;
  }
  FitOptions opts;
  opts.max_evals = 10;
  const FitResult r = fit(p, start, opts);
  CHECK(r.evaluations <= 10);
  CHECK(!r.converged);
}

TEST_CASE("fit input validation") {
  const FitProblem p = make_problem(41);
  std::vector<double> outside = kTruth;
  outside[1] = p.bounds[1].upper * 2.0;
  CHECK_THROWS_AS(fit(p, outside), std::invalid_argument);

  std::vector<double> wrong(3, 1e-9);
  CHECK_THROWS_AS(fit(p, wrong), std::invalid_argument);

  FitOptions opts;
  opts.max_evals = 0;
  CHECK_THROWS_AS(fit(p, kTruth, opts), std::invalid_argument);
  opts = {};
  opts.tolerance = 0.0;
  CHECK_THROWS_AS(fit(p, kTruth, opts), std::invalid_argument);
}

TEST_CASE("common-mode cell fit recovers its parameters") {
  FitProblem p;
  p.kind = FitCellKind::cm_bandpass;
  const std::vector<double> truth = {7.4e-9, 0.9e-12, 12.27e-12};
  for (double v : truth) {
    p.bounds.push_back({v / 100.0, v * 100.0});
  }
  const FrequencyGrid grid = FrequencyGrid::linspace(0.5e9, 2.5e9, 101);
  for (double f : grid) {
    p.freq_hz.push_back(f);
    p.target.push_back(
        evaluate_cell(p.kind, p.topology, truth, f, p.z_ref_ohm));
  }
  std::vector<double> start = truth;
  for (double& v : start) {
    v *= 0.8;
  }
  const FitResult r = fit(p, start);
  CHECK(r.converged);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    CHECK(std::abs(r.parameters[i] - truth[i]) / truth[i] < 0.01);
  }
}
