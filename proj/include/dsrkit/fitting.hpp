#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dsrkit/dsrcell.hpp"
#include "dsrkit/netcore.hpp"

namespace dsrkit {

// Which cell model is being fitted to measured/simulated data.
enum class FitCellKind { dm_bandpass, cm_bandpass, dm_bandstop };

std::size_t parameter_count(FitCellKind kind);
// Parameter names in vector order, e.g. {"l_line_h", "c_gap_f", ...}.
std::vector<std::string> parameter_names(FitCellKind kind);

// Inclusive positive bounds for one parameter; 0 < lower < upper required.
struct FitBounds {
  double lower;
  double upper;
};

// Data and weighting for a cell fit. Frequencies, targets and (optional)
// per-point weights are parallel arrays.
struct FitProblem {
  FitCellKind kind{FitCellKind::dm_bandpass};
  CellTopology topology{CellTopology::symmetric_t};
  std::vector<FitBounds> bounds;      // one per parameter
  std::vector<double> freq_hz;        // strictly increasing, > 0
  std::vector<SParams2> target;       // same length as freq_hz
  std::vector<double> weights;        // per point, >= 0; empty = uniform
  double mag_weight{1.0};
  double phase_weight{0.1};
  double z_ref_ohm{50.0};

  // std::invalid_argument on shape/bound violations or fewer than
  // 2 * parameter_count(kind) data points.
  void validate() const;
};

// S-parameters of the chosen cell model at one frequency for a parameter
// vector laid out per parameter_names().
SParams2 evaluate_cell(FitCellKind kind, CellTopology topology,
                       std::span<const double> params, double f_hz,
                       double z_ref_ohm);

// Weighted squared error between the model and the target over all points:
// magnitude terms are dB differences of |s21| and |s11| (floored at -100 dB),
// phase terms are wrapped degree differences, scaled by mag_weight and
// phase_weight. Non-positive or out-of-bounds parameters score +infinity.
double objective(std::span<const double> params, const FitProblem& problem);

struct FitOptions {
  int max_evals{20000};       // budget in objective evaluations
  int restarts{2};            // simplex rebuilds around the incumbent best
  double initial_step{0.15};  // first simplex edge length in log-space
  double tolerance{1e-12};    // relative spread / simplex size threshold
};

struct FitResult {
  std::vector<double> parameters;
  double cost{0.0};
  int iterations{0};
  int evaluations{0};
  bool converged{false};
  // Best cost after each simplex iteration, non-increasing.
  std::vector<double> trace;
};

// Bounded Nelder-Mead in log-parameter space. The initial point must lie
// within bounds (std::invalid_argument otherwise). Deterministic: no random
// state, ties broken by index. converged reports whether the final simplex
// met the tolerance before the evaluation budget ran out.
FitResult fit(const FitProblem& problem, std::span<const double> initial,
              const FitOptions& options = {});

}  // namespace dsrkit
