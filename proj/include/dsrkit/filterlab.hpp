#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dsrkit/netcore.hpp"

namespace dsrkit {

// A frequency-dependent two-port: f_hz -> chain matrix.
using TwoPortModel = std::function<TwoPortABCD(double f_hz)>;

// n identical cells in cascade. Requires n >= 1 (std::invalid_argument).
TwoPortModel build_filter(const TwoPortModel& cell, int n);

// Differential- and common-mode responses of a filter over a grid, both
// referenced to z_ref.
struct SweepResult {
  FrequencyGrid grid;
  std::vector<SParams2> dm;
  std::vector<SParams2> cm;
  double z_ref_ohm{50.0};
};

SweepResult sweep(const TwoPortModel& dm_model, const TwoPortModel& cm_model,
                  const FrequencyGrid& grid, double z_ref_ohm);

// 1001 points spanning [0.25 f0, 2.5 f0].
FrequencyGrid default_grid(double f0_hz);

// Scalar figures of merit of a balanced bandpass sweep. Frequencies in Hz,
// levels in dB (positive numbers mean suppression).
struct FilterMetrics {
  double f0d_hz{0.0};        // grid frequency of max |sdd21|
  double band_lo_hz{0.0};    // interpolated outermost 3-dB crossings
  double band_hi_hz{0.0};
  double fbw{0.0};           // (band_hi - band_lo) / f0d
  double il_db{0.0};         // -|sdd21|_dB at f0d
  double cm_rejection_db{0.0};  // -max in-band |scc21|_dB
  double cmrr_db{0.0};          // min in-band (|sdd21|_dB - |scc21|_dB)
  double cm_threshold_db{0.0};  // threshold used for the suppression band
  bool cm_supp_exists{false};   // |scc21| <= -threshold at f0d at all?
  double cm_supp_lo_hz{0.0};    // maximal contiguous band around f0d where
  double cm_supp_hi_hz{0.0};    // |scc21|_dB <= -threshold (grid-clamped)
};

// Measure a sweep. cm_threshold_db is the common-mode suppression level in
// positive dB (e.g. 30 for a -30 dB criterion). Throws MetricsError when the
// passband's 3-dB points are not bracketed by the grid.
FilterMetrics metrics(const SweepResult& sr, double cm_threshold_db);

// Common-mode rejection -|s21|_dB at probe_hz for each cascade order in
// n_list. Orders must be >= 1.
std::vector<double> cm_rejection_scaling(const TwoPortModel& cm_cell,
                                         std::span<const int> n_list,
                                         double probe_hz, double z_ref_ohm);

}  // namespace dsrkit
