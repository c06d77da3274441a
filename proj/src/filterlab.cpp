#include "dsrkit/filterlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dsrkit/errors.hpp"

namespace dsrkit {

TwoPortModel build_filter(const TwoPortModel& cell, int n) {
  if (!cell) {
    throw std::invalid_argument("cell model is empty");
  }
  if (n < 1) {
    throw std::invalid_argument("cascade order must be at least 1");
  }
  return [cell, n](double f_hz) {
    TwoPortABCD acc = cell(f_hz);
    for (int i = 1; i < n; ++i) {
      acc = acc * cell(f_hz);
    }
    return acc;
  };
}

SweepResult sweep(const TwoPortModel& dm_model, const TwoPortModel& cm_model,
                  const FrequencyGrid& grid, double z_ref_ohm) {
  if (!dm_model || !cm_model) {
    throw std::invalid_argument("sweep needs both mode models");
  }
  SweepResult out{grid, {}, {}, z_ref_ohm};
  out.dm.reserve(grid.size());
  out.cm.reserve(grid.size());
  for (double f : grid) {
    out.dm.push_back(abcd_to_s(dm_model(f), z_ref_ohm));
    out.cm.push_back(abcd_to_s(cm_model(f), z_ref_ohm));
  }
  return out;
}

FrequencyGrid default_grid(double f0_hz) {
  if (!(f0_hz > 0.0) || !std::isfinite(f0_hz)) {
    throw std::invalid_argument("f0_hz must be positive");
  }
  return FrequencyGrid::linspace(0.25 * f0_hz, 2.5 * f0_hz, 1001);
}

namespace {

// Frequency where a linear interpolant between (f1, v1) and (f2, v2)
// crosses level.
double cross_between(double f1, double v1, double f2, double v2,
                     double level) {
  return f1 + (level - v1) * (f2 - f1) / (v2 - v1);
}

}  // namespace

FilterMetrics metrics(const SweepResult& sr, double cm_threshold_db) {
  const std::size_t n = sr.grid.size();
  if (sr.dm.size() != n || sr.cm.size() != n) {
    throw std::invalid_argument("sweep arrays do not match the grid");
  }
  if (!(cm_threshold_db > 0.0)) {
    throw std::invalid_argument("cm_threshold_db must be positive");
  }

  std::vector<double> dm_db(n), cm_db(n);
  for (std::size_t i = 0; i < n; ++i) {
    dm_db[i] = mag_db(sr.dm[i].s21);
    cm_db[i] = mag_db(sr.cm[i].s21);
  }

  std::size_t peak = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (dm_db[i] > dm_db[peak]) {
      peak = i;
    }
  }
  if (!std::isfinite(dm_db[peak])) {
    throw MetricsError("differential response has no finite peak");
  }
  const double edge_level = dm_db[peak] - 3.0;

  // Outermost crossings: everything at or above the edge level counts as
  // "inside", so side lobes that clear it widen the reported band.
  std::size_t first_in = 0;
  while (dm_db[first_in] < edge_level) {
    ++first_in;
  }
  std::size_t last_in = n - 1;
  while (dm_db[last_in] < edge_level) {
    --last_in;
  }
  if (first_in == 0 || last_in == n - 1) {
    throw MetricsError(
        "passband is not bracketed: no 3-dB crossings inside the sweep");
  }

  FilterMetrics m;
  m.f0d_hz = sr.grid[peak];
  m.band_lo_hz = cross_between(sr.grid[first_in - 1], dm_db[first_in - 1],
                               sr.grid[first_in], dm_db[first_in], edge_level);
  m.band_hi_hz = cross_between(sr.grid[last_in], dm_db[last_in],
                               sr.grid[last_in + 1], dm_db[last_in + 1],
                               edge_level);
  m.fbw = (m.band_hi_hz - m.band_lo_hz) / m.f0d_hz;
  m.il_db = -dm_db[peak];

  double cm_max = -std::numeric_limits<double>::infinity();
  double ratio_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = first_in; i <= last_in; ++i) {
    cm_max = std::max(cm_max, cm_db[i]);
    ratio_min = std::min(ratio_min, dm_db[i] - cm_db[i]);
  }
  m.cm_rejection_db = -cm_max;
  m.cmrr_db = ratio_min;

  // Maximal contiguous common-mode suppression band containing f0d.
  m.cm_threshold_db = cm_threshold_db;
  const double supp_level = -cm_threshold_db;
  if (cm_db[peak] > supp_level) {
    m.cm_supp_exists = false;
    m.cm_supp_lo_hz = m.cm_supp_hi_hz = m.f0d_hz;
    return m;
  }
  m.cm_supp_exists = true;
  std::size_t a = peak;
  while (a > 0 && cm_db[a - 1] <= supp_level) {
    --a;
  }
  std::size_t b = peak;
  while (b + 1 < n && cm_db[b + 1] <= supp_level) {
    ++b;
  }
  m.cm_supp_lo_hz = a == 0 ? sr.grid.front()
                           : cross_between(sr.grid[a - 1], cm_db[a - 1],
                                           sr.grid[a], cm_db[a], supp_level);
  m.cm_supp_hi_hz = b == n - 1
                        ? sr.grid.back()
                        : cross_between(sr.grid[b], cm_db[b], sr.grid[b + 1],
                                        cm_db[b + 1], supp_level);
  return m;
}

std::vector<double> cm_rejection_scaling(const TwoPortModel& cm_cell,
                                         std::span<const int> n_list,
                                         double probe_hz, double z_ref_ohm) {
  std::vector<double> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    const TwoPortModel filter = build_filter(cm_cell, n);
    out.push_back(-mag_db(abcd_to_s(filter(probe_hz), z_ref_ohm).s21));
  }
  return out;
}

}  // namespace dsrkit
