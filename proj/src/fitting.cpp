#include "dsrkit/fitting.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dsrkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDbFloor = -100.0;  // measured noise floor for dB errors

double clamped_db(Complex s) { return std::max(mag_db(s), kDbFloor); }

// Wrap a degree difference into (-180, 180].
double wrap_deg(double d) {
  d = std::fmod(d + 180.0, 360.0);
  if (d < 0.0) {
    d += 360.0;
  }
  return d - 180.0;
}

}  // namespace

std::size_t parameter_count(FitCellKind kind) {
  switch (kind) {
    case FitCellKind::dm_bandpass:
      return 5;
    case FitCellKind::cm_bandpass:
      return 3;
    case FitCellKind::dm_bandstop:
      return 4;
  }
  throw std::logic_error("unhandled cell kind");
}

std::vector<std::string> parameter_names(FitCellKind kind) {
  switch (kind) {
    case FitCellKind::dm_bandpass:
      return {"l_line_h", "c_gap_f", "c_coup_f", "l_strip_half_h",
              "c_patch_f"};
    case FitCellKind::cm_bandpass:
      return {"l_line_h", "c_gap_f", "c1_f"};
    case FitCellKind::dm_bandstop:
      return {"l_line_h", "c_coup_f", "l_strip_half_h", "c_patch_f"};
  }
  throw std::logic_error("unhandled cell kind");
}

void FitProblem::validate() const {
  const std::size_t np = parameter_count(kind);
  if (bounds.size() != np) {
    throw std::invalid_argument("one bound pair per parameter required");
  }
  for (const FitBounds& b : bounds) {
    if (!(b.lower > 0.0) || !(b.upper > b.lower) || !std::isfinite(b.upper)) {
      throw std::invalid_argument("bounds must satisfy 0 < lower < upper");
    }
  }
  if (freq_hz.size() != target.size()) {
    throw std::invalid_argument("frequency and target lengths differ");
  }
  if (freq_hz.size() < 2 * np) {
    throw std::invalid_argument(
        "need at least two data points per free parameter");
  }
  double last = 0.0;
  for (double f : freq_hz) {
    if (!(f > last)) {
      throw std::invalid_argument(
          "frequencies must be positive and strictly increasing");
    }
    last = f;
  }
  if (!weights.empty() && weights.size() != freq_hz.size()) {
    throw std::invalid_argument("weights length differs from data length");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("weights must be non-negative");
    }
  }
  if (!(mag_weight >= 0.0) || !(phase_weight >= 0.0)) {
    throw std::invalid_argument("component weights must be non-negative");
  }
  if (!(z_ref_ohm > 0.0)) {
    throw std::invalid_argument("reference impedance must be positive");
  }
}

SParams2 evaluate_cell(FitCellKind kind, CellTopology topology,
                       std::span<const double> params, double f_hz,
                       double z_ref_ohm) {
  if (params.size() != parameter_count(kind)) {
    throw std::invalid_argument("parameter vector has wrong length");
  }
  TwoPortABCD net;
  switch (kind) {
    case FitCellKind::dm_bandpass:
      net = dm_bandpass_cell(
          {params[0], params[1], params[2], params[3], params[4]}, f_hz,
          topology);
      break;
    case FitCellKind::cm_bandpass:
      net = cm_bandpass_cell({params[0], params[1], params[2]}, f_hz,
                             topology);
      break;
    case FitCellKind::dm_bandstop:
      net = dm_bandstop_cell({params[0], params[1], params[2], params[3]},
                             f_hz);
      break;
  }
  return abcd_to_s(net, z_ref_ohm);
}

double objective(std::span<const double> params, const FitProblem& problem) {
  const std::size_t np = parameter_count(problem.kind);
  if (params.size() != np) {
    throw std::invalid_argument("parameter vector has wrong length");
  }
  for (std::size_t i = 0; i < np; ++i) {
    if (!(params[i] > 0.0) || !std::isfinite(params[i]) ||
        params[i] < problem.bounds[i].lower ||
        params[i] > problem.bounds[i].upper) {
      return kInf;
    }
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < problem.freq_hz.size(); ++k) {
    const SParams2 model = evaluate_cell(problem.kind, problem.topology,
                                         params, problem.freq_hz[k],
                                         problem.z_ref_ohm);
    const SParams2& want = problem.target[k];
    const double d21 = clamped_db(model.s21) - clamped_db(want.s21);
    const double d11 = clamped_db(model.s11) - clamped_db(want.s11);
    const double p21 = wrap_deg(phase_deg(model.s21) - phase_deg(want.s21));
    const double p11 = wrap_deg(phase_deg(model.s11) - phase_deg(want.s11));
    const double w = problem.weights.empty() ? 1.0 : problem.weights[k];
    sum += w * (problem.mag_weight * (d21 * d21 + d11 * d11) +
                problem.phase_weight * (p21 * p21 + p11 * p11));
  }
  return std::isnan(sum) ? kInf : sum;
}

namespace {

using Vec = std::vector<double>;

double simplex_diameter(const std::vector<Vec>& verts) {
  double diam = 0.0;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    for (std::size_t k = 0; k < verts[0].size(); ++k) {
      diam = std::max(diam, std::abs(verts[i][k] - verts[0][k]));
    }
  }
  return diam;
}

}  // namespace

FitResult fit(const FitProblem& problem, std::span<const double> initial,
              const FitOptions& options) {
  problem.validate();
  const std::size_t n = parameter_count(problem.kind);
  if (initial.size() != n) {
    throw std::invalid_argument("initial parameter vector has wrong length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (initial[i] < problem.bounds[i].lower ||
        initial[i] > problem.bounds[i].upper) {
      throw std::invalid_argument("initial parameters must lie within bounds");
    }
  }
  if (options.max_evals < 1 || options.restarts < 0 ||
      !(options.initial_step > 0.0) || !(options.tolerance > 0.0)) {
    throw std::invalid_argument("invalid fit options");
  }

  // All simplex motion happens in u = log(p): positivity is structural and
  // the step sizes become scale-free.
  Vec lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = std::log(problem.bounds[i].lower);
    hi[i] = std::log(problem.bounds[i].upper);
  }
  const auto clip = [&](Vec& u) {
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = std::clamp(u[i], lo[i], hi[i]);
    }
  };
  const auto to_params = [&](const Vec& u) {
    Vec p(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = std::exp(u[i]);
    }
    return p;
  };

  FitResult result;
  int evals = 0;
  const auto budget_left = [&] { return evals < options.max_evals; };
  const auto eval_u = [&](const Vec& u) {
    ++evals;
    return objective(to_params(u), problem);
  };

  Vec best_u(n);
  for (std::size_t i = 0; i < n; ++i) {
    best_u[i] = std::log(initial[i]);
  }
  clip(best_u);
  // The incumbent is tracked in parameter space: exp(log(p)) need not
  // reproduce p, and the caller's exact start must come back unchanged when
  // nothing strictly better is found.
  Vec best_p(initial.begin(), initial.end());
  ++evals;
  double best_f = objective(best_p, problem);

  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  bool converged = false;
  int iterations = 0;
  std::vector<double> trace;

  for (int cycle = 0; cycle <= options.restarts && budget_left(); ++cycle) {
    // Fresh simplex around the incumbent best; restarts use smaller edges.
    const double step = options.initial_step * std::pow(0.25, cycle);
    std::vector<Vec> verts(n + 1, best_u);
    for (std::size_t i = 0; i < n; ++i) {
      Vec& v = verts[i + 1];
      v[i] = best_u[i] + step <= hi[i] ? best_u[i] + step : best_u[i] - step;
      v[i] = std::clamp(v[i], lo[i], hi[i]);
      if (v[i] == best_u[i]) {
        v[i] = 0.5 * (lo[i] + hi[i]);  // interval narrower than the step
      }
    }
    Vec fv(n + 1);
    fv[0] = best_f;
    bool init_done = true;
    for (std::size_t i = 1; i <= n; ++i) {
      if (!budget_left()) {
        init_done = false;
        break;
      }
      fv[i] = eval_u(verts[i]);
    }
    if (!init_done) {
      break;
    }

    bool cycle_converged = false;
    std::vector<std::size_t> order(n + 1);
    while (true) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&fv](std::size_t a, std::size_t b) {
                         return fv[a] < fv[b];
                       });
      std::vector<Vec> sorted_v(n + 1);
      Vec sorted_f(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        sorted_v[i] = verts[order[i]];
        sorted_f[i] = fv[order[i]];
      }
      verts.swap(sorted_v);
      fv.swap(sorted_f);

      if (fv[0] < best_f) {
        best_f = fv[0];
        best_u = verts[0];
        best_p = to_params(verts[0]);
      }
      ++iterations;
      trace.push_back(best_f);

      const double spread = fv[n] - fv[0];
      if (spread <= options.tolerance * std::max(std::abs(fv[n]), DBL_MIN) ||
          simplex_diameter(verts) <= options.tolerance) {
        cycle_converged = true;
        break;
      }
      if (!budget_left()) {
        break;
      }

      Vec centroid(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          centroid[k] += verts[i][k] / static_cast<double>(n);
        }
      }
      const auto blend = [&](double t) {
        Vec u(n);
        for (std::size_t k = 0; k < n; ++k) {
          u[k] = centroid[k] + t * (centroid[k] - verts[n][k]);
        }
        clip(u);
        return u;
      };

      const Vec xr = blend(kReflect);
      const double fr = eval_u(xr);
      if (fr < fv[0]) {
        if (!budget_left()) {
          verts[n] = xr;
          fv[n] = fr;
          break;
        }
        const Vec xe = blend(kExpand);
        const double fe = eval_u(xe);
        if (fe < fr) {
          verts[n] = xe;
          fv[n] = fe;
        } else {
          verts[n] = xr;
          fv[n] = fr;
        }
        continue;
      }
      if (fr < fv[n - 1]) {
        verts[n] = xr;
        fv[n] = fr;
        continue;
      }
      if (!budget_left()) {
        break;
      }
      const bool outside = fr < fv[n];
      const Vec xc = blend(outside ? kContract : -kContract);
      const double fc = eval_u(xc);
      if (fc < (outside ? fr : fv[n])) {
        verts[n] = xc;
        fv[n] = fc;
        continue;
      }
      // Shrink everything toward the current best vertex.
      bool shrink_done = true;
      for (std::size_t i = 1; i <= n; ++i) {
        if (!budget_left()) {
          shrink_done = false;
          break;
        }
        for (std::size_t k = 0; k < n; ++k) {
          verts[i][k] = verts[0][k] + kShrink * (verts[i][k] - verts[0][k]);
        }
        clip(verts[i]);
        fv[i] = eval_u(verts[i]);
      }
      if (!shrink_done) {
        break;
      }
    }

    for (std::size_t i = 0; i <= n; ++i) {
      if (fv[i] < best_f) {
        best_f = fv[i];
        best_u = verts[i];
        best_p = to_params(verts[i]);
      }
    }
    converged = cycle_converged;
    if (!cycle_converged) {
      break;  // evaluation budget ran out mid-cycle
    }
  }

  result.parameters = std::move(best_p);
  result.cost = best_f;
  result.iterations = iterations;
  result.evaluations = evals;
  result.converged = converged;
  result.trace = std::move(trace);
  return result;
}

}  // namespace dsrkit
