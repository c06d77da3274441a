#include "dsrkit/synth.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dsrkit/elements.hpp"

namespace dsrkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const char* message) {
  if (!ok) {
    throw std::domain_error(message);
  }
}

std::string format_value(const char* name, double value) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s = %.6e", name, value);
  return buf;
}

}  // namespace

void FilterSpec::validate() const {
  require(order_n >= 1, "order_n must be at least 1");
  require(f0_hz > 0.0 && std::isfinite(f0_hz), "f0_hz must be positive");
  require(fbw > 0.0 && fbw < 1.0, "fbw must lie in (0, 1)");
  require(z0_ohm > 0.0 && std::isfinite(z0_ohm), "z0_ohm must be positive");
  require(g_value > 0.0 && std::isfinite(g_value), "g_value must be positive");
}

double delta_from_fbw(double fbw, double g_value) {
  require(fbw > 0.0 && std::isfinite(fbw), "fbw must be positive");
  require(g_value > 0.0 && std::isfinite(g_value), "g_value must be positive");
  return 2.0 * fbw / g_value;
}

std::pair<double, double> band_edges(double f0_hz, double delta) {
  require(f0_hz > 0.0 && std::isfinite(f0_hz), "f0_hz must be positive");
  require(delta > 0.0 && delta < 2.0, "delta must lie in (0, 2)");
  return {f0_hz * (1.0 - delta / 2.0), f0_hz * (1.0 + delta / 2.0)};
}

double gap_capacitance(double f0_hz, double z0_ohm) {
  require(f0_hz > 0.0 && std::isfinite(f0_hz), "f0_hz must be positive");
  require(z0_ohm > 0.0 && std::isfinite(z0_ohm), "z0_ohm must be positive");
  return 1.0 / (2.0 * z0_ohm * kTwoPi * f0_hz);
}

double line_inductance(double f0_hz, double c_gap_f, double z0_ohm) {
  require(f0_hz > 0.0 && std::isfinite(f0_hz), "f0_hz must be positive");
  require(c_gap_f > 0.0 && std::isfinite(c_gap_f),
          "c_gap_f must be positive");
  require(z0_ohm > 0.0 && std::isfinite(z0_ohm), "z0_ohm must be positive");
  const double w0 = kTwoPi * f0_hz;
  return 2.0 * (1.0 + w0 * c_gap_f * z0_ohm) / (w0 * w0 * c_gap_f);
}

ShuntSolve solve_shunt_branch(double f0_hz, double f1_hz, double f2_hz,
                              double z0_ohm, ReactanceSign sign) {
  require(f1_hz > 0.0 && f1_hz < f0_hz && f0_hz < f2_hz,
          "band frequencies must satisfy 0 < f1 < f0 < f2");
  require(z0_ohm > 0.0 && std::isfinite(z0_ohm), "z0_ohm must be positive");

  const double w0 = kTwoPi * f0_hz;
  const double w1 = kTwoPi * f1_hz;
  const double w2 = kTwoPi * f2_hz;
  const double sgn = sign == ReactanceSign::plus_j ? 1.0 : -1.0;

  // Writing the branch reactance as (w^2 x - 1) / (w C (1 - w^2 p)) with
  // x = Lc (C + Cc) and p = Lc Cc, placing the pole fixes p = 1 / w2^2 and
  // the two reactance conditions become linear in (x, C):
  //   w0^2 x - sgn Z0   w0 (1 - w0^2 p) C = 1
  //   w1^2 x - sgn Z0/2 w1 (1 - w1^2 p) C = 1
  const double p = 1.0 / (w2 * w2);
  const double a11 = w0 * w0;
  const double a12 = -sgn * z0_ohm * w0 * (1.0 - w0 * w0 * p);
  const double a21 = w1 * w1;
  const double a22 = -sgn * (z0_ohm / 2.0) * w1 * (1.0 - w1 * w1 * p);
  const double det = a11 * a22 - a12 * a21;

  ShuntSolve out;
  if (det == 0.0) {
    out.infeasibility = "design equations are degenerate (zero determinant)";
    return out;
  }
  const double x = (a22 - a12) / det;
  const double c = (a11 - a21) / det;
  const double lc = (x - p) / c;
  const double cc = p / lc;
  out.c_coup_f = c;
  out.l_strip_half_h = lc;
  out.c_patch_f = cc;

  std::string bad;
  auto flag = [&bad](bool ok, const char* name, double value) {
    if (!ok) {
      if (!bad.empty()) {
        bad += "; ";
      }
      bad += format_value(name, value);
    }
  };
  flag(c > 0.0 && std::isfinite(c), "c_coup_f", c);
  flag(lc > 0.0 && std::isfinite(lc), "l_strip_half_h", lc);
  flag(cc > 0.0 && std::isfinite(cc), "c_patch_f", cc);
  if (!bad.empty()) {
    out.infeasibility = "non-positive element values: " + bad;
    return out;
  }

  out.feasible = true;
  const double targets[2] = {sgn * z0_ohm, sgn * z0_ohm / 2.0};
  const double freqs[2] = {f0_hz, f1_hz};
  for (int i = 0; i < 2; ++i) {
    const Impedance z = dsr_shunt_impedance(c, lc, cc, freqs[i]);
    out.residuals[i] = z.is_infinite
                           ? std::numeric_limits<double>::infinity()
                           : std::abs(z.value.imag() - targets[i]) /
                                 std::abs(targets[i]);
  }
  out.residuals[2] = std::abs(1.0 - w2 * w2 * lc * cc);
  return out;
}

SynthReport synthesize(const FilterSpec& spec, ReactanceSign convention) {
  spec.validate();
  SynthReport report;
  report.spec = spec;
  report.convention = convention;
  report.delta = delta_from_fbw(spec.fbw, spec.g_value);
  const auto [f1, f2] = band_edges(spec.f0_hz, report.delta);
  report.f1_hz = f1;
  report.f2_hz = f2;
  report.shunt =
      solve_shunt_branch(spec.f0_hz, f1, f2, spec.z0_ohm, convention);
  report.c_gap_f = gap_capacitance(spec.f0_hz, spec.z0_ohm);
  report.l_line_h = line_inductance(spec.f0_hz, report.c_gap_f, spec.z0_ohm);
  return report;
}

const char* to_string(ReactanceSign sign) {
  return sign == ReactanceSign::plus_j ? "plusj" : "minusj";
}

}  // namespace dsrkit
