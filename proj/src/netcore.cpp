#include "dsrkit/netcore.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace dsrkit {

namespace {

bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

TwoPortABCD operator*(const TwoPortABCD& lhs, const TwoPortABCD& rhs) {
  return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
          lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

TwoPortABCD abcd_series(Complex z) {
  if (!is_finite(z)) {
    throw std::domain_error("series impedance must be finite");
  }
  return {1.0, z, 0.0, 1.0};
}

TwoPortABCD abcd_shunt(Complex y) {
  if (!is_finite(y)) {
    throw std::domain_error("shunt admittance must be finite");
  }
  return {1.0, 0.0, y, 1.0};
}

TwoPortABCD cascade(std::span<const TwoPortABCD> nets) {
  if (nets.empty()) {
    throw std::invalid_argument("cascade of zero two-ports");
  }
  TwoPortABCD acc = nets.front();
  for (std::size_t i = 1; i < nets.size(); ++i) {
    acc = acc * nets[i];
  }
  return acc;
}

TwoPortABCD swap_ports(const TwoPortABCD& net) {
  const Complex det = net.a * net.d - net.b * net.c;
  if (std::abs(det) == 0.0) {
    throw std::domain_error("singular two-port cannot be reversed");
  }
  return {net.d / det, net.b / det, net.c / det, net.a / det};
}

SParams2 abcd_to_s(const TwoPortABCD& net, double z_ref_ohm) {
  if (!(z_ref_ohm > 0.0) || !std::isfinite(z_ref_ohm)) {
    throw std::domain_error("reference impedance must be positive");
  }
  const double z0 = z_ref_ohm;
  const Complex den = net.a + net.b / z0 + net.c * z0 + net.d;
  if (std::abs(den) == 0.0) {
    throw std::domain_error("chain-to-scattering conversion is singular");
  }
  SParams2 s;
  s.s11 = (net.a + net.b / z0 - net.c * z0 - net.d) / den;
  s.s21 = 2.0 / den;
  s.s12 = 2.0 * (net.a * net.d - net.b * net.c) / den;
  s.s22 = (-net.a + net.b / z0 - net.c * z0 + net.d) / den;
  s.z_ref = z0;
  return s;
}

TwoPortABCD s_to_abcd(const SParams2& s) {
  if (!(s.z_ref > 0.0) || !std::isfinite(s.z_ref)) {
    throw std::domain_error("reference impedance must be positive");
  }
  if (std::abs(s.s21) == 0.0) {
    throw std::domain_error(
        "network with s21 == 0 has no finite chain matrix");
  }
  const double z0 = s.z_ref;
  const Complex two_s21 = 2.0 * s.s21;
  TwoPortABCD net;
  net.a = ((1.0 + s.s11) * (1.0 - s.s22) + s.s12 * s.s21) / two_s21;
  net.b = z0 * ((1.0 + s.s11) * (1.0 + s.s22) - s.s12 * s.s21) / two_s21;
  net.c = ((1.0 - s.s11) * (1.0 - s.s22) - s.s12 * s.s21) / (z0 * two_s21);
  net.d = ((1.0 - s.s11) * (1.0 + s.s22) + s.s12 * s.s21) / two_s21;
  return net;
}

double mag_db(Complex s) { return 20.0 * std::log10(std::abs(s)); }

double phase_deg(Complex s) {
  double deg = std::atan2(s.imag(), s.real()) * 180.0 / std::numbers::pi;
  if (deg <= -180.0) {
    deg += 360.0;
  }
  return deg;
}

FrequencyGrid::FrequencyGrid(std::vector<double> points_hz)
    : points_(std::move(points_hz)) {
  if (points_.empty()) {
    throw std::invalid_argument("frequency grid is empty");
  }
  double last = 0.0;
  for (double f : points_) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw std::invalid_argument("frequencies must be positive and finite");
    }
    if (f <= last) {
      throw std::invalid_argument("frequencies must be strictly increasing");
    }
    last = f;
  }
}

FrequencyGrid FrequencyGrid::linspace(double f_start_hz, double f_stop_hz,
                                      std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("linspace needs at least two points");
  }
  if (!(f_start_hz > 0.0) || !(f_stop_hz > f_start_hz)) {
    throw std::invalid_argument("linspace needs 0 < start < stop");
  }
  std::vector<double> pts(n);
  const double step = (f_stop_hz - f_start_hz) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = f_start_hz + step * static_cast<double>(i);
  }
  pts.back() = f_stop_hz;  // avoid accumulated rounding at the top end
  return FrequencyGrid(std::move(pts));
}

}  // namespace dsrkit
