#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dsrkit {

using Complex = std::complex<double>;

// Chain (transmission) matrix of a linear two-port:
//   [V1]   [a b] [ V2]
//   [I1] = [c d] [-I2]
// a and d are dimensionless, b is in ohms, c in siemens. Cascading two-ports
// multiplies their chain matrices with the input side on the left.
struct TwoPortABCD {
  Complex a{1.0};
  Complex b{0.0};
  Complex c{0.0};
  Complex d{1.0};
};

TwoPortABCD operator*(const TwoPortABCD& lhs, const TwoPortABCD& rhs);

// Series impedance z: [[1, z], [0, 1]]. Throws std::domain_error if z is not
// finite.
TwoPortABCD abcd_series(Complex z);

// Shunt admittance y: [[1, 0], [y, 1]]. Throws std::domain_error if y is not
// finite.
TwoPortABCD abcd_shunt(Complex y);

// Ordered product of a cascade, first element at the input port. Throws
// std::invalid_argument on an empty sequence.
TwoPortABCD cascade(std::span<const TwoPortABCD> nets);

// Chain matrix of the same network looked at from the other side
// (ports 1 and 2 exchanged).
TwoPortABCD swap_ports(const TwoPortABCD& net);

// Scattering parameters of a two-port against a common real reference
// impedance on both ports.
struct SParams2 {
  Complex s11{0.0};
  Complex s12{0.0};
  Complex s21{0.0};
  Complex s22{0.0};
  double z_ref{50.0};  // ohms, > 0
};

// Chain -> scattering. Throws std::domain_error if z_ref_ohm <= 0 or the
// conversion denominator a + b/z0 + c*z0 + d vanishes.
SParams2 abcd_to_s(const TwoPortABCD& net, double z_ref_ohm);

// Scattering -> chain. Requires s21 != 0 (a network with no through path has
// no finite chain matrix); throws std::domain_error otherwise.
TwoPortABCD s_to_abcd(const SParams2& s);

// 20*log10|s|. Returns -infinity for s == 0.
double mag_db(Complex s);

// Argument of s in degrees, principal value in (-180, 180].
double phase_deg(Complex s);

// Strictly increasing, positive, non-empty list of sweep frequencies in Hz.
class FrequencyGrid {
 public:
  // Validates the points; throws std::invalid_argument on an empty list,
  // a non-positive frequency, or a non-increasing pair.
  explicit FrequencyGrid(std::vector<double> points_hz);

  // n evenly spaced points from f_start_hz to f_stop_hz inclusive. Requires
  // n >= 2 and 0 < f_start_hz < f_stop_hz.
  static FrequencyGrid linspace(double f_start_hz, double f_stop_hz,
                                std::size_t n);

  const std::vector<double>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

 private:
  std::vector<double> points_;
};

}  // namespace dsrkit
