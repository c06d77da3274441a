#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "dsrkit/elements.hpp"
#include "dsrkit/netcore.hpp"

namespace testsupport {

using dsrkit::Complex;
using dsrkit::TwoPortABCD;

inline bool complex_near(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol;
}

// Relative closeness with a floor of 1 so tiny values compare absolutely.
inline bool entry_near(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}

// Random lossless ladder: 1..max_elems series/shunt inductors and capacitors.
// Cascades whose chain entries grow far beyond the 50-ohm scale are redrawn;
// tight floating-point identities (unit determinant, power conservation) are
// only meaningful for such reasonably matched networks.
inline TwoPortABCD random_reactive_cascade(std::mt19937_64& rng,
                                           double f_hz, int max_elems = 8) {
  std::uniform_int_distribution<int> count(1, max_elems);
  std::uniform_int_distribution<int> coin(0, 1);
  TwoPortABCD acc;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const int n = count(rng);
    acc = TwoPortABCD{};
    for (int i = 0; i < n; ++i) {
      const bool use_inductor = coin(rng) == 1;
      const Complex z =
          use_inductor
              ? dsrkit::element_impedance(
                    dsrkit::inductor(log_uniform(rng, 5e-10, 5e-9)), f_hz)
              : dsrkit::element_impedance(
                    dsrkit::capacitor(log_uniform(rng, 5e-13, 5e-12)), f_hz);
      acc = acc * (coin(rng) == 1 ? dsrkit::abcd_series(z)
                                  : dsrkit::abcd_shunt(1.0 / z));
    }
    const double scale =
        std::max(std::max(std::abs(acc.a), std::abs(acc.d)),
                 std::max(std::abs(acc.b) / 50.0, std::abs(acc.c) * 50.0));
    if (scale <= 25.0) {
      break;
    }
  }
  return acc;
}

}  // namespace testsupport
