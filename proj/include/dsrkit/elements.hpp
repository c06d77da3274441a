#pragma once

#include <memory>
#include <vector>

#include "dsrkit/netcore.hpp"

namespace dsrkit {

enum class ElementKind { inductor, capacitor, resistor };

// A single ideal lumped element. value is in henries, farads or ohms
// depending on kind, and must be positive and finite.
struct Element {
  ElementKind kind;
  double value;
};

// Validating constructors; throw std::invalid_argument on value <= 0 or a
// non-finite value.
Element inductor(double henries);
Element capacitor(double farads);
Element resistor(double ohms);

// Impedance of a single element at f_hz (> 0, else std::domain_error).
// jwL for inductors, 1/(jwC) for capacitors, R for resistors.
Complex element_impedance(const Element& e, double f_hz);

// An impedance that may be an exact open circuit. Parallel LC branches hit
// true poles at discrete frequencies; representing them explicitly keeps the
// network math free of NaNs.
struct Impedance {
  Complex value{0.0};
  bool is_infinite{false};

  static Impedance finite(Complex z) { return {z, false}; }
  static Impedance infinite() { return {Complex{0.0}, true}; }
};

// Relative cancellation threshold below which a sum of admittances (or the
// closed-form resonator denominator) is treated as an exact pole.
inline constexpr double kPoleCancelTol = 1e-12;

// Magnitude used to stand in for an exact short in a shunt position or an
// exact open in a series position, so that downstream S-parameters saturate
// at 0/1 instead of producing NaNs.
inline constexpr double kClampMagnitude = 1e30;

// One-port reactive network built from elements combined in series and in
// parallel. Immutable once built; cheap to copy (nodes are shared).
class Branch {
 public:
  // Single element leaf.
  static Branch leaf(const Element& e);
  // Series / parallel combination of two or more branches; throws
  // std::invalid_argument on fewer than two children.
  static Branch series(std::vector<Branch> children);
  static Branch parallel(std::vector<Branch> children);

 private:
  friend Impedance branch_impedance(const Branch& b, double f_hz);

  enum class Kind { leaf, series, parallel };

  struct Node {
    Kind kind;
    Element element{ElementKind::resistor, 1.0};  // valid for leaves only
    std::vector<Branch> children;
  };

  std::shared_ptr<const Node> node_;
};

// Impedance of a branch at f_hz (> 0, else std::domain_error). A series
// combination containing an open is open; a parallel combination whose
// admittances cancel (relative to the sum of their magnitudes, see
// kPoleCancelTol) is open; a parallel combination containing a short is a
// short.
Impedance branch_impedance(const Branch& b, double f_hz);

// Closed form for the resonator loading branch used throughout: capacitor
// c_f in series with the parallel combination of l_h and cc_f,
//
//   Z(w) = (1 - w^2 l (c + cc)) / (jwc (1 - w^2 l cc)).
//
// Open-circuit pole at w^2 l cc = 1 (detected with kPoleCancelTol). All
// element values must be positive; f_hz > 0.
Impedance dsr_shunt_impedance(double c_f, double l_h, double cc_f,
                              double f_hz);

// Transmission zero of that branch: 1 / (2 pi sqrt(l (c + cc))).
double dsr_shunt_zero_hz(double c_f, double l_h, double cc_f);
// Pole of that branch: 1 / (2 pi sqrt(l cc)).
double dsr_shunt_pole_hz(double l_h, double cc_f);

// Embed an impedance as a series element of a two-port. An open is clamped
// to a j*kClampMagnitude series reactance (transmission collapses to ~0).
TwoPortABCD to_series_abcd(const Impedance& z);

// Embed an impedance as a shunt element of a two-port. An open contributes
// nothing (identity); an exact short is clamped to a j*kClampMagnitude shunt
// admittance.
TwoPortABCD to_shunt_abcd(const Impedance& z);

}  // namespace dsrkit
