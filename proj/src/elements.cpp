#include "dsrkit/elements.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace dsrkit {

namespace {

Element make_element(ElementKind kind, double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) +
                                " value must be positive and finite");
  }
  return {kind, value};
}

double angular(double f_hz) {
  if (!(f_hz > 0.0) || !std::isfinite(f_hz)) {
    throw std::domain_error("frequency must be positive");
  }
  return 2.0 * std::numbers::pi * f_hz;
}

}  // namespace

Element inductor(double henries) {
  return make_element(ElementKind::inductor, henries, "inductor");
}

Element capacitor(double farads) {
  return make_element(ElementKind::capacitor, farads, "capacitor");
}

Element resistor(double ohms) {
  return make_element(ElementKind::resistor, ohms, "resistor");
}

Complex element_impedance(const Element& e, double f_hz) {
  const double w = angular(f_hz);
  switch (e.kind) {
    case ElementKind::inductor:
      return Complex{0.0, w * e.value};
    case ElementKind::capacitor:
      return Complex{0.0, -1.0 / (w * e.value)};
    case ElementKind::resistor:
      return Complex{e.value, 0.0};
  }
  throw std::logic_error("unhandled element kind");
}

Branch Branch::leaf(const Element& e) {
  Branch b;
  b.node_ = std::make_shared<const Node>(Node{Kind::leaf, e, {}});
  return b;
}

Branch Branch::series(std::vector<Branch> children) {
  if (children.size() < 2) {
    throw std::invalid_argument("series branch needs at least two children");
  }
  Branch b;
  b.node_ = std::make_shared<const Node>(
      Node{Kind::series, Element{ElementKind::resistor, 1.0},
           std::move(children)});
  return b;
}

Branch Branch::parallel(std::vector<Branch> children) {
  if (children.size() < 2) {
    throw std::invalid_argument("parallel branch needs at least two children");
  }
  Branch b;
  b.node_ = std::make_shared<const Node>(
      Node{Kind::parallel, Element{ElementKind::resistor, 1.0},
           std::move(children)});
  return b;
}

Impedance branch_impedance(const Branch& b, double f_hz) {
  const auto& node = *b.node_;
  switch (node.kind) {
    case Branch::Kind::leaf:
      return Impedance::finite(element_impedance(node.element, f_hz));
    case Branch::Kind::series: {
      Complex sum{0.0};
      for (const Branch& child : node.children) {
        const Impedance z = branch_impedance(child, f_hz);
        if (z.is_infinite) {
          return Impedance::infinite();  // an open breaks the series path
        }
        sum += z.value;
      }
      return Impedance::finite(sum);
    }
    case Branch::Kind::parallel: {
      Complex y_sum{0.0};
      double y_mag_sum = 0.0;
      for (const Branch& child : node.children) {
        const Impedance z = branch_impedance(child, f_hz);
        if (z.is_infinite) {
          continue;  // an open contributes no admittance
        }
        if (std::abs(z.value) == 0.0) {
          return Impedance::finite(Complex{0.0});  // a short wins outright
        }
        const Complex y = 1.0 / z.value;
        y_sum += y;
        y_mag_sum += std::abs(y);
      }
      // Anti-resonance: the branch admittances cancel to numerical noise.
      if (std::abs(y_sum) <= kPoleCancelTol * y_mag_sum) {
        return Impedance::infinite();
      }
      return Impedance::finite(1.0 / y_sum);
    }
  }
  throw std::logic_error("unhandled branch kind");
}

Impedance dsr_shunt_impedance(double c_f, double l_h, double cc_f,
                              double f_hz) {
  (void)capacitor(c_f);  // reuse the constructors for validation
  (void)inductor(l_h);
  (void)capacitor(cc_f);
  const double w = angular(f_hz);
  const double w2 = w * w;
  const double pole_term = w2 * l_h * cc_f;
  const double den = 1.0 - pole_term;
  if (std::abs(den) <= kPoleCancelTol * (1.0 + pole_term)) {
    return Impedance::infinite();
  }
  const double num = 1.0 - w2 * l_h * (c_f + cc_f);
  return Impedance::finite(num / (Complex{0.0, w * c_f} * den));
}

double dsr_shunt_zero_hz(double c_f, double l_h, double cc_f) {
  (void)capacitor(c_f);
  (void)inductor(l_h);
  (void)capacitor(cc_f);
  return 1.0 / (2.0 * std::numbers::pi * std::sqrt(l_h * (c_f + cc_f)));
}

double dsr_shunt_pole_hz(double l_h, double cc_f) {
  (void)inductor(l_h);
  (void)capacitor(cc_f);
  return 1.0 / (2.0 * std::numbers::pi * std::sqrt(l_h * cc_f));
}

TwoPortABCD to_series_abcd(const Impedance& z) {
  if (z.is_infinite) {
    return abcd_series(Complex{0.0, kClampMagnitude});
  }
  return abcd_series(z.value);
}

TwoPortABCD to_shunt_abcd(const Impedance& z) {
  if (z.is_infinite) {
    return {};  // open shunt leg: the line does not see it
  }
  if (std::abs(z.value) == 0.0) {
    return abcd_shunt(Complex{0.0, kClampMagnitude});
  }
  return abcd_shunt(1.0 / z.value);
}

}  // namespace dsrkit
