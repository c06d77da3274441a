#pragma once

#include <array>
#include <string>
#include <utility>

namespace dsrkit {

// Sign of the target input reactance used when sizing the shunt resonator
// branch: the branch is required to look like +j*Z0 (plus_j) or -j*Z0
// (minus_j) at the centre frequency, and half that at the lower band edge.
enum class ReactanceSign { plus_j, minus_j };

// Target for a coupled-resonator balanced bandpass design.
struct FilterSpec {
  int order_n;      // number of cascaded cells, >= 1
  double f0_hz;     // centre frequency, > 0
  double fbw;       // fractional bandwidth, 0 < fbw < 1
  double z0_ohm;    // single-ended reference impedance, > 0
  double g_value;   // lowpass prototype element value, > 0

  void validate() const;  // std::domain_error on violation
};

// Normalized susceptance-slope bandwidth: delta = 2 * fbw / g.
double delta_from_fbw(double fbw, double g_value);

// Equidistant band edges f0 * (1 -+ delta / 2). Requires 0 < delta < 2.
std::pair<double, double> band_edges(double f0_hz, double delta);

// Feed gap capacitance making the cell's image impedance real at f0:
// Cg = 1 / (2 Z0 w0).
double gap_capacitance(double f0_hz, double z0_ohm);

// Series line inductance resonant with the gap capacitance loading:
// L = 2 (1 + w0 Cg Z0) / (w0^2 Cg). Equals 6 Z0 / w0 when Cg comes from
// gap_capacitance.
double line_inductance(double f0_hz, double c_gap_f, double z0_ohm);

// Outcome of sizing the three-element shunt branch. The solved raw values
// are always reported; the solution is feasible only when all three are
// positive and finite. Infeasibility is a property of the requested response,
// not a usage error, so it is returned as data rather than thrown.
struct ShuntSolve {
  bool feasible{false};
  double c_coup_f{0.0};
  double l_strip_half_h{0.0};
  double c_patch_f{0.0};
  // Relative errors of the three defining conditions, evaluated through the
  // closed-form branch impedance: reactance at f0, reactance at f1, pole
  // placement at f2. Meaningful only when feasible.
  std::array<double, 3> residuals{0.0, 0.0, 0.0};
  // Names the offending quantities when infeasible; empty otherwise.
  std::string infeasibility;
};

// Solve for (C, Lc, Cc) such that the branch reactance equals
// sign * Z0 at f0 and sign * Z0/2 at f1, with the branch pole at f2.
// Requires 0 < f1 < f0 < f2 and z0_ohm > 0 (std::domain_error otherwise).
ShuntSolve solve_shunt_branch(double f0_hz, double f1_hz, double f2_hz,
                              double z0_ohm, ReactanceSign sign);

// Full sizing report for one cell of a design.
struct SynthReport {
  FilterSpec spec{};
  ReactanceSign convention{ReactanceSign::plus_j};
  double delta{0.0};
  double f1_hz{0.0};   // lower band edge (reactance Z0/2 target)
  double f2_hz{0.0};   // upper band edge (branch pole)
  double c_gap_f{0.0};
  double l_line_h{0.0};
  ShuntSolve shunt{};

  bool feasible() const { return shunt.feasible; }
};

// Run the whole procedure: bandwidth -> band edges -> shunt branch -> feed
// elements. Spec violations throw std::domain_error; an unrealizable shunt
// branch comes back as data in the report.
SynthReport synthesize(const FilterSpec& spec, ReactanceSign convention);

const char* to_string(ReactanceSign sign);

}  // namespace dsrkit
