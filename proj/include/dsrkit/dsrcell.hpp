#pragma once

#include "dsrkit/netcore.hpp"

namespace dsrkit {

// How the series arm of a bandpass cell is arranged around the shunt branch.
//
//  symmetric_t:  Cg --- L/2 --- [shunt] --- L/2 --- Cg
//  gamma:        Cg --- L ----- [shunt]
//
// The tee splits the line inductance in half around the resonator and keeps
// a full gap capacitor on each side, which is the arrangement the design
// equations (gap_capacitance / line_inductance in synth.hpp) are matched to.
// The gamma variant keeps the same total element values in a one-sided cell.
enum class CellTopology { symmetric_t, gamma };

// Differential-mode half-circuit element values of one bandpass cell.
struct DsrCellParams {
  double l_line_h;       // series line inductance L (total per cell)
  double c_gap_f;        // feed gap capacitance Cg (per side of the tee)
  double c_coup_f;       // resonator coupling capacitance C
  double l_strip_half_h; // half-strip inductance Lc of the resonator
  double c_patch_f;      // patch capacitance Cc of the resonator

  // Throws std::invalid_argument unless every value is positive and finite.
  void validate() const;
};

// Common-mode half-circuit element values of one bandpass cell. Under
// common-mode drive the resonator's symmetry plane is open, which turns the
// loading branch into the single capacitor c1 = series(C, Cc).
struct CmCellParams {
  double l_line_h;  // series line inductance L
  double c_gap_f;   // feed gap capacitance Cg
  double c1_f;      // shunt capacitance C1

  void validate() const;
};

// Element values of one bandstop cell: the resonator branch alone loads the
// line, with no gap capacitors.
struct BandstopCellParams {
  double l_line_h;
  double c_coup_f;
  double l_strip_half_h;
  double c_patch_f;

  void validate() const;
};

// Chain matrix of one differential-mode bandpass cell at f_hz.
TwoPortABCD dm_bandpass_cell(const DsrCellParams& p, double f_hz,
                             CellTopology topology = CellTopology::symmetric_t);

// Chain matrix of one common-mode bandpass cell at f_hz. Same series arm as
// the differential cell, with the shunt branch reduced to c1.
TwoPortABCD cm_bandpass_cell(const CmCellParams& p, double f_hz,
                             CellTopology topology = CellTopology::symmetric_t);

// Common-mode parameters implied by a differential cell: c1 is the series
// combination C*Cc/(C+Cc); the line elements may differ from the
// differential ones (e.g. extracted separately), so they are passed in.
CmCellParams cm_params_from_dm(const DsrCellParams& dm, double l_line_h,
                               double c_gap_f);

// Differential-mode bandstop cell: L/2 -- [shunt resonator] -- L/2.
TwoPortABCD dm_bandstop_cell(const BandstopCellParams& p, double f_hz);

// Common-mode bandstop cell: the resonator branch opens, leaving only the
// series line inductance.
TwoPortABCD cm_bandstop_cell(double l_line_h, double f_hz);

}  // namespace dsrkit
