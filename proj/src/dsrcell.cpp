#include "dsrkit/dsrcell.hpp"

#include <cmath>
#include <stdexcept>

#include "dsrkit/elements.hpp"

namespace dsrkit {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) +
                                " must be positive and finite");
  }
}

}  // namespace

void DsrCellParams::validate() const {
  require_positive(l_line_h, "l_line_h");
  require_positive(c_gap_f, "c_gap_f");
  require_positive(c_coup_f, "c_coup_f");
  require_positive(l_strip_half_h, "l_strip_half_h");
  require_positive(c_patch_f, "c_patch_f");
}

void CmCellParams::validate() const {
  require_positive(l_line_h, "l_line_h");
  require_positive(c_gap_f, "c_gap_f");
  require_positive(c1_f, "c1_f");
}

void BandstopCellParams::validate() const {
  require_positive(l_line_h, "l_line_h");
  require_positive(c_coup_f, "c_coup_f");
  require_positive(l_strip_half_h, "l_strip_half_h");
  require_positive(c_patch_f, "c_patch_f");
}

namespace {

// Assemble a bandpass cell around an already-evaluated shunt leg.
TwoPortABCD bandpass_cell(double l_line_h, double c_gap_f,
                          const TwoPortABCD& shunt, double f_hz,
                          CellTopology topology) {
  const Complex z_gap = element_impedance(capacitor(c_gap_f), f_hz);
  if (topology == CellTopology::gamma) {
    const Complex z_line = element_impedance(inductor(l_line_h), f_hz);
    return abcd_series(z_gap) * abcd_series(z_line) * shunt;
  }
  const Complex z_half = element_impedance(inductor(l_line_h / 2.0), f_hz);
  const TwoPortABCD arm = abcd_series(z_gap) * abcd_series(z_half);
  return arm * shunt * abcd_series(z_half) * abcd_series(z_gap);
}

}  // namespace

TwoPortABCD dm_bandpass_cell(const DsrCellParams& p, double f_hz,
                             CellTopology topology) {
  p.validate();
  const Impedance z_sh =
      dsr_shunt_impedance(p.c_coup_f, p.l_strip_half_h, p.c_patch_f, f_hz);
  return bandpass_cell(p.l_line_h, p.c_gap_f, to_shunt_abcd(z_sh), f_hz,
                       topology);
}

TwoPortABCD cm_bandpass_cell(const CmCellParams& p, double f_hz,
                             CellTopology topology) {
  p.validate();
  const Complex z_c1 = element_impedance(capacitor(p.c1_f), f_hz);
  return bandpass_cell(p.l_line_h, p.c_gap_f,
                       to_shunt_abcd(Impedance::finite(z_c1)), f_hz, topology);
}

CmCellParams cm_params_from_dm(const DsrCellParams& dm, double l_line_h,
                               double c_gap_f) {
  dm.validate();
  CmCellParams cm;
  cm.l_line_h = l_line_h;
  cm.c_gap_f = c_gap_f;
  cm.c1_f = dm.c_coup_f * dm.c_patch_f / (dm.c_coup_f + dm.c_patch_f);
  cm.validate();
  return cm;
}

TwoPortABCD dm_bandstop_cell(const BandstopCellParams& p, double f_hz) {
  p.validate();
  const Impedance z_sh =
      dsr_shunt_impedance(p.c_coup_f, p.l_strip_half_h, p.c_patch_f, f_hz);
  const Complex z_half = element_impedance(inductor(p.l_line_h / 2.0), f_hz);
  return abcd_series(z_half) * to_shunt_abcd(z_sh) * abcd_series(z_half);
}

TwoPortABCD cm_bandstop_cell(double l_line_h, double f_hz) {
  const Complex z_line = element_impedance(inductor(l_line_h), f_hz);
  return abcd_series(z_line);
}

}  // namespace dsrkit
