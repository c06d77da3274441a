#pragma once

#include <string>

#include "dsrkit/filterlab.hpp"

namespace dsrkit {

// Render |sdd21| and |scc21| in dB against frequency in GHz as a standalone
// SVG document. Levels are clipped at -80 dB. Output is deterministic:
// identical sweeps produce identical bytes.
std::string sweep_svg(const SweepResult& sr, const std::string& title);

}  // namespace dsrkit
