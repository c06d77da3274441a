#pragma once

#include <array>

#include "dsrkit/netcore.hpp"

namespace dsrkit {

using Matrix2c = std::array<std::array<Complex, 2>, 2>;
using Matrix4c = std::array<std::array<Complex, 4>, 4>;

// Single-ended scattering matrix of a four-port, all ports referenced to the
// same real z_ref. Port numbering for the coupled-line structures modelled
// here: 1 = line a input, 2 = line b input, 3 = line a output, 4 = line b
// output; differential pairs are (1,2) and (3,4).
struct SParams4 {
  Matrix4c s{};
  double z_ref{50.0};
};

// Mixed-mode scattering blocks of a four-port. Mode ports: d1/c1 formed from
// single-ended ports (1,2), d2/c2 from (3,4).
struct MixedModeS {
  Matrix2c sdd{};  // differential -> differential
  Matrix2c sdc{};  // common -> differential (mode conversion)
  Matrix2c scd{};  // differential -> common (mode conversion)
  Matrix2c scc{};  // common -> common
  double z_ref{50.0};
};

// Single-ended -> mixed-mode, S_mm = M S M^T with the orthogonal modal
// matrix M built from (1 -1)/sqrt(2) and (1 1)/sqrt(2) row pairs.
MixedModeS std4_to_mixed(const SParams4& s);

// Mixed-mode -> single-ended, exact inverse of std4_to_mixed.
SParams4 mixed_to_std4(const MixedModeS& mm);

// Mixed-mode matrix of a symmetric structure from its differential- and
// common-mode half circuits; the mode-conversion blocks are identically
// zero. Throws std::invalid_argument if the two reference impedances differ.
MixedModeS from_half_circuits(const SParams2& dm, const SParams2& cm);

// Reorder the ports of a four-port: map[i] is the 0-based index, in the
// source matrix, of the port that becomes port i. map must be a permutation
// of {0,1,2,3}; throws std::invalid_argument otherwise.
SParams4 permute_ports(const SParams4& s, const std::array<int, 4>& map);

// 2x2 block <-> two-port scattering parameter conversions.
Matrix2c to_matrix(const SParams2& s);
SParams2 to_sparams(const Matrix2c& m, double z_ref);

}  // namespace dsrkit
