#include "dsrkit/mixedmode.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace dsrkit {

namespace {

// Modal transformation: rows map single-ended port waves onto
// (d1, d2, c1, c2) with differential pairs (1,2) and (3,4). Orthogonal, so
// the inverse transform uses the transpose.
const Matrix4c& modal_matrix() {
  static const Matrix4c m = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix4c out{};
    out[0] = {Complex{r}, Complex{-r}, Complex{0.0}, Complex{0.0}};
    out[1] = {Complex{0.0}, Complex{0.0}, Complex{r}, Complex{-r}};
    out[2] = {Complex{r}, Complex{r}, Complex{0.0}, Complex{0.0}};
    out[3] = {Complex{0.0}, Complex{0.0}, Complex{r}, Complex{r}};
    return out;
  }();
  return m;
}

Matrix4c multiply(const Matrix4c& lhs, const Matrix4c& rhs) {
  Matrix4c out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Complex sum{0.0};
      for (int k = 0; k < 4; ++k) {
        sum += lhs[i][k] * rhs[k][j];
      }
      out[i][j] = sum;
    }
  }
  return out;
}

Matrix4c transpose(const Matrix4c& m) {
  Matrix4c out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out[i][j] = m[j][i];
    }
  }
  return out;
}

}  // namespace

MixedModeS std4_to_mixed(const SParams4& s) {
  const Matrix4c& m = modal_matrix();
  const Matrix4c mm = multiply(multiply(m, s.s), transpose(m));
  MixedModeS out;
  out.z_ref = s.z_ref;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.sdd[i][j] = mm[i][j];
      out.sdc[i][j] = mm[i][j + 2];
      out.scd[i][j] = mm[i + 2][j];
      out.scc[i][j] = mm[i + 2][j + 2];
    }
  }
  return out;
}

SParams4 mixed_to_std4(const MixedModeS& mm) {
  Matrix4c blocks{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      blocks[i][j] = mm.sdd[i][j];
      blocks[i][j + 2] = mm.sdc[i][j];
      blocks[i + 2][j] = mm.scd[i][j];
      blocks[i + 2][j + 2] = mm.scc[i][j];
    }
  }
  const Matrix4c& m = modal_matrix();
  SParams4 out;
  out.s = multiply(multiply(transpose(m), blocks), m);
  out.z_ref = mm.z_ref;
  return out;
}

MixedModeS from_half_circuits(const SParams2& dm, const SParams2& cm) {
  if (dm.z_ref != cm.z_ref) {
    throw std::invalid_argument(
        "half circuits use different reference impedances");
  }
  MixedModeS out;
  out.z_ref = dm.z_ref;
  out.sdd = to_matrix(dm);
  out.scc = to_matrix(cm);
  return out;  // mode-conversion blocks stay zero: the structure is symmetric
}

SParams4 permute_ports(const SParams4& s, const std::array<int, 4>& map) {
  std::array<bool, 4> seen{};
  for (int idx : map) {
    if (idx < 0 || idx > 3 || seen[idx]) {
      throw std::invalid_argument("port map must be a permutation of 1..4");
    }
    seen[idx] = true;
  }
  SParams4 out;
  out.z_ref = s.z_ref;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out.s[i][j] = s.s[map[i]][map[j]];
    }
  }
  return out;
}

Matrix2c to_matrix(const SParams2& s) {
  return {{{s.s11, s.s12}, {s.s21, s.s22}}};
}

SParams2 to_sparams(const Matrix2c& m, double z_ref) {
  SParams2 s;
  s.s11 = m[0][0];
  s.s12 = m[0][1];
  s.s21 = m[1][0];
  s.s22 = m[1][1];
  s.z_ref = z_ref;
  return s;
}

}  // namespace dsrkit
