#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dsrkit {

// Line-oriented run configuration:
//
//   # comment
//   [spec]
//   f0_hz = 1.5e9
//   fbw   = 0.06
//
// Sections and keys are validated against a fixed schema at parse time;
// unknown sections or keys, duplicate keys, malformed numbers and
// non-positive values where positives are required all raise ParseError
// with the line number.
//
// Schema (all keys optional at parse time; commands check for what they
// need):
//   [spec]   n (int >= 1), f0_hz, fbw, z0_ohm, g (positive),
//            convention (plusj | minusj)
//   [cell]   topology (t | gamma); dm_l_h dm_cg_f dm_c_f dm_lc_h dm_cc_f
//            cm_l_h cm_cg_f cm_c1_f (positive)
//   [sweep]  f_start_hz f_stop_hz (positive), points (int >= 2)
//   [fit]    kind (dm_bandpass | cm_bandpass | dm_bandstop),
//            mag_weight phase_weight (>= 0), max_evals restarts (int >= 0),
//            bound_factor (> 1)
//   [output] prefix, formats (comma list of csv, s2p, s4p, svg)
class RunConfig {
 public:
  static RunConfig parse(std::string_view text);
  // Reads the file; throws std::runtime_error if it cannot be opened.
  static RunConfig load(const std::string& path);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  // Typed getters. The plain forms throw std::runtime_error naming the
  // missing key; the *_or forms substitute a default.
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  int get_int(const std::string& section, const std::string& key) const;
  int get_int_or(const std::string& section, const std::string& key,
                 int fallback) const;
  std::string get_string(const std::string& section,
                         const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            std::string fallback) const;

 private:
  std::string raw(const std::string& section, const std::string& key) const;

  std::map<std::string, std::map<std::string, std::string>> values_;
};

}  // namespace dsrkit
