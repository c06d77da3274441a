#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsrkit/filterlab.hpp"
#include "dsrkit/mixedmode.hpp"
#include "dsrkit/netcore.hpp"

namespace dsrkit {

enum class FreqUnit { hz, khz, mhz, ghz };
enum class TsFormat { ri, ma, db };

double unit_scale_hz(FreqUnit unit);      // multiplier to Hz
const char* to_string(FreqUnit unit);     // "Hz", "kHz", "MHz", "GHz"
const char* to_string(TsFormat format);   // "RI", "MA", "DB"

// In-memory Touchstone (.s2p / .s4p) file. data holds one row-major
// ports*ports matrix per frequency; freq_hz is strictly increasing.
// unit/format record how the file was (or will be) rendered on disk.
struct TouchstoneDocument {
  int ports{2};
  FreqUnit unit{FreqUnit::ghz};
  TsFormat format{TsFormat::ma};
  double z_ref{50.0};
  std::vector<std::string> comments;  // '!' lines, in order, marker stripped
  std::vector<double> freq_hz;
  std::vector<std::vector<Complex>> data;

  Complex entry(std::size_t point, int i, int j) const {
    return data[point][static_cast<std::size_t>(i) * ports + j];
  }
};

// Parse Touchstone text with the given port count (2 or 4). Accepts any
// option-line order, case-insensitive keywords, and the standard defaults
// (# GHz S MA R 50) when no option line is present. Two-port data uses the
// s11 s21 s12 s22 column order; four-port data is row-major over four lines
// per point. Violations (unknown tokens, wrong value counts, non-increasing
// frequencies, no data) throw ParseError with the line number.
TouchstoneDocument parse_touchstone(std::string_view text, int ports);

// Render a document back to text: comments, option line, then one point per
// line (two-port) or per four lines (four-port), values printed with nine
// significant digits. Deterministic: equal documents produce equal bytes.
std::string write_touchstone(const TouchstoneDocument& doc);

// Builders from sweep data.
TouchstoneDocument make_two_port_doc(std::span<const double> freq_hz,
                                     std::span<const SParams2> points,
                                     TsFormat format, FreqUnit unit);
TouchstoneDocument make_four_port_doc(std::span<const double> freq_hz,
                                      std::span<const SParams4> points,
                                      TsFormat format, FreqUnit unit);

// Views of a parsed document as library types. Throw std::invalid_argument
// on a port-count mismatch.
std::vector<SParams2> two_port_points(const TouchstoneDocument& doc);
std::vector<SParams4> four_port_points(const TouchstoneDocument& doc);

// Plain numeric CSV with a header row. Columns are parallel arrays.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const {
    return columns.empty() ? 0 : columns.front().size();
  }
  // Index of a named column; std::invalid_argument if absent.
  std::size_t column(std::string_view name) const;
};

// Header + rows, nine-significant-digit values, comma separated, '\n' line
// endings. Deterministic.
std::string write_csv(const CsvTable& table);

// Strict numeric CSV reader; ParseError (with line) on ragged rows or
// non-numeric fields. An empty header or no data rows is also an error.
CsvTable parse_csv(std::string_view text);

// Tabulate sweep quantities. Column names: freq_hz, freq_ghz, and
// <block><ij>_<part> where block is sdd or scc, ij is 11/21/12/22 and part
// is db, deg, re or im (e.g. sdd21_db). Unknown names or an empty list throw
// std::invalid_argument.
CsvTable sweep_table(const SweepResult& sr,
                     std::span<const std::string> columns);

}  // namespace dsrkit
