#include "dsrkit/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "dsrkit/errors.hpp"

namespace dsrkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    }
    if (i > start) {
      out.push_back(s.substr(start, i - start));
    }
  }
  return out;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

double parse_number(std::string_view token, int line) {
  const std::string buf(token);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.empty()) {
    throw ParseError("invalid number '" + buf + "'", line);
  }
  return v;
}

// One formatted value; all writers funnel through here so output stays
// locale-independent and byte-deterministic.
void append_value(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9e", v);
  out += buf;
}

Complex pair_to_complex(double a, double b, TsFormat format) {
  switch (format) {
    case TsFormat::ri:
      return {a, b};
    case TsFormat::ma:
      break;
    case TsFormat::db:
      a = std::pow(10.0, a / 20.0);
      break;
  }
  const double rad = b * std::numbers::pi / 180.0;
  return {a * std::cos(rad), a * std::sin(rad)};
}

void complex_to_pair(Complex s, TsFormat format, double& a, double& b) {
  switch (format) {
    case TsFormat::ri:
      a = s.real();
      b = s.imag();
      return;
    case TsFormat::ma:
      a = std::abs(s);
      b = phase_deg(s);
      return;
    case TsFormat::db:
      a = mag_db(s);
      b = phase_deg(s);
      return;
  }
}

void parse_option_line(std::string_view rest, int line,
                       TouchstoneDocument& doc) {
  const auto tokens = split_ws(rest);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string t = upper(tokens[i]);
    if (t == "HZ") {
      doc.unit = FreqUnit::hz;
    } else if (t == "KHZ") {
      doc.unit = FreqUnit::khz;
    } else if (t == "MHZ") {
      doc.unit = FreqUnit::mhz;
    } else if (t == "GHZ") {
      doc.unit = FreqUnit::ghz;
    } else if (t == "S") {
      // scattering parameters: the only network parameter handled here
    } else if (t == "Y" || t == "Z" || t == "H" || t == "G") {
      throw ParseError("only S-parameter files are supported", line);
    } else if (t == "RI") {
      doc.format = TsFormat::ri;
    } else if (t == "MA") {
      doc.format = TsFormat::ma;
    } else if (t == "DB") {
      doc.format = TsFormat::db;
    } else if (t == "R") {
      if (i + 1 >= tokens.size()) {
        throw ParseError("option 'R' is missing its resistance value", line);
      }
      const double r = parse_number(tokens[++i], line);
      if (!(r > 0.0)) {
        throw ParseError("reference resistance must be positive", line);
      }
      doc.z_ref = r;
    } else {
      throw ParseError("malformed option line: unexpected token '" +
                           std::string(tokens[i]) + "'",
                       line);
    }
  }
}

}  // namespace

double unit_scale_hz(FreqUnit unit) {
  switch (unit) {
    case FreqUnit::hz:
      return 1.0;
    case FreqUnit::khz:
      return 1e3;
    case FreqUnit::mhz:
      return 1e6;
    case FreqUnit::ghz:
      return 1e9;
  }
  throw std::logic_error("unhandled frequency unit");
}

const char* to_string(FreqUnit unit) {
  switch (unit) {
    case FreqUnit::hz:
      return "Hz";
    case FreqUnit::khz:
      return "kHz";
    case FreqUnit::mhz:
      return "MHz";
    case FreqUnit::ghz:
      return "GHz";
  }
  throw std::logic_error("unhandled frequency unit");
}

const char* to_string(TsFormat format) {
  switch (format) {
    case TsFormat::ri:
      return "RI";
    case TsFormat::ma:
      return "MA";
    case TsFormat::db:
      return "DB";
  }
  throw std::logic_error("unhandled data format");
}

TouchstoneDocument parse_touchstone(std::string_view text, int ports) {
  if (ports != 2 && ports != 4) {
    throw std::invalid_argument("port count must be 2 or 4");
  }
  TouchstoneDocument doc;
  doc.ports = ports;
  const std::size_t values_per_point =
      1 + 2 * static_cast<std::size_t>(ports) * ports;

  bool saw_option = false;
  bool saw_data = false;
  std::vector<double> pending;
  int point_line = 0;  // line carrying the current point's frequency
  int line_no = 0;
  int last_data_line = 0;
  double last_freq = 0.0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }

    std::string_view body = trim(line);
    if (body.empty()) {
      continue;
    }
    if (body.front() == '!') {
      doc.comments.emplace_back(trim(body.substr(1)));
      continue;
    }
    const std::size_t bang = body.find('!');
    if (bang != std::string_view::npos) {
      body = trim(body.substr(0, bang));
    }
    if (body.front() == '#') {
      if (saw_option) {
        throw ParseError("duplicate option line", line_no);
      }
      if (saw_data) {
        throw ParseError("option line after data", line_no);
      }
      parse_option_line(body.substr(1), line_no, doc);
      saw_option = true;
      continue;
    }

    std::vector<double> values;
    for (std::string_view token : split_ws(body)) {
      values.push_back(parse_number(token, line_no));
    }
    saw_data = true;
    last_data_line = line_no;
    if (pending.empty()) {
      point_line = line_no;
    }
    pending.insert(pending.end(), values.begin(), values.end());
    if (pending.size() > values_per_point) {
      throw ParseError("expected " + std::to_string(values_per_point) +
                           " values per data point, got " +
                           std::to_string(pending.size()),
                       line_no);
    }
    if (pending.size() < values_per_point) {
      if (ports == 2) {
        throw ParseError("expected " + std::to_string(values_per_point) +
                             " values per data row, got " +
                             std::to_string(pending.size()),
                         line_no);
      }
      continue;  // four-port points span several lines
    }

    const double f = pending[0] * unit_scale_hz(doc.unit);
    if (!(f > 0.0)) {
      throw ParseError("frequency must be positive", point_line);
    }
    if (!doc.freq_hz.empty() && f <= last_freq) {
      throw ParseError("frequencies must be strictly increasing", point_line);
    }
    std::vector<Complex> matrix(static_cast<std::size_t>(ports) * ports);
    if (ports == 2) {
      // File column order s11 s21 s12 s22; storage is row-major.
      static constexpr int kSlot[4] = {0, 2, 1, 3};
      for (int k = 0; k < 4; ++k) {
        matrix[kSlot[k]] =
            pair_to_complex(pending[1 + 2 * k], pending[2 + 2 * k],
                            doc.format);
      }
    } else {
      for (std::size_t k = 0; k < 16; ++k) {
        matrix[k] = pair_to_complex(pending[1 + 2 * k], pending[2 + 2 * k],
                                    doc.format);
      }
    }
    doc.freq_hz.push_back(f);
    doc.data.push_back(std::move(matrix));
    last_freq = f;
    pending.clear();
  }

  if (!pending.empty()) {
    throw ParseError("incomplete data point: expected " +
                         std::to_string(values_per_point) + " values, got " +
                         std::to_string(pending.size()),
                     last_data_line);
  }
  if (doc.freq_hz.empty()) {
    throw ParseError("no data rows", std::max(last_data_line, 1));
  }
  return doc;
}

std::string write_touchstone(const TouchstoneDocument& doc) {
  if (doc.ports != 2 && doc.ports != 4) {
    throw std::invalid_argument("port count must be 2 or 4");
  }
  const std::size_t entries = static_cast<std::size_t>(doc.ports) * doc.ports;
  if (doc.data.size() != doc.freq_hz.size()) {
    throw std::invalid_argument("frequency and data lengths differ");
  }
  for (const auto& matrix : doc.data) {
    if (matrix.size() != entries) {
      throw std::invalid_argument("data matrix has wrong size");
    }
  }

  std::string out;
  for (const std::string& c : doc.comments) {
    out += "! ";
    out += c;
    out += '\n';
  }
  {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "# %s S %s R %g", to_string(doc.unit),
                  to_string(doc.format), doc.z_ref);
    out += buf;
    out += '\n';
  }
  const double scale = unit_scale_hz(doc.unit);
  const auto append_pair = [&out](Complex s, TsFormat format) {
    double a = 0.0;
    double b = 0.0;
    complex_to_pair(s, format, a, b);
    out += ' ';
    append_value(out, a);
    out += ' ';
    append_value(out, b);
  };
  for (std::size_t k = 0; k < doc.freq_hz.size(); ++k) {
    append_value(out, doc.freq_hz[k] / scale);
    if (doc.ports == 2) {
      // s11 s21 s12 s22 column order (row-major slots 0 2 1 3).
      for (int slot : {0, 2, 1, 3}) {
        append_pair(doc.data[k][slot], doc.format);
      }
      out += '\n';
    } else {
      for (int row = 0; row < 4; ++row) {
        if (row > 0) {
          out += "  ";  // continuation lines carry no frequency
        }
        for (int col = 0; col < 4; ++col) {
          append_pair(doc.data[k][row * 4 + col], doc.format);
        }
        out += '\n';
      }
    }
  }
  return out;
}

TouchstoneDocument make_two_port_doc(std::span<const double> freq_hz,
                                     std::span<const SParams2> points,
                                     TsFormat format, FreqUnit unit) {
  if (freq_hz.size() != points.size() || points.empty()) {
    throw std::invalid_argument("need matching, non-empty freq/data arrays");
  }
  TouchstoneDocument doc;
  doc.ports = 2;
  doc.unit = unit;
  doc.format = format;
  doc.z_ref = points[0].z_ref;
  doc.freq_hz.assign(freq_hz.begin(), freq_hz.end());
  doc.data.reserve(points.size());
  for (const SParams2& s : points) {
    doc.data.push_back({s.s11, s.s12, s.s21, s.s22});
  }
  return doc;
}

TouchstoneDocument make_four_port_doc(std::span<const double> freq_hz,
                                      std::span<const SParams4> points,
                                      TsFormat format, FreqUnit unit) {
  if (freq_hz.size() != points.size() || points.empty()) {
    throw std::invalid_argument("need matching, non-empty freq/data arrays");
  }
  TouchstoneDocument doc;
  doc.ports = 4;
  doc.unit = unit;
  doc.format = format;
  doc.z_ref = points[0].z_ref;
  doc.freq_hz.assign(freq_hz.begin(), freq_hz.end());
  doc.data.reserve(points.size());
  for (const SParams4& s : points) {
    std::vector<Complex> matrix(16);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        matrix[static_cast<std::size_t>(i) * 4 + j] = s.s[i][j];
      }
    }
    doc.data.push_back(std::move(matrix));
  }
  return doc;
}

std::vector<SParams2> two_port_points(const TouchstoneDocument& doc) {
  if (doc.ports != 2) {
    throw std::invalid_argument("document is not a two-port file");
  }
  std::vector<SParams2> out;
  out.reserve(doc.freq_hz.size());
  for (std::size_t k = 0; k < doc.freq_hz.size(); ++k) {
    out.push_back({doc.entry(k, 0, 0), doc.entry(k, 0, 1), doc.entry(k, 1, 0),
                   doc.entry(k, 1, 1), doc.z_ref});
  }
  return out;
}

std::vector<SParams4> four_port_points(const TouchstoneDocument& doc) {
  if (doc.ports != 4) {
    throw std::invalid_argument("document is not a four-port file");
  }
  std::vector<SParams4> out;
  out.reserve(doc.freq_hz.size());
  for (std::size_t k = 0; k < doc.freq_hz.size(); ++k) {
    SParams4 s;
    s.z_ref = doc.z_ref;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        s.s[i][j] = doc.entry(k, i, j);
      }
    }
    out.push_back(s);
  }
  return out;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      return i;
    }
  }
  throw std::invalid_argument("no such CSV column: " + std::string(name));
}

std::string write_csv(const CsvTable& table) {
  if (table.header.empty() || table.header.size() != table.columns.size()) {
    throw std::invalid_argument("CSV header and columns do not line up");
  }
  const std::size_t rows = table.columns.front().size();
  for (const auto& col : table.columns) {
    if (col.size() != rows) {
      throw std::invalid_argument("CSV columns have unequal lengths");
    }
  }
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += table.header[i];
  }
  out += '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i > 0) {
        out += ',';
      }
      append_value(out, table.columns[i][r]);
    }
    out += '\n';
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  int line_no = 0;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (trim(line).empty()) {
      continue;
    }

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(trim(line.substr(
          start,
          comma == std::string_view::npos ? line.size() - start
                                          : comma - start)));
      if (comma == std::string_view::npos) {
        break;
      }
      start = comma + 1;
    }

    if (!have_header) {
      for (std::string_view f : fields) {
        if (f.empty()) {
          throw ParseError("empty column name in header", line_no);
        }
        table.header.emplace_back(f);
      }
      table.columns.resize(table.header.size());
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ParseError("expected " + std::to_string(table.header.size()) +
                           " fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      table.columns[i].push_back(parse_number(fields[i], line_no));
    }
  }
  if (!have_header) {
    throw ParseError("missing header row", 1);
  }
  if (table.rows() == 0) {
    throw ParseError("no data rows", std::max(line_no - 1, 1));
  }
  return table;
}

CsvTable sweep_table(const SweepResult& sr,
                     std::span<const std::string> columns) {
  if (columns.empty()) {
    throw std::invalid_argument("no sweep columns requested");
  }
  CsvTable table;
  for (const std::string& name : columns) {
    std::vector<double> col;
    col.reserve(sr.grid.size());
    if (name == "freq_hz") {
      col.assign(sr.grid.begin(), sr.grid.end());
    } else if (name == "freq_ghz") {
      for (double f : sr.grid) {
        col.push_back(f / 1e9);
      }
    } else {
      // <block><ij>_<part>, e.g. sdd21_db.
      const std::size_t us = name.rfind('_');
      const std::string head =
          us == std::string::npos ? name : name.substr(0, us);
      const std::string part =
          us == std::string::npos ? std::string() : name.substr(us + 1);
      const std::vector<SParams2>* block = nullptr;
      std::string ij;
      if (head.rfind("sdd", 0) == 0) {
        block = &sr.dm;
        ij = head.substr(3);
      } else if (head.rfind("scc", 0) == 0) {
        block = &sr.cm;
        ij = head.substr(3);
      }
      const bool ij_ok =
          ij == "11" || ij == "21" || ij == "12" || ij == "22";
      const bool part_ok =
          part == "db" || part == "deg" || part == "re" || part == "im";
      if (block == nullptr || !ij_ok || !part_ok) {
        throw std::invalid_argument("unknown sweep column: " + name);
      }
      for (const SParams2& s : *block) {
        Complex v;
        if (ij == "11") {
          v = s.s11;
        } else if (ij == "21") {
          v = s.s21;
        } else if (ij == "12") {
          v = s.s12;
        } else {
          v = s.s22;
        }
        if (part == "db") {
          col.push_back(mag_db(v));
        } else if (part == "deg") {
          col.push_back(phase_deg(v));
        } else if (part == "re") {
          col.push_back(v.real());
        } else {
          col.push_back(v.imag());
        }
      }
    }
    table.header.push_back(name);
    table.columns.push_back(std::move(col));
  }
  return table;
}

}  // namespace dsrkit
