#include "dsrkit/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dsrkit/errors.hpp"

namespace dsrkit {

namespace {

// What values a key admits.
enum class ValueKind {
  positive_double,   // > 0, finite
  non_negative,      // >= 0, finite
  count,             // integer >= 0
  order,             // integer >= 1
  factor_gt_one,     // > 1, finite
  convention_word,   // plusj | minusj
  topology_word,     // t | gamma
  fit_kind_word,     // dm_bandpass | cm_bandpass | dm_bandstop
  formats_list,      // comma list of csv, s2p, s4p, svg
  free_text,
};

const std::map<std::string, std::map<std::string, ValueKind>>& schema() {
  static const std::map<std::string, std::map<std::string, ValueKind>> s = {
      {"spec",
       {{"n", ValueKind::order},
        {"f0_hz", ValueKind::positive_double},
        {"fbw", ValueKind::positive_double},
        {"z0_ohm", ValueKind::positive_double},
        {"g", ValueKind::positive_double},
        {"convention", ValueKind::convention_word}}},
      {"cell",
       {{"topology", ValueKind::topology_word},
        {"dm_l_h", ValueKind::positive_double},
        {"dm_cg_f", ValueKind::positive_double},
        {"dm_c_f", ValueKind::positive_double},
        {"dm_lc_h", ValueKind::positive_double},
        {"dm_cc_f", ValueKind::positive_double},
        {"cm_l_h", ValueKind::positive_double},
        {"cm_cg_f", ValueKind::positive_double},
        {"cm_c1_f", ValueKind::positive_double}}},
      {"sweep",
       {{"f_start_hz", ValueKind::positive_double},
        {"f_stop_hz", ValueKind::positive_double},
        {"points", ValueKind::order}}},
      {"fit",
       {{"kind", ValueKind::fit_kind_word},
        {"mag_weight", ValueKind::non_negative},
        {"phase_weight", ValueKind::non_negative},
        {"max_evals", ValueKind::order},
        {"restarts", ValueKind::count},
        {"bound_factor", ValueKind::factor_gt_one}}},
      {"output",
       {{"prefix", ValueKind::free_text},
        {"formats", ValueKind::formats_list}}},
  };
  return s;
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
    ++a;
  }
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
    --b;
  }
  return s.substr(a, b - a);
}

double parse_double(const std::string& value, int line) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size()) {
    throw ParseError("invalid number '" + value + "'", line);
  }
  return v;
}

long parse_integer(const std::string& value, int line) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size()) {
    throw ParseError("invalid integer '" + value + "'", line);
  }
  return v;
}

void check_value(const std::string& key, const std::string& value,
                 ValueKind kind, int line) {
  switch (kind) {
    case ValueKind::positive_double: {
      const double v = parse_double(value, line);
      if (!(v > 0.0)) {
        throw ParseError(key + " must be positive", line);
      }
      return;
    }
    case ValueKind::non_negative: {
      const double v = parse_double(value, line);
      if (!(v >= 0.0)) {
        throw ParseError(key + " must not be negative", line);
      }
      return;
    }
    case ValueKind::count:
      if (parse_integer(value, line) < 0) {
        throw ParseError(key + " must not be negative", line);
      }
      return;
    case ValueKind::order:
      if (parse_integer(value, line) < 1) {
        throw ParseError(key + " must be at least 1", line);
      }
      return;
    case ValueKind::factor_gt_one:
      if (!(parse_double(value, line) > 1.0)) {
        throw ParseError(key + " must be greater than 1", line);
      }
      return;
    case ValueKind::convention_word:
      if (value != "plusj" && value != "minusj") {
        throw ParseError(key + " must be plusj or minusj", line);
      }
      return;
    case ValueKind::topology_word:
      if (value != "t" && value != "gamma") {
        throw ParseError(key + " must be t or gamma", line);
      }
      return;
    case ValueKind::fit_kind_word:
      if (value != "dm_bandpass" && value != "cm_bandpass" &&
          value != "dm_bandstop") {
        throw ParseError(
            key + " must be dm_bandpass, cm_bandpass or dm_bandstop", line);
      }
      return;
    case ValueKind::formats_list: {
      std::stringstream ss(value);
      std::string item;
      bool any = false;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item != "csv" && item != "s2p" && item != "s4p" && item != "svg") {
          throw ParseError("unknown output format '" + item + "'", line);
        }
        any = true;
      }
      if (!any) {
        throw ParseError(key + " must list at least one format", line);
      }
      return;
    }
    case ValueKind::free_text:
      if (value.empty()) {
        throw ParseError(key + " must not be empty", line);
      }
      return;
  }
}

}  // namespace

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::string current;  // active section name; empty before any header
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string line(text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos));
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      line.resize(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError("unterminated section header", line_no);
      }
      current = trim(line.substr(1, line.size() - 2));
      if (!schema().count(current)) {
        throw ParseError("unknown section [" + current + "]", line_no);
      }
      cfg.values_[current];  // record the section even if it stays empty
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected key = value", line_no);
    }
    if (current.empty()) {
      throw ParseError("key outside of any section", line_no);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& keys = schema().at(current);
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw ParseError("unknown key '" + key + "' in section [" + current +
                           "]",
                       line_no);
    }
    if (cfg.values_[current].count(key)) {
      throw ParseError("duplicate key '" + key + "'", line_no);
    }
    check_value(key, value, it->second, line_no);
    cfg.values_[current][key] = value;
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool RunConfig::has_section(const std::string& section) const {
  return values_.count(section) != 0;
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
  const auto it = values_.find(section);
  return it != values_.end() && it->second.count(key) != 0;
}

std::string RunConfig::raw(const std::string& section,
                           const std::string& key) const {
  const auto it = values_.find(section);
  if (it == values_.end() || !it->second.count(key)) {
    throw std::runtime_error("missing config value " + section + "." + key);
  }
  return it->second.at(key);
}

double RunConfig::get_double(const std::string& section,
                             const std::string& key) const {
  return std::strtod(raw(section, key).c_str(), nullptr);
}

double RunConfig::get_double_or(const std::string& section,
                                const std::string& key,
                                double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int RunConfig::get_int(const std::string& section,
                       const std::string& key) const {
  return static_cast<int>(std::strtol(raw(section, key).c_str(), nullptr, 10));
}

int RunConfig::get_int_or(const std::string& section, const std::string& key,
                          int fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

std::string RunConfig::get_string(const std::string& section,
                                  const std::string& key) const {
  return raw(section, key);
}

std::string RunConfig::get_string_or(const std::string& section,
                                     const std::string& key,
                                     std::string fallback) const {
  return has(section, key) ? raw(section, key) : std::move(fallback);
}

}  // namespace dsrkit
