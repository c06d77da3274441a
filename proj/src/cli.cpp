#include "dsrkit/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dsrkit/config.hpp"
#include "dsrkit/dsrcell.hpp"
#include "dsrkit/errors.hpp"
#include "dsrkit/filterlab.hpp"
#include "dsrkit/fitting.hpp"
#include "dsrkit/io.hpp"
#include "dsrkit/mixedmode.hpp"
#include "dsrkit/netcore.hpp"
#include "dsrkit/svg.hpp"
#include "dsrkit/synth.hpp"

namespace dsrkit {

namespace {

namespace fs = std::filesystem;

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNotConverged = 4;
constexpr int kExitMetrics = 5;

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path.string());
  }
  out << content;
}

ReactanceSign parse_convention(const std::string& word) {
  if (word == "plusj") {
    return ReactanceSign::plus_j;
  }
  if (word == "minusj") {
    return ReactanceSign::minus_j;
  }
  throw std::runtime_error("convention must be plusj or minusj");
}

CellTopology parse_topology(const std::string& word) {
  if (word == "t") {
    return CellTopology::symmetric_t;
  }
  if (word == "gamma") {
    return CellTopology::gamma;
  }
  throw std::runtime_error("topology must be t or gamma");
}

std::set<std::string> output_formats(const RunConfig& cfg) {
  std::set<std::string> out;
  std::stringstream ss(cfg.get_string_or("output", "formats", "csv,s2p"));
  std::string item;
  while (std::getline(ss, item, ',')) {
    // items were validated during config parsing
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    if (a != std::string::npos) {
      out.insert(item.substr(a, b - a + 1));
    }
  }
  return out;
}

FilterSpec spec_from_config(const RunConfig& cfg) {
  if (!cfg.has_section("spec")) {
    throw std::runtime_error("config needs a [spec] section");
  }
  FilterSpec spec;
  spec.order_n = cfg.get_int_or("spec", "n", 1);
  spec.f0_hz = cfg.get_double("spec", "f0_hz");
  spec.fbw = cfg.get_double("spec", "fbw");
  spec.z0_ohm = cfg.get_double_or("spec", "z0_ohm", 50.0);
  spec.g_value = cfg.get_double("spec", "g");
  return spec;
}

std::string synth_report_text(const SynthReport& rep) {
  std::string out;
  out += format("feasible=%s\n", rep.feasible() ? "true" : "false");
  out += format("convention=%s\n", to_string(rep.convention));
  out += format("n=%d\n", rep.spec.order_n);
  out += format("f0_hz=%.9e\n", rep.spec.f0_hz);
  out += format("fbw=%.9e\n", rep.spec.fbw);
  out += format("z0_ohm=%.9e\n", rep.spec.z0_ohm);
  out += format("g=%.9e\n", rep.spec.g_value);
  out += format("delta=%.9e\n", rep.delta);
  out += format("f1_hz=%.9e\n", rep.f1_hz);
  out += format("f2_hz=%.9e\n", rep.f2_hz);
  out += format("c_gap_f=%.9e\n", rep.c_gap_f);
  out += format("l_line_h=%.9e\n", rep.l_line_h);
  out += format("c_coup_f=%.9e\n", rep.shunt.c_coup_f);
  out += format("l_strip_half_h=%.9e\n", rep.shunt.l_strip_half_h);
  out += format("c_patch_f=%.9e\n", rep.shunt.c_patch_f);
  if (rep.feasible()) {
    out += format("residual_x_f0=%.9e\n", rep.shunt.residuals[0]);
    out += format("residual_x_f1=%.9e\n", rep.shunt.residuals[1]);
    out += format("residual_pole=%.9e\n", rep.shunt.residuals[2]);
  } else {
    out += "infeasibility=" + rep.shunt.infeasibility + "\n";
  }
  return out;
}

void print_synth_summary(const SynthReport& rep) {
  std::printf("synthesis target: f0 = %.6f GHz, fbw = %.3f%%, z0 = %.1f ohm, "
              "n = %d, convention = %s\n",
              rep.spec.f0_hz / 1e9, rep.spec.fbw * 100.0, rep.spec.z0_ohm,
              rep.spec.order_n, to_string(rep.convention));
  std::printf("bandwidth parameter delta = %.4f%%; band edges %.6f / %.6f "
              "GHz\n",
              rep.delta * 100.0, rep.f1_hz / 1e9, rep.f2_hz / 1e9);
  std::printf("feed elements: c_gap = %.4f pF, l_line = %.4f nH\n",
              rep.c_gap_f * 1e12, rep.l_line_h * 1e9);
  if (rep.feasible()) {
    std::printf("shunt branch: c_coup = %.4f pF, l_strip_half = %.4f nH, "
                "c_patch = %.4f pF\n",
                rep.shunt.c_coup_f * 1e12, rep.shunt.l_strip_half_h * 1e9,
                rep.shunt.c_patch_f * 1e12);
    std::printf("residuals: %.3e (reactance at f0), %.3e (reactance at f1), "
                "%.3e (pole at f2)\n",
                rep.shunt.residuals[0], rep.shunt.residuals[1],
                rep.shunt.residuals[2]);
  } else {
    std::printf("shunt branch is not realizable: %s\n",
                rep.shunt.infeasibility.c_str());
    std::printf("raw solution: c_coup = %.6e F, l_strip_half = %.6e H, "
                "c_patch = %.6e F\n",
                rep.shunt.c_coup_f, rep.shunt.l_strip_half_h,
                rep.shunt.c_patch_f);
  }
}

std::string metrics_text(const FilterMetrics& m) {
  std::string out;
  out += format("f0d           : %.6f GHz\n", m.f0d_hz / 1e9);
  out += format("3-dB band     : %.6f - %.6f GHz\n", m.band_lo_hz / 1e9,
                m.band_hi_hz / 1e9);
  out += format("fbw           : %.3f %%\n", m.fbw * 100.0);
  out += format("insertion loss: %.3f dB\n", m.il_db);
  out += format("cm rejection  : %.2f dB (worst in band)\n",
                m.cm_rejection_db);
  out += format("cmrr          : %.2f dB (min in band)\n", m.cmrr_db);
  if (m.cm_supp_exists) {
    out += format("cm band       : %.3f - %.3f x f0d at -%.1f dB\n",
                  m.cm_supp_lo_hz / m.f0d_hz, m.cm_supp_hi_hz / m.f0d_hz,
                  m.cm_threshold_db);
  } else {
    out += format("cm band       : none at -%.1f dB\n", m.cm_threshold_db);
  }
  return out;
}

CsvTable metrics_table(const FilterMetrics& m) {
  CsvTable t;
  t.header = {"f0d_hz",          "band_lo_hz",        "band_hi_hz",
              "fbw",             "il_db",             "cm_rejection_db",
              "cmrr_db",         "cm_supp_exists",    "cm_supp_lo_over_f0d",
              "cm_supp_hi_over_f0d"};
  t.columns = {{m.f0d_hz},
               {m.band_lo_hz},
               {m.band_hi_hz},
               {m.fbw},
               {m.il_db},
               {m.cm_rejection_db},
               {m.cmrr_db},
               {m.cm_supp_exists ? 1.0 : 0.0},
               {m.cm_supp_lo_hz / m.f0d_hz},
               {m.cm_supp_hi_hz / m.f0d_hz}};
  return t;
}

// Cell parameter block resolved from a config: either literal [cell] values
// or values synthesized from [spec]. A failed synthesis surfaces as the
// report so the caller can exit with the right code.
struct ResolvedCells {
  DsrCellParams dm;
  CmCellParams cm;
  int order_n;
  double z0_ohm;
  std::optional<double> f0_hz;  // for the default sweep grid
  std::optional<SynthReport> failed_synth;
};

ResolvedCells resolve_cells(const RunConfig& cfg) {
  ResolvedCells out{};
  out.order_n = cfg.get_int_or("spec", "n", 1);
  out.z0_ohm = cfg.get_double_or("spec", "z0_ohm", 50.0);
  if (cfg.has("spec", "f0_hz")) {
    out.f0_hz = cfg.get_double("spec", "f0_hz");
  }

  if (cfg.has("cell", "dm_l_h")) {
    out.dm.l_line_h = cfg.get_double("cell", "dm_l_h");
    out.dm.c_gap_f = cfg.get_double("cell", "dm_cg_f");
    out.dm.c_coup_f = cfg.get_double("cell", "dm_c_f");
    out.dm.l_strip_half_h = cfg.get_double("cell", "dm_lc_h");
    out.dm.c_patch_f = cfg.get_double("cell", "dm_cc_f");
  } else if (cfg.has_section("spec")) {
    const FilterSpec spec = spec_from_config(cfg);
    const ReactanceSign conv = parse_convention(
        cfg.get_string_or("spec", "convention", "plusj"));
    const SynthReport rep = synthesize(spec, conv);
    if (!rep.feasible()) {
      out.failed_synth = rep;
      return out;
    }
    out.dm = {rep.l_line_h, rep.c_gap_f, rep.shunt.c_coup_f,
              rep.shunt.l_strip_half_h, rep.shunt.c_patch_f};
  } else {
    throw std::runtime_error(
        "config needs either [cell] element values or a [spec] section");
  }

  if (cfg.has("cell", "cm_c1_f")) {
    out.cm.c1_f = cfg.get_double("cell", "cm_c1_f");
    out.cm.l_line_h = cfg.get_double_or("cell", "cm_l_h", out.dm.l_line_h);
    out.cm.c_gap_f = cfg.get_double_or("cell", "cm_cg_f", out.dm.c_gap_f);
  } else {
    out.cm = cm_params_from_dm(
        out.dm, cfg.get_double_or("cell", "cm_l_h", out.dm.l_line_h),
        cfg.get_double_or("cell", "cm_cg_f", out.dm.c_gap_f));
  }
  return out;
}

FrequencyGrid grid_from_config(const RunConfig& cfg,
                               const std::optional<double>& f0_hz) {
  if (cfg.has_section("sweep")) {
    const double start = cfg.get_double("sweep", "f_start_hz");
    const double stop = cfg.get_double("sweep", "f_stop_hz");
    const int points = cfg.get_int_or("sweep", "points", 1001);
    return FrequencyGrid::linspace(start, stop,
                                   static_cast<std::size_t>(points));
  }
  if (f0_hz) {
    return default_grid(*f0_hz);
  }
  throw std::runtime_error(
      "config needs a [sweep] section or spec.f0_hz for the default grid");
}

SweepResult sweep_from_config(const RunConfig& cfg, CellTopology topology,
                              const ResolvedCells& cells) {
  const DsrCellParams dm = cells.dm;
  const CmCellParams cm = cells.cm;
  const TwoPortModel dm_cell = [dm, topology](double f) {
    return dm_bandpass_cell(dm, f, topology);
  };
  const TwoPortModel cm_cell = [cm, topology](double f) {
    return cm_bandpass_cell(cm, f, topology);
  };
  const FrequencyGrid grid = grid_from_config(cfg, cells.f0_hz);
  return sweep(build_filter(dm_cell, cells.order_n),
               build_filter(cm_cell, cells.order_n), grid, cells.z0_ohm);
}

int cmd_synth(const std::string& config_path, const std::string& out_dir,
              const std::string& convention_flag) {
  const RunConfig cfg = RunConfig::load(config_path);
  const FilterSpec spec = spec_from_config(cfg);
  const ReactanceSign conv = parse_convention(
      !convention_flag.empty()
          ? convention_flag
          : cfg.get_string_or("spec", "convention", "plusj"));
  const SynthReport rep = synthesize(spec, conv);

  print_synth_summary(rep);
  const std::string prefix =
      cfg.get_string_or("output", "prefix", "design");
  const fs::path base = fs::path(out_dir) / prefix;
  write_file(base.string() + "_synth.txt", synth_report_text(rep));

  if (!rep.feasible()) {
    std::fprintf(stderr, "synthesis infeasible: %s\n",
                 rep.shunt.infeasibility.c_str());
    return kExitInfeasible;
  }
  // Ready-to-simulate config with the synthesized element values.
  std::string cell_cfg;
  cell_cfg += "[spec]\n";
  cell_cfg += format("n = %d\n", rep.spec.order_n);
  cell_cfg += format("f0_hz = %.9e\n", rep.spec.f0_hz);
  cell_cfg += format("fbw = %.9e\n", rep.spec.fbw);
  cell_cfg += format("z0_ohm = %.9e\n", rep.spec.z0_ohm);
  cell_cfg += format("g = %.9e\n", rep.spec.g_value);
  cell_cfg += format("convention = %s\n", to_string(rep.convention));
  cell_cfg += "\n[cell]\n";
  cell_cfg += format("dm_l_h = %.9e\n", rep.l_line_h);
  cell_cfg += format("dm_cg_f = %.9e\n", rep.c_gap_f);
  cell_cfg += format("dm_c_f = %.9e\n", rep.shunt.c_coup_f);
  cell_cfg += format("dm_lc_h = %.9e\n", rep.shunt.l_strip_half_h);
  cell_cfg += format("dm_cc_f = %.9e\n", rep.shunt.c_patch_f);
  write_file(base.string() + "_design.cfg", cell_cfg);
  return 0;
}

int cmd_sim(const std::string& config_path, const std::string& out_dir,
            const std::string& topology_flag) {
  const RunConfig cfg = RunConfig::load(config_path);
  const CellTopology topology = parse_topology(
      !topology_flag.empty() ? topology_flag
                             : cfg.get_string_or("cell", "topology", "t"));
  const ResolvedCells cells = resolve_cells(cfg);
  if (cells.failed_synth) {
    print_synth_summary(*cells.failed_synth);
    std::fprintf(stderr, "synthesis infeasible: %s\n",
                 cells.failed_synth->shunt.infeasibility.c_str());
    return kExitInfeasible;
  }
  const SweepResult sr = sweep_from_config(cfg, topology, cells);

  const std::string prefix = cfg.get_string_or("output", "prefix", "run");
  const fs::path base = fs::path(out_dir) / prefix;
  const std::set<std::string> formats = output_formats(cfg);

  if (formats.count("csv")) {
    const std::vector<std::string> cols = {
        "freq_hz",   "sdd11_db", "sdd21_db", "scc11_db",
        "scc21_db",  "sdd21_deg", "scc21_deg"};
    write_file(base.string() + "_sweep.csv",
               write_csv(sweep_table(sr, cols)));
  }
  if (formats.count("s2p")) {
    write_file(base.string() + "_dm.s2p",
               write_touchstone(make_two_port_doc(sr.grid.points(), sr.dm,
                                                  TsFormat::ma,
                                                  FreqUnit::ghz)));
    write_file(base.string() + "_cm.s2p",
               write_touchstone(make_two_port_doc(sr.grid.points(), sr.cm,
                                                  TsFormat::ma,
                                                  FreqUnit::ghz)));
  }
  if (formats.count("s4p")) {
    std::vector<SParams4> pts;
    pts.reserve(sr.grid.size());
    for (std::size_t i = 0; i < sr.grid.size(); ++i) {
      pts.push_back(mixed_to_std4(from_half_circuits(sr.dm[i], sr.cm[i])));
    }
    write_file(base.string() + "_mm.s4p",
               write_touchstone(make_four_port_doc(sr.grid.points(), pts,
                                                   TsFormat::ma,
                                                   FreqUnit::ghz)));
  }
  if (formats.count("svg")) {
    write_file(base.string() + "_sweep.svg",
               sweep_svg(sr, prefix + " mode responses"));
  }

  std::printf("swept %zu points from %.6f to %.6f GHz, %d cell(s)\n",
              sr.grid.size(), sr.grid.front() / 1e9, sr.grid.back() / 1e9,
              cells.order_n);
  try {
    std::fputs(metrics_text(metrics(sr, 30.0)).c_str(), stdout);
  } catch (const MetricsError& e) {
    std::printf("metrics unavailable: %s\n", e.what());
  }
  return 0;
}

FitCellKind parse_fit_kind(const std::string& word) {
  if (word == "dm_bandpass") {
    return FitCellKind::dm_bandpass;
  }
  if (word == "cm_bandpass") {
    return FitCellKind::cm_bandpass;
  }
  if (word == "dm_bandstop") {
    return FitCellKind::dm_bandstop;
  }
  throw std::runtime_error(
      "fit kind must be dm_bandpass, cm_bandpass or dm_bandstop");
}

std::vector<double> initial_from_config(const RunConfig& cfg,
                                        FitCellKind kind) {
  const auto need = [&cfg](const char* key) {
    return cfg.get_double("cell", key);  // throws with the key name
  };
  switch (kind) {
    case FitCellKind::dm_bandpass:
      return {need("dm_l_h"), need("dm_cg_f"), need("dm_c_f"),
              need("dm_lc_h"), need("dm_cc_f")};
    case FitCellKind::cm_bandpass:
      return {need("cm_l_h"), need("cm_cg_f"), need("cm_c1_f")};
    case FitCellKind::dm_bandstop:
      return {need("dm_l_h"), need("dm_c_f"), need("dm_lc_h"),
              need("dm_cc_f")};
  }
  throw std::logic_error("unhandled cell kind");
}

int cmd_fit(const std::string& config_path, const std::string& target_path,
            const std::string& out_dir) {
  const RunConfig cfg = RunConfig::load(config_path);
  if (!cfg.has("fit", "kind")) {
    throw std::runtime_error("config needs fit.kind");
  }
  const FitCellKind kind = parse_fit_kind(cfg.get_string("fit", "kind"));
  const CellTopology topology =
      parse_topology(cfg.get_string_or("cell", "topology", "t"));
  const std::vector<double> initial = initial_from_config(cfg, kind);

  FitProblem problem;
  problem.kind = kind;
  problem.topology = topology;
  problem.mag_weight = cfg.get_double_or("fit", "mag_weight", 1.0);
  problem.phase_weight = cfg.get_double_or("fit", "phase_weight", 0.1);

  const std::string ext = fs::path(target_path).extension().string();
  if (ext == ".s2p") {
    const TouchstoneDocument doc =
        parse_touchstone(read_file(target_path), 2);
    problem.freq_hz = doc.freq_hz;
    problem.target = two_port_points(doc);
    problem.z_ref_ohm = doc.z_ref;
  } else if (ext == ".csv") {
    const CsvTable t = parse_csv(read_file(target_path));
    const auto& f = t.columns[t.column("freq_hz")];
    const auto& s11_db = t.columns[t.column("s11_db")];
    const auto& s11_deg = t.columns[t.column("s11_deg")];
    const auto& s21_db = t.columns[t.column("s21_db")];
    const auto& s21_deg = t.columns[t.column("s21_deg")];
    problem.z_ref_ohm = cfg.get_double_or("spec", "z0_ohm", 50.0);
    problem.freq_hz = f;
    problem.target.reserve(f.size());
    const auto from_db = [](double db, double deg) {
      const double mag = std::pow(10.0, db / 20.0);
      const double rad = deg * std::numbers::pi / 180.0;
      return Complex{mag * std::cos(rad), mag * std::sin(rad)};
    };
    for (std::size_t i = 0; i < f.size(); ++i) {
      SParams2 s;
      s.s11 = from_db(s11_db[i], s11_deg[i]);
      s.s21 = from_db(s21_db[i], s21_deg[i]);
      s.s12 = s.s21;  // reciprocal symmetric cell
      s.s22 = s.s11;
      s.z_ref = problem.z_ref_ohm;
      problem.target.push_back(s);
    }
  } else {
    throw std::runtime_error("fit target must be a .s2p or .csv file");
  }

  const double bound_factor = cfg.get_double_or("fit", "bound_factor", 100.0);
  problem.bounds.reserve(initial.size());
  for (double v : initial) {
    problem.bounds.push_back({v / bound_factor, v * bound_factor});
  }

  FitOptions options;
  options.max_evals = cfg.get_int_or("fit", "max_evals", 20000);
  options.restarts = cfg.get_int_or("fit", "restarts", 2);

  const double initial_cost = objective(initial, problem);
  const FitResult result = fit(problem, initial, options);

  std::printf("fit over %zu points: cost %.6e -> %.6e in %d evaluations "
              "(%d iterations), %s\n",
              problem.freq_hz.size(), initial_cost, result.cost,
              result.evaluations, result.iterations,
              result.converged ? "converged" : "did not converge");
  const std::vector<std::string> names = parameter_names(kind);
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::printf("  %-16s %.9e\n", names[i].c_str(), result.parameters[i]);
  }

  const std::string prefix = cfg.get_string_or("output", "prefix", "fit");
  const fs::path base = fs::path(out_dir) / prefix;
  std::string report;
  report += format("converged=%s\n", result.converged ? "true" : "false");
  report += format("cost_initial=%.9e\n", initial_cost);
  report += format("cost=%.9e\n", result.cost);
  report += format("evaluations=%d\n", result.evaluations);
  report += format("iterations=%d\n", result.iterations);
  for (std::size_t i = 0; i < names.size(); ++i) {
    report += format("%s=%.9e\n", names[i].c_str(), result.parameters[i]);
  }
  write_file(base.string() + "_fit.txt", report);

  // Config fragment with the fitted values, consumable by `sim`.
  std::string cell_cfg = "[cell]\n";
  const std::vector<std::string> keys = [&]() -> std::vector<std::string> {
    switch (kind) {
      case FitCellKind::dm_bandpass:
        return {"dm_l_h", "dm_cg_f", "dm_c_f", "dm_lc_h", "dm_cc_f"};
      case FitCellKind::cm_bandpass:
        return {"cm_l_h", "cm_cg_f", "cm_c1_f"};
      case FitCellKind::dm_bandstop:
        return {"dm_l_h", "dm_c_f", "dm_lc_h", "dm_cc_f"};
    }
    return {};
  }();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    cell_cfg += format("%s = %.9e\n", keys[i].c_str(), result.parameters[i]);
  }
  write_file(base.string() + "_fitted.cfg", cell_cfg);

  return result.converged ? 0 : kExitNotConverged;
}

std::array<int, 4> parse_port_map(const std::string& text) {
  std::array<int, 4> map{};
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 4) {
      throw std::runtime_error("port map needs exactly four entries");
    }
    char* end = nullptr;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (end != item.c_str() + item.size() || v < 1 || v > 4) {
      throw std::runtime_error("port map entries must be 1..4");
    }
    map[i++] = static_cast<int>(v - 1);
  }
  if (i != 4) {
    throw std::runtime_error("port map needs exactly four entries");
  }
  return map;
}

int cmd_mm(const std::string& target_path, const std::string& port_map_text,
           const std::string& out_dir) {
  const std::array<int, 4> map = parse_port_map(port_map_text);
  const TouchstoneDocument doc = parse_touchstone(read_file(target_path), 4);
  const std::vector<SParams4> pts = four_port_points(doc);

  std::vector<SParams2> sdd, scc;
  sdd.reserve(pts.size());
  scc.reserve(pts.size());
  double max_cross = 0.0;
  for (const SParams4& p : pts) {
    const MixedModeS mm = std4_to_mixed(permute_ports(p, map));
    sdd.push_back(to_sparams(mm.sdd, mm.z_ref));
    scc.push_back(to_sparams(mm.scc, mm.z_ref));
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        max_cross = std::max({max_cross, std::abs(mm.sdc[i][j]),
                              std::abs(mm.scd[i][j])});
      }
    }
  }

  const std::string stem = fs::path(target_path).stem().string();
  const fs::path base = fs::path(out_dir) / stem;
  write_file(base.string() + "_sdd.s2p",
             write_touchstone(make_two_port_doc(doc.freq_hz, sdd, doc.format,
                                                doc.unit)));
  write_file(base.string() + "_scc.s2p",
             write_touchstone(make_two_port_doc(doc.freq_hz, scc, doc.format,
                                                doc.unit)));

  CsvTable t;
  t.header = {"freq_hz", "sdd11_db", "sdd21_db", "scc11_db", "scc21_db"};
  t.columns.assign(5, {});
  for (std::size_t k = 0; k < doc.freq_hz.size(); ++k) {
    t.columns[0].push_back(doc.freq_hz[k]);
    t.columns[1].push_back(mag_db(sdd[k].s11));
    t.columns[2].push_back(mag_db(sdd[k].s21));
    t.columns[3].push_back(mag_db(scc[k].s11));
    t.columns[4].push_back(mag_db(scc[k].s21));
  }
  write_file(base.string() + "_mm.csv", write_csv(t));

  std::printf("converted %zu points (%.6f - %.6f GHz); worst mode conversion "
              "|s| = %.3e\n",
              doc.freq_hz.size(), doc.freq_hz.front() / 1e9,
              doc.freq_hz.back() / 1e9, max_cross);
  return 0;
}

int cmd_metrics(const std::string& config_path, const std::string& dm_path,
                const std::string& cm_path, double threshold_db,
                const std::string& out_dir) {
  SweepResult sr{FrequencyGrid({1.0}), {}, {}, 50.0};
  std::string prefix = "metrics";
  if (!config_path.empty()) {
    const RunConfig cfg = RunConfig::load(config_path);
    const CellTopology topology =
        parse_topology(cfg.get_string_or("cell", "topology", "t"));
    const ResolvedCells cells = resolve_cells(cfg);
    if (cells.failed_synth) {
      std::fprintf(stderr, "synthesis infeasible: %s\n",
                   cells.failed_synth->shunt.infeasibility.c_str());
      return kExitInfeasible;
    }
    sr = sweep_from_config(cfg, topology, cells);
    prefix = cfg.get_string_or("output", "prefix", "metrics");
  } else {
    if (dm_path.empty() || cm_path.empty()) {
      throw std::runtime_error(
          "metrics needs --config, or both --dm and --cm files");
    }
    const TouchstoneDocument dm_doc = parse_touchstone(read_file(dm_path), 2);
    const TouchstoneDocument cm_doc = parse_touchstone(read_file(cm_path), 2);
    if (dm_doc.freq_hz != cm_doc.freq_hz) {
      throw std::runtime_error(
          "differential and common-mode files use different grids");
    }
    sr = SweepResult{FrequencyGrid(dm_doc.freq_hz), two_port_points(dm_doc),
                     two_port_points(cm_doc), dm_doc.z_ref};
  }

  const FilterMetrics m = metrics(sr, threshold_db);
  std::fputs(metrics_text(m).c_str(), stdout);
  write_file((fs::path(out_dir) / (prefix + "_metrics.csv")).string(),
             write_csv(metrics_table(m)));
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"lumped-element modelling of balanced bandpass filters"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", convention_flag, topology_flag;
  std::string target_path, dm_path, cm_path, port_map = "1,2,3,4";
  double threshold_db = 30.0;

  CLI::App* synth = app.add_subcommand(
      "synth", "size cell elements from a bandpass specification");
  synth->add_option("--config", config_path, "run configuration file")
      ->required();
  synth->add_option("--out", out_dir, "output directory");
  synth->add_option("--convention", convention_flag,
                    "reactance sign convention: plusj or minusj");

  CLI::App* sim = app.add_subcommand(
      "sim", "sweep the differential and common-mode responses");
  sim->add_option("--config", config_path, "run configuration file")
      ->required();
  sim->add_option("--out", out_dir, "output directory");
  sim->add_option("--topology", topology_flag, "cell topology: t or gamma");

  CLI::App* fit_cmd = app.add_subcommand(
      "fit", "fit cell element values to a measured response");
  fit_cmd->add_option("--config", config_path, "run configuration file")
      ->required();
  fit_cmd->add_option("--target", target_path, "target .s2p or .csv file")
      ->required();
  fit_cmd->add_option("--out", out_dir, "output directory");

  CLI::App* mm = app.add_subcommand(
      "mm", "reduce a four-port file to mixed-mode two-ports");
  mm->add_option("--target", target_path, "four-port .s4p file")->required();
  mm->add_option("--port-map", port_map,
                 "single-ended ports forming (a-in, b-in, a-out, b-out)");
  mm->add_option("--out", out_dir, "output directory");

  CLI::App* met = app.add_subcommand(
      "metrics", "measure passband figures from a sweep");
  met->add_option("--config", config_path, "run configuration file");
  met->add_option("--dm", dm_path, "differential-mode .s2p file");
  met->add_option("--cm", cm_path, "common-mode .s2p file");
  met->add_option("--threshold-db", threshold_db,
                  "common-mode suppression threshold in positive dB");
  met->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (synth->parsed()) {
      return cmd_synth(config_path, out_dir, convention_flag);
    }
    if (sim->parsed()) {
      return cmd_sim(config_path, out_dir, topology_flag);
    }
    if (fit_cmd->parsed()) {
      return cmd_fit(config_path, target_path, out_dir);
    }
    if (mm->parsed()) {
      return cmd_mm(target_path, port_map, out_dir);
    }
    if (met->parsed()) {
      return cmd_metrics(config_path, dm_path, cm_path, threshold_db,
                         out_dir);
    }
  } catch (const MetricsError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitMetrics;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace dsrkit
