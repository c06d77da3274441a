#include <stdexcept>
#include <string>

#include "doctest.h"
#include "dsrkit/config.hpp"
#include "dsrkit/errors.hpp"

using namespace dsrkit;

namespace {

const char* kSample =
    "# run description\n"
    "[spec]\n"
    "n = 3\n"
    "f0_hz = 1.5e9\n"
    "fbw = 0.06\n"
    "z0_ohm = 50\n"
    "g = 1.521\n"
    "convention = plusj\n"
    "\n"
    "[cell]\n"
    "topology = t\n"
    "dm_l_h = 7.4e-9   # total series inductance\n"
    "dm_cg_f = 0.9e-12\n"
    "dm_c_f = 217.5e-12\n"
    "dm_lc_h = 0.8e-9\n"
    "dm_cc_f = 13e-12\n"
    "cm_l_h = 6e-9\n"
    "cm_cg_f = 1e-12\n"
    "cm_c1_f = 12e-12\n"
    "\n"
    "[sweep]\n"
    "f_start_hz = 0.5e9\n"
    "f_stop_hz = 2.5e9\n"
    "points = 1001\n"
    "\n"
    "[fit]\n"
    "kind = dm_bandpass\n"
    "mag_weight = 1\n"
    "phase_weight = 0.1\n"
    "max_evals = 5000\n"
    "restarts = 2\n"
    "bound_factor = 100\n"
    "\n"
    "[output]\n"
    "prefix = run1\n"
    "formats = csv, s2p, svg\n";

int parse_error_line(const std::string& text) {
  try {
    RunConfig::parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("full configuration parses with typed access") {
  const RunConfig cfg = RunConfig::parse(kSample);
  CHECK(cfg.has_section("spec"));
  CHECK(cfg.has_section("output"));
  CHECK(!cfg.has_section("nope"));
  CHECK(cfg.has("spec", "fbw"));
  CHECK(!cfg.has("spec", "points"));

  CHECK(cfg.get_int("spec", "n") == 3);
  CHECK(cfg.get_double("spec", "f0_hz") == 1.5e9);
  CHECK(cfg.get_double("spec", "fbw") == 0.06);
  CHECK(cfg.get_string("spec", "convention") == "plusj");
  CHECK(cfg.get_double("cell", "dm_l_h") == 7.4e-9);  // inline comment cut
  CHECK(cfg.get_int("sweep", "points") == 1001);
  CHECK(cfg.get_string("output", "formats") == "csv, s2p, svg");

  CHECK(cfg.get_double_or("sweep", "f_start_hz", 1.0) == 0.5e9);
  CHECK(cfg.get_double_or("sweep", "missing", 7.0) == 7.0);
  CHECK(cfg.get_int_or("fit", "restarts", 9) == 2);
  CHECK(cfg.get_int_or("fit", "missing", 9) == 9);
  CHECK(cfg.get_string_or("output", "prefix", "x") == "run1");
  CHECK(cfg.get_string_or("output", "missing", "x") == "x");

  CHECK_THROWS_AS(cfg.get_double("spec", "missing"), std::runtime_error);
  CHECK_THROWS_AS(cfg.get_string("nope", "missing"), std::runtime_error);
}

TEST_CASE("an empty section is still recorded") {
  const RunConfig cfg = RunConfig::parse("[spec]\n");
  CHECK(cfg.has_section("spec"));
  CHECK(!cfg.has("spec", "n"));
}

TEST_CASE("configuration errors carry line numbers") {
  CHECK(parse_error_line("[nope]\n") == 1);
  CHECK(parse_error_line("[spec]\nbogus = 1\n") == 2);
  CHECK(parse_error_line("[spec]\nn = 1\nn = 2\n") == 3);
  CHECK(parse_error_line("[spec\nn = 1\n") == 1);
  CHECK(parse_error_line("n = 1\n") == 1);          // key before any section
  CHECK(parse_error_line("[spec]\nf0_hz 1.5e9\n") == 2);  // missing '='
  CHECK(parse_error_line("[spec]\nf0_hz = abc\n") == 2);
  CHECK(parse_error_line("[spec]\nf0_hz = -1e9\n") == 2);
  CHECK(parse_error_line("[spec]\nf0_hz = 0\n") == 2);
  CHECK(parse_error_line("[spec]\nn = 0\n") == 2);
  CHECK(parse_error_line("[spec]\nn = 1.5\n") == 2);
  CHECK(parse_error_line("[fit]\nrestarts = -1\n") == 2);
  CHECK(parse_error_line("[fit]\nmag_weight = -0.1\n") == 2);
  CHECK(parse_error_line("[fit]\nbound_factor = 1\n") == 2);
  CHECK(parse_error_line("[fit]\nkind = banana\n") == 2);
  CHECK(parse_error_line("[spec]\nconvention = j\n") == 2);
  CHECK(parse_error_line("[cell]\ntopology = pi\n") == 2);
  CHECK(parse_error_line("[output]\nformats = csv, pdf\n") == 2);
  CHECK(parse_error_line("[output]\nformats =\n") == 2);
  CHECK(parse_error_line("[output]\nprefix =\n") == 2);
  CHECK(parse_error_line("[sweep]\npoints = two\n") == 2);
}

TEST_CASE("comments and CRLF endings are tolerated") {
  const RunConfig cfg = RunConfig::parse(
      "# leading comment\r\n[spec]\r\nn = 2 # trailing\r\n\r\n");
  CHECK(cfg.get_int("spec", "n") == 2);
}

TEST_CASE("zero weights are allowed where only negatives are rejected") {
  const RunConfig cfg =
      RunConfig::parse("[fit]\nmag_weight = 0\nphase_weight = 0\n");
  CHECK(cfg.get_double("fit", "mag_weight") == 0.0);
}

TEST_CASE("load reports unreadable files") {
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/path/run.cfg"),
                  std::runtime_error);
}
