#pragma once

namespace dsrkit {

// Entry point behind the dsrkit binary. Exit codes:
//   0  success
//   2  configuration or input parse failure
//   3  synthesis produced an unrealizable element set
//   4  fit stopped without converging
//   5  metrics could not be computed from the sweep
int run_cli(int argc, const char* const* argv);

}  // namespace dsrkit
