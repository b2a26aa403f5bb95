#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "afd/grid.hpp"
#include "afd/tm.hpp"

namespace afd {

struct RunConfig {
  std::string algorithm = "afd1d";  // afd1d, afd2d-tm, pga2d, poga1d, poga2d
  int n_terms = 10;
  int order = 0;  // 0 selects 256 for 1-D runs and 64 for 2-D runs
  GridSpec grid;
  double rho = 1.0;
  double threshold = kDefaultEnergyThreshold;
  std::string input;
  std::string output;
  std::uint64_t seed = 1;
  double mass = 2.0;  // synth: sum of |c_k|
  bool full = false;  // 2-D: also decompose the reflected (+,-) quadrant

  bool is_2d() const;
  /// Throws ConfigError on an unknown algorithm, rho outside (0, 1],
  /// N < 8 or a grid radius outside (0, 1).
  void validate() const;
};

/// Entry point of the `afd` tool. Returns 0 on success, 1 when a check or
/// invariant fails and 2 on usage or ingestion errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace afd
