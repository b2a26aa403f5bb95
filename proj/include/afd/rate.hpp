#pragma once

// Convergence-rate checks for greedy runs on signals with a known synthesis
// bound M (sum of |c_k| over unit atoms).

#include <span>
#include <string>
#include <vector>

namespace afd {

struct RateRow {
  int m = 0;
  double residual_norm = 0.0;  // ||g_m||, the remainder after m - 1 selections
  double bound = 0.0;          // R_m M / (rho sqrt(m))
  double slack = 0.0;          // bound - residual_norm
};

struct RateReport {
  std::vector<RateRow> rows;
  double A = 0.0;  // (R M / rho)^2 with the final R
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// `energies[k]` is ||g_{k+1}||^2, so energies[0] = ||f||^2. `running_r[k]`
/// is R_{k+1}; the last value is reused past the end. Checks every slack and
/// the recurrence d_{n+1} <= d_n (1 - d_n / A) with its conclusion d_m <= A/m.
RateReport rate_report(std::span<const double> energies, std::span<const double> running_r, double M, double rho);

}  // namespace afd
