#include "afd/rate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "afd/errors.hpp"

namespace afd {
namespace {

constexpr double kRelativeSlack = 1e-10;

std::string format(const char* fmt, int m, double lhs, double rhs) {
  char buf[200];
  std::snprintf(buf, sizeof buf, fmt, m, lhs, rhs);
  return buf;
}

}  // namespace

RateReport rate_report(std::span<const double> energies, std::span<const double> running_r, double M, double rho) {
  if (!(M > 0.0)) throw ConfigError("rate bound needs M > 0");
  if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in (0, 1]");
  if (running_r.empty()) throw ConfigError("rate report needs at least one R value");
  RateReport report;
  if (energies.empty()) return report;

  const double tol = kRelativeSlack * std::max(energies[0], 1.0);
  const double r_final = *std::max_element(running_r.begin(), running_r.end());
  report.A = std::pow(r_final * M / rho, 2);

  for (std::size_t k = 0; k < energies.size(); ++k) {
    const int m = static_cast<int>(k) + 1;
    const double R = running_r[std::min(k, running_r.size() - 1)];
    RateRow row{m, std::sqrt(std::max(energies[k], 0.0)), R * M / (rho * std::sqrt(static_cast<double>(m))), 0.0};
    row.slack = row.bound - row.residual_norm;
    if (row.slack < -std::sqrt(tol)) {
      report.violations.push_back(format("m=%d: ||g_m|| = %.6g exceeds bound %.6g", m, row.residual_norm, row.bound));
    }
    report.rows.push_back(row);

    const double d = energies[k];
    if (d > report.A / m + tol) {
      report.violations.push_back(format("m=%d: d_m = %.6g exceeds A/m = %.6g", m, d, report.A / m));
    }
    if (k + 1 < energies.size()) {
      const double limit = d * (1.0 - d / report.A);
      if (energies[k + 1] > limit + tol) {
        report.violations.push_back(format("n=%d: d_{n+1} = %.6g exceeds d_n(1 - d_n/A) = %.6g", m,
                                           energies[k + 1], limit));
      }
    }
  }
  if (energies[0] > report.A + tol) {
    report.violations.push_back(format("m=%d: d_1 = %.6g exceeds A = %.6g", 1, energies[0], report.A));
  }
  return report;
}

}  // namespace afd
