#include <doctest.h>

#include <afd/rate.hpp>
#include <afd/tm.hpp>

#include "support.hpp"

using namespace afd;
using namespace afd::test;

TEST_CASE("rows use the remainder before the m-th selection") {
  const std::vector<double> energies{1.0, 0.5, 0.25};
  const std::vector<double> r{1.0};
  const auto rep = rate_report(energies, r, 2.0, 1.0);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].m == 1);
  CHECK(rep.rows[0].residual_norm == 1.0);
  CHECK(rep.rows[0].bound == 2.0);
  CHECK(rep.rows[1].residual_norm == doctest::Approx(std::sqrt(0.5)));
  CHECK(rep.rows[1].bound == doctest::Approx(2 / std::sqrt(2.0)));
  CHECK(rep.rows[2].slack == doctest::Approx(2 / std::sqrt(3.0) - 0.5));
  CHECK(rep.A == 4.0);
  CHECK(rep.ok());
}

TEST_CASE("weak parameter and running R scale the bound") {
  const std::vector<double> energies{1.0, 0.5};
  const std::vector<double> r{0.5, 0.8};
  const auto rep = rate_report(energies, r, 1.0, 0.5);
  CHECK(rep.rows[0].bound == doctest::Approx(0.5 * 1.0 / 0.5));
  CHECK(rep.rows[1].bound == doctest::Approx(0.8 / (0.5 * std::sqrt(2.0))));
  CHECK(rep.A == doctest::Approx(std::pow(0.8 / 0.5, 2)));
}

TEST_CASE("a remainder above the bound is a violation") {
  const std::vector<double> energies{1.0, 0.99, 0.98};
  const std::vector<double> r{1.0};
  const auto rep = rate_report(energies, r, 1.0, 1.0);
  CHECK_FALSE(rep.ok());
  CHECK(rep.rows[1].slack < 0);
}

TEST_CASE("slow decay breaks the energy recurrence") {
  // d_1 = 1, A = 4: the recurrence allows d_2 <= 0.75
  const std::vector<double> energies{1.0, 0.9};
  const std::vector<double> r{1.0};
  const auto rep = rate_report(energies, r, 2.0, 1.0);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("core AFD on a bounded-mass signal meets the rate") {
  Rng rng(61);
  GridSpec grid{16, 32, 1, 0.95};
  const auto pts = coarse_points(grid);
  const int order = 128;
  FourierCoeffs1D f(order, Support::hardy);
  std::vector<double> w(8);
  double total = 0;
  for (auto& x : w) total += (x = uniform(rng, 0.1, 1.1));
  for (double x : w) {
    GridPoint p;
    do p = pts[rng() % pts.size()];
    while (p.radius > 0.9);
    f += std::polar(2 * x / total, uniform(rng, 0, 2 * kPi)) * szego_coeffs(p.z(), order);
  }
  const auto rec = afd_decompose_1d(f, 12, grid);
  std::vector<double> energies{rec.initial_energy};
  for (const auto& s : rec.steps) energies.push_back(s.residual_energy);
  const std::vector<double> r{1.0};
  const auto rep = rate_report(energies, r, 2.0, 1.0);
  CHECK(rep.ok());
  for (const auto& row : rep.rows) CHECK(row.slack >= 0);
}
