#include <doctest.h>

#include <afd/errors.hpp>
#include <afd/szego.hpp>

#include "support.hpp"

using namespace afd;
using namespace afd::test;

namespace {

double binomial(int n, int k) {
  double b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

/// Norm of the untruncated higher-order series by long partial summation.
double series_norm(const AtomSpec& s) {
  if (s.a == Complex{}) return 1.0;
  const double q = std::norm(s.a);
  double sum = 0;
  for (int k = 0; k < 20000; ++k) {
    const double b = binomial(k + s.order - 1, s.order - 1);
    const double t = b * b * std::pow(q, k);
    sum += t;
    if (k > 100 && t < 1e-30 * sum) break;
  }
  return std::sqrt(sum);
}

}  // namespace

TEST_CASE("reproducing kernel identity") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_hardy(rng, 64);
    const Complex a = random_disc(rng, 0.9);
    const auto e = szego_coeffs(a, 64);
    CHECK(std::abs(inner(f, e) - std::sqrt(1 - std::norm(a)) * power_sum(f, a)) < 1e-10);
  }
}

TEST_CASE("Szego kernel coefficients and truncated energy") {
  const Complex a{0.3, -0.4};
  const auto e = szego_coeffs(a, 30);
  for (int k = 0; k <= 30; ++k) CHECK(std::abs(e[k] - std::sqrt(1 - std::norm(a)) * std::pow(std::conj(a), k)) < 1e-15);
  CHECK(e.energy() == doctest::Approx(1 - std::pow(std::norm(a), 31)).epsilon(1e-14));
  CHECK(szego_coeffs({}, 5)[0] == Complex{1.0});
  CHECK(std::abs(szego_coeffs(0.5, 40).energy() - 1) < 1e-15);
}

TEST_CASE("higher-order atoms at the origin are monomials") {
  for (int m = 1; m <= 5; ++m) {
    const auto h = higher_order_coeffs({{}, m}, 8);
    for (int k = 0; k <= 8; ++k) CHECK(h[k] == Complex(k == m - 1 ? 1.0 : 0.0));
    CHECK(normalization({{}, m}) == 1.0);
  }
}

TEST_CASE("higher-order coefficients are binomial powers") {
  const Complex a{-0.2, 0.6};
  for (int m = 1; m <= 4; ++m) {
    const auto h = higher_order_coeffs({a, m}, 12);
    for (int k = 0; k <= 12; ++k) CHECK(std::abs(h[k] - binomial(k + m - 1, m - 1) * std::pow(std::conj(a), k)) < 1e-12);
  }
}

TEST_CASE("normalization of the order-2 atom at 0.5") {
  CHECK(normalization({0.5, 2}) == doctest::Approx(0.5809475019311125).epsilon(1e-12));
}

TEST_CASE("normalization matches long summation for every order") {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const AtomSpec s{random_disc(rng, 0.9), 1 + trial % 7};
    CHECK(normalization(s) * series_norm(s) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("atom energy plus truncation deficit is one") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const AtomSpec s{random_disc(rng, 0.95), 1 + trial % 4};
    const auto x = atom_coeffs(s, 48);
    CHECK(x.energy() + truncation_deficit(s, 48) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(truncation_deficit(s, 48) >= -1e-15);
  }
}

TEST_CASE("tensor atoms are outer products") {
  const TensorAtomSpec t{{Complex{0.2, 0.1}, 1}, {Complex{-0.5, 0.3}, 2}};
  const auto x = tensor_atom_coeffs(t, 10);
  const auto l = atom_coeffs(t.left, 10);
  const auto r = atom_coeffs(t.right, 10);
  for (int k = 0; k <= 10; ++k)
    for (int j = 0; j <= 10; ++j) CHECK(std::abs(x(k, j) - l[k] * r[j]) < 1e-15);
  CHECK(x.energy() == doctest::Approx(l.energy() * r.energy()).epsilon(1e-13));
}

TEST_CASE("parameters outside the open disc are rejected") {
  CHECK_THROWS_AS((AtomSpec{1.0, 1}.validate()), DomainError);
  CHECK_THROWS_AS((AtomSpec{Complex{0.8, 0.7}, 1}.validate()), DomainError);
  CHECK_THROWS_AS((AtomSpec{0.5, 0}.validate()), DomainError);
  CHECK_THROWS_AS(szego_coeffs(1.2, 8), DomainError);
  CHECK_NOTHROW(AtomSpec{0.99, 3}.validate());
}

TEST_CASE("truncation is reported only near the rim") {
  CHECK(truncation_warning(0.5, 64).empty());
  CHECK_FALSE(truncation_warning(0.99, 64).empty());
}
