#include <doctest.h>

#include <afd/errors.hpp>
#include <afd/tm.hpp>

#include "support.hpp"

using namespace afd;
using namespace afd::test;

namespace {

/// Atoms on rim grid points, well apart in angle, with decaying weights.
FourierCoeffs1D rim_atoms(Rng& rng, const GridSpec& grid, int count, int order, std::vector<Complex>* atoms) {
  const auto pts = coarse_points(grid);
  std::vector<Complex> chosen;
  int tries = 0;
  while (static_cast<int>(chosen.size()) < count) {
    if (++tries > 100000) {
      chosen.clear();
      tries = 0;
    }
    const auto& p = pts[rng() % pts.size()];
    if (p.radius < 0.98 || p.radius > 0.99) continue;
    bool apart = true;
    for (auto a : chosen)
      if (std::abs(std::remainder(std::arg(a) - p.angle, 2 * kPi)) < 0.9) apart = false;
    if (apart) chosen.push_back(p.z());
  }
  FourierCoeffs1D f(order, Support::hardy);
  double w = 1;
  for (auto a : chosen) {
    f += std::polar(w, uniform(rng, 0, 2 * kPi)) * szego_coeffs(a, order);
    w *= 0.4;
  }
  if (atoms) *atoms = chosen;
  return f;
}

FourierCoeffs1D monomial(int k, int order) {
  FourierCoeffs1D f(order, Support::hardy);
  f.at(k) = 1.0;
  return f;
}

}  // namespace

TEST_CASE("multiplicities count earlier repetitions") {
  const TMParamSequence p{{0.1, 0.2, 0.1, 0.1, 0.2}};
  CHECK(p.multiplicities() == std::vector<int>{1, 1, 2, 3, 2});
  CHECK_THROWS_AS((TMParamSequence{{1.0}}.validate()), DomainError);
}

TEST_CASE("TM basis with zero parameters is the monomial basis") {
  const auto basis = tm_basis({std::vector<Complex>(6)}, 10);
  for (int k = 0; k < 6; ++k)
    for (int j = 0; j <= 10; ++j) CHECK(basis.functions[static_cast<std::size_t>(k)][j] == Complex(j == k ? 1.0 : 0.0));
  CHECK(basis.gram_error() == 0.0);
}

TEST_CASE("TM basis is orthonormal") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    TMParamSequence p;
    for (int k = 0; k < 8; ++k) p.params.push_back(random_disc(rng, 0.9));
    if (trial % 3 == 0) p.params[3] = p.params[1];
    CHECK(tm_basis(p, 512).gram_error() < 1e-8);
  }
}

TEST_CASE("TM basis spans the same spaces as Gram-Schmidt on kernels") {
  Rng rng(32);
  TMParamSequence p;
  for (int k = 0; k < 6; ++k) p.params.push_back(random_disc(rng, 0.7));
  const int order = 128;
  const auto basis = tm_basis(p, order);
  std::vector<CVector> kernels;
  for (auto a : p.params) kernels.push_back(as_vector(szego_coeffs(a, order)));
  const auto gs = mgs(kernels);
  REQUIRE(gs.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(dot_coeffs(as_vector(basis.functions[k]), gs[k])) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("first TM function is the kernel and the product has unit modulus") {
  const TMParamSequence p{{Complex{0.3, 0.2}, Complex{-0.5, 0.1}}};
  const auto basis = tm_basis(p, 64);
  const auto e = szego_coeffs(p.params[0], 64);
  for (int k = 0; k <= 64; ++k) CHECK(std::abs(basis.functions[0][k] - e[k]) < 1e-14);
  const auto b = blaschke_eval(p, 32);
  for (std::size_t j = 0; j < 32; ++j) {
    const Complex z = std::polar(1.0, BoundaryGrid1D::angle(j, 32));
    Complex prod = 1;
    for (auto a : p.params) prod *= (z - a) / (1.0 - std::conj(a) * z);
    CHECK(std::abs(b.samples[j] - prod) < 1e-14);
    CHECK(std::abs(std::abs(b.samples[j]) - 1) < 1e-14);
  }
}

TEST_CASE("backward shift matches the quotient inside the disc") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_hardy(rng, 32);
    const Complex a = random_disc(rng, 0.8);
    const Complex c = inner(f, szego_coeffs(a, 32));
    const auto g = backward_shift(f, a);
    CHECK(g.order() == 32);
    for (int probe = 0; probe < 5; ++probe) {
      const Complex z = random_disc(rng, 0.6);
      const Complex expect = (power_sum(f, z) * (1.0 - std::conj(a) * z) - c * std::sqrt(1 - std::norm(a))) / (z - a);
      CHECK(std::abs(power_sum(g, z) - expect) < 1e-8 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("backward shift preserves the energy split") {
  Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_hardy(rng, 48);
    const Complex a = random_disc(rng, 0.9);
    const Complex c = inner(f, szego_coeffs(a, 48));
    CHECK(backward_shift(f, a).energy() == doctest::Approx(f.energy() - std::norm(c)).epsilon(1e-9));
  }
}

TEST_CASE("division by a Mobius factor inverts multiplication") {
  Rng rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex a = random_disc(rng, 0.9);
    FourierCoeffs1D p(20, Support::hardy);
    for (int k = 0; k < 20; ++k) p.at(k) = random_complex(rng);
    FourierCoeffs1D h(20, Support::hardy);  // h = (z - a) p
    for (int k = 0; k < 20; ++k) {
      h.at(k + 1) += p[k];
      h.at(k) -= a * p[k];
    }
    const auto q = divide_mobius(h, a);  // p (1 - conj(a) z)
    for (int k = 0; k <= 20; ++k) CHECK(std::abs(q[k] - (p[k] - std::conj(a) * p[k - 1])) < 1e-12);
  }
}

TEST_CASE("maximal selection examples") {
  GridSpec grid;
  const auto p = nearest_coarse(grid, 0.5, 0.0);
  const auto atom = msp_1d(szego_coeffs(p.z(), 64), grid);
  CHECK(std::abs(atom.a - p.z()) < 1e-15);
  CHECK(atom.value == doctest::Approx(1.0).epsilon(1e-12));

  const auto z = msp_1d(monomial(1, 16), grid);
  CHECK(std::abs(std::abs(z.a) - 1 / std::sqrt(2.0)) < 0.01);
  CHECK(z.value == doctest::Approx(0.25).epsilon(1e-4));

  const auto one = msp_1d(monomial(0, 16), grid);
  CHECK(one.a == Complex{});
  CHECK(one.value == 1.0);

  CHECK_THROWS_AS(msp_1d(FourierCoeffs1D(8, Support::hardy), grid), DegenerateInputError);
}

TEST_CASE("maximal selection equals an exhaustive scan") {
  Rng rng(36);
  for (int refine : {0, 2}) {
    GridSpec grid{12, 24, refine, 0.95};
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_hardy(rng, 24);
      SearchTrace trace;
      const auto s = msp_1d(f, grid, &trace);
      std::vector<double> values;
      for (const auto& pt : trace.points) values.push_back((1 - std::norm(pt.z())) * std::norm(power_sum(f, pt.z())));
      const auto best = first_argmax(values);
      CHECK(std::abs(s.a - trace.points[best].z()) < 1e-15);
      CHECK(s.value == doctest::Approx(values[best]).epsilon(1e-10));
    }
  }
}

TEST_CASE("AFD energy ledger, coefficient equivalence and remainder relation") {
  Rng rng(37);
  GridSpec grid{16, 32, 2, 0.95};
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_hardy(rng, 64);
    const auto rec = afd_decompose_1d(f, 8, grid);
    REQUIRE(rec.steps.size() == 8);
    CHECK(rec.ledger_discrepancy() < 1e-10 * f.energy());
    double prev = rec.initial_energy;
    for (const auto& s : rec.steps) {
      CHECK(s.residual_energy <= prev);
      prev = s.residual_energy;
    }

    const auto basis = tm_basis(rec.params(), 64);
    const auto reduced = reduced_remainders(f, rec);
    REQUIRE(reduced.size() == 9);
    // standard remainders at a wider order, free of truncation loss
    const int wide = 1024;
    const auto wide_basis = tm_basis(rec.params(), wide);
    FourierCoeffs1D g(wide, Support::hardy);
    for (int j = 0; j <= 64; ++j) g.at(j) = f[j];
    for (std::size_t k = 0; k < 8; ++k) {
      const auto& step = rec.steps[k];
      CHECK(std::abs(inner(reduced[k], szego_coeffs(step.a, 64)) - inner(f, basis.functions[k])) < 1e-8);
      CHECK(std::abs(step.coefficient - inner(f, basis.functions[k])) < 1e-8);

      const auto all = rec.params().params;
      const TMParamSequence prefix{{all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k)}};
      const std::size_t P = 4096;
      auto fk = to_grid(reduced[k], P);
      const auto blaschke = blaschke_eval(prefix, P);
      for (std::size_t j = 0; j < P; ++j) fk.samples[j] *= blaschke.samples[j];
      const auto gk = to_grid(g, P);
      double diff = 0;
      for (std::size_t j = 0; j < P; ++j) diff += std::norm(gk.samples[j] - fk.samples[j]);
      CHECK(std::sqrt(diff / P) < 1e-7);

      g -= step.coefficient * wide_basis.functions[k];
    }
    CHECK(g.energy() == doctest::Approx(rec.steps.back().residual_energy).epsilon(1e-8));
  }
}

TEST_CASE("AFD recovers a single kernel in one step") {
  GridSpec grid;
  const auto p = nearest_coarse(grid, 0.5, 0.0);
  const auto rec = afd_decompose_1d(szego_coeffs(p.z(), 64), 3, grid);
  REQUIRE(rec.steps.size() == 1);
  CHECK(rec.steps[0].residual_energy < 1e-12);
  const auto s = reconstruct_1d(rec, 64);
  CHECK((s - szego_coeffs(p.z(), 64)).energy() < 1e-20);
}

TEST_CASE("AFD recovers sums of separated rim kernels") {
  Rng rng(38);
  GridSpec grid;
  for (int count : {2, 5}) {
    const auto f = rim_atoms(rng, grid, count, 1024, nullptr);
    const auto rec = afd_decompose_1d(f, count, grid);
    CHECK(rec.steps.back().residual_energy < 1e-8 * f.energy());
    const auto s = reconstruct_1d(rec, 1024);
    CHECK(std::sqrt((f - s).energy() / f.energy()) < 1e-6);
  }
}

TEST_CASE("repeated parameters raise the multiplicity") {
  GridSpec grid;
  const auto p = nearest_coarse(grid, 0.7, 1.0);
  const auto basis = tm_basis({{p.z(), p.z()}}, 256);
  const auto f = basis.functions[0] + Complex(0.01) * basis.functions[1];
  const auto rec = afd_decompose_1d(f, 2, grid);
  REQUIRE(rec.steps.size() == 2);
  CHECK(rec.steps[1].multiplicity == 2);
  CHECK(std::abs(rec.steps[1].a - rec.steps[0].a) < 1e-15);
  CHECK(rec.steps.back().residual_energy < 1e-20);
}

TEST_CASE("hyperbolic diagnostic") {
  CHECK(hyperbolic_diagnostic({std::vector<Complex>(5)}) == 5.0);
  CHECK(hyperbolic_diagnostic({{0.9, 0.99, 0.999}}) == doctest::Approx(0.111));
  CHECK(hyperbolic_diagnostic({}) == 0.0);
}
