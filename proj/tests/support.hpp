#pragma once

// Random generators and brute-force oracles shared by the tests and the
// acceptance run. The oracles avoid the library's fast paths: direct power
// sums instead of Horner, modified Gram-Schmidt instead of the recurrences.

#include <afd/afd2d.hpp>
#include <afd/hardy.hpp>
#include <afd/szego.hpp>
#include <afd/tm.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace afd::test {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex random_complex(Rng& rng) { return {uniform(rng, -1, 1), uniform(rng, -1, 1)}; }

/// Uniform in the disc of the given radius.
inline Complex random_disc(Rng& rng, double max_radius) {
  const double r = max_radius * std::sqrt(uniform(rng, 0, 1));
  return std::polar(r, uniform(rng, 0, 2 * kPi));
}

inline FourierCoeffs1D random_hardy(Rng& rng, int order) {
  FourierCoeffs1D f(order, Support::hardy);
  for (auto& c : f.values()) c = random_complex(rng);
  return f;
}

inline FourierCoeffs2D random_hardy_2d(Rng& rng, int order) {
  FourierCoeffs2D f(order, Support::hardy);
  for (auto& c : f.values()) c = random_complex(rng);
  return f;
}

inline FourierCoeffs1D unit(FourierCoeffs1D f) {
  f *= 1.0 / std::sqrt(f.energy());
  return f;
}

inline FourierCoeffs2D unit(FourierCoeffs2D f) {
  f *= 1.0 / std::sqrt(f.energy());
  return f;
}

/// f(z) = sum c_k z^k by explicit powers.
inline Complex power_sum(const FourierCoeffs1D& f, Complex z) {
  Complex s{};
  for (int k = 0; k <= f.order(); ++k) s += f[k] * std::pow(z, k);
  return s;
}

inline Complex power_sum(const FourierCoeffs2D& f, Complex z, Complex w) {
  Complex s{};
  for (int k = 0; k <= f.order(); ++k)
    for (int l = 0; l <= f.order(); ++l) s += f(k, l) * std::pow(z, k) * std::pow(w, l);
  return s;
}

inline Complex dot_coeffs(const CVector& x, const CVector& y) {
  Complex s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

inline CVector as_vector(const FourierCoeffs1D& f) { return {f.values().begin(), f.values().end()}; }
inline CVector as_vector(const FourierCoeffs2D& f) { return {f.values().begin(), f.values().end()}; }

/// Modified Gram-Schmidt over the given vectors, dropping dependent ones.
inline std::vector<CVector> mgs(const std::vector<CVector>& vectors, double drop = 1e-10) {
  std::vector<CVector> basis;
  for (CVector v : vectors) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const Complex c = dot_coeffs(v, b);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
      }
    const double n = std::sqrt(std::real(dot_coeffs(v, v)));
    if (n < drop) continue;
    for (auto& x : v) x /= n;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// ||P f||^2 for the orthogonal projection onto the span of `vectors`.
inline double projected_energy(const CVector& f, const std::vector<CVector>& vectors) {
  double e = 0;
  for (const auto& b : mgs(vectors)) e += std::norm(dot_coeffs(f, b));
  return e;
}

/// ||D_n||^2 as the energy gained by growing the tensor span from
/// {e_{a_i} (x) e_{b_j}: i, j < n} to i, j <= n. Needs distinct parameters
/// per axis and an order large enough that truncation is negligible.
inline double dn_energy_by_projection(const FourierCoeffs2D& f, const std::vector<Complex>& as,
                                      const std::vector<Complex>& bs) {
  const int n = static_cast<int>(as.size());
  const int order = f.order();
  auto span_upto = [&](int m) {
    std::vector<CVector> v;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        v.push_back(as_vector(tensor_atom_coeffs({{as[static_cast<std::size_t>(i)], 1}, {bs[static_cast<std::size_t>(j)], 1}}, order)));
    return v;
  };
  const CVector fv = as_vector(f);
  return projected_energy(fv, span_upto(n)) - (n > 1 ? projected_energy(fv, span_upto(n - 1)) : 0.0);
}

/// The coarse grid point whose radius and angle are closest to the targets.
inline GridPoint nearest_coarse(const GridSpec& grid, double radius, double angle) {
  const auto pts = coarse_points(grid);
  return *std::min_element(pts.begin(), pts.end(), [&](const GridPoint& x, const GridPoint& y) {
    auto d = [&](const GridPoint& p) {
      return std::abs(p.radius - radius) + std::abs(std::remainder(p.angle - angle, 2 * kPi));
    };
    return d(x) < d(y);
  });
}

/// Index of the first maximum in iteration order.
inline std::size_t first_argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    Rng rng(std::random_device{}());
    path = std::filesystem::temp_directory_path() / ("afd-" + tag + "-" + std::to_string(rng() % 1000000007));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace afd::test
