#include "afd/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "afd/errors.hpp"
#include "fft.hpp"

namespace afd {
namespace {

std::size_t wrap(int k, std::size_t p) {
  const auto n = static_cast<long>(p);
  return static_cast<std::size_t>(((k % n) + n) % n);
}

void require_same_order(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": truncation orders differ (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

constexpr double kRealTolerance = 1e-10;

}  // namespace

// ---------------------------------------------------------------------------
// FourierCoeffs1D

FourierCoeffs1D::FourierCoeffs1D(int order, Support support) : order_(order), support_(support) {
  if (order < 0) throw DimensionError("negative truncation order");
  data_.assign(support == Support::hardy ? order + 1 : 2 * order + 1, Complex{});
}

FourierCoeffs1D FourierCoeffs1D::from_hardy(CVector coeffs) {
  if (coeffs.empty()) throw DimensionError("empty coefficient vector");
  FourierCoeffs1D f;
  f.order_ = static_cast<int>(coeffs.size()) - 1;
  f.support_ = Support::hardy;
  f.data_ = std::move(coeffs);
  return f;
}

FourierCoeffs1D FourierCoeffs1D::from_full(CVector coeffs) {
  if (coeffs.size() % 2 == 0) throw DimensionError("full coefficient vector must have odd length");
  FourierCoeffs1D f;
  f.order_ = static_cast<int>(coeffs.size() / 2);
  f.support_ = Support::full;
  f.data_ = std::move(coeffs);
  return f;
}

Complex FourierCoeffs1D::operator[](int k) const noexcept {
  if (k < min_index() || k > order_) return {};
  return data_[static_cast<std::size_t>(k - min_index())];
}

Complex& FourierCoeffs1D::at(int k) {
  if (k < min_index() || k > order_) throw std::out_of_range("coefficient index " + std::to_string(k));
  return data_[static_cast<std::size_t>(k - min_index())];
}

double FourierCoeffs1D::energy() const noexcept {
  double e = 0.0;
  for (const auto& c : data_) e += std::norm(c);
  return e;
}

FourierCoeffs1D& FourierCoeffs1D::operator+=(const FourierCoeffs1D& other) {
  require_same_order(order_, other.order_, "addition");
  if (support_ == Support::hardy && other.support_ == Support::full) {
    FourierCoeffs1D widened(order_, Support::full);
    for (int k = 0; k <= order_; ++k) widened.at(k) = (*this)[k];
    *this = std::move(widened);
  }
  for (int k = other.min_index(); k <= order_; ++k) at(k) += other[k];
  return *this;
}

FourierCoeffs1D& FourierCoeffs1D::operator-=(const FourierCoeffs1D& other) {
  FourierCoeffs1D neg = other;
  neg *= -1.0;
  return *this += neg;
}

FourierCoeffs1D& FourierCoeffs1D::operator*=(Complex s) noexcept {
  for (auto& c : data_) c *= s;
  return *this;
}

FourierCoeffs1D operator+(FourierCoeffs1D a, const FourierCoeffs1D& b) { return a += b; }
FourierCoeffs1D operator-(FourierCoeffs1D a, const FourierCoeffs1D& b) { return a -= b; }
FourierCoeffs1D operator*(Complex s, FourierCoeffs1D a) { return a *= s; }

// ---------------------------------------------------------------------------
// FourierCoeffs2D

FourierCoeffs2D::FourierCoeffs2D(int order, Support support) : order_(order), support_(support) {
  if (order < 0) throw DimensionError("negative truncation order");
  const auto s = static_cast<std::size_t>(side());
  data_.assign(s * s, Complex{});
}

Complex FourierCoeffs2D::operator()(int k, int l) const noexcept {
  const int lo = min_index();
  if (k < lo || k > order_ || l < lo || l > order_) return {};
  return data_[static_cast<std::size_t>((k - lo) * side() + (l - lo))];
}

Complex& FourierCoeffs2D::at(int k, int l) {
  const int lo = min_index();
  if (k < lo || k > order_ || l < lo || l > order_) {
    throw std::out_of_range("coefficient index (" + std::to_string(k) + ", " + std::to_string(l) + ")");
  }
  return data_[static_cast<std::size_t>((k - lo) * side() + (l - lo))];
}

double FourierCoeffs2D::energy() const noexcept {
  double e = 0.0;
  for (const auto& c : data_) e += std::norm(c);
  return e;
}

FourierCoeffs2D& FourierCoeffs2D::operator+=(const FourierCoeffs2D& other) {
  require_same_order(order_, other.order_, "addition");
  if (support_ == Support::hardy && other.support_ == Support::full) {
    FourierCoeffs2D widened(order_, Support::full);
    for (int k = 0; k <= order_; ++k)
      for (int l = 0; l <= order_; ++l) widened.at(k, l) = (*this)(k, l);
    *this = std::move(widened);
  }
  const int lo = other.min_index();
  for (int k = lo; k <= order_; ++k)
    for (int l = lo; l <= order_; ++l) at(k, l) += other(k, l);
  return *this;
}

FourierCoeffs2D& FourierCoeffs2D::operator-=(const FourierCoeffs2D& other) {
  FourierCoeffs2D neg = other;
  neg *= -1.0;
  return *this += neg;
}

FourierCoeffs2D& FourierCoeffs2D::operator*=(Complex s) noexcept {
  for (auto& c : data_) c *= s;
  return *this;
}

FourierCoeffs2D operator+(FourierCoeffs2D a, const FourierCoeffs2D& b) { return a += b; }
FourierCoeffs2D operator-(FourierCoeffs2D a, const FourierCoeffs2D& b) { return a -= b; }
FourierCoeffs2D operator*(Complex s, FourierCoeffs2D a) { return a *= s; }

// ---------------------------------------------------------------------------
// grids

double BoundaryGrid1D::angle(std::size_t j, std::size_t size) noexcept {
  return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(size);
}

std::size_t grid_size_for(int order) {
  std::size_t p = 1;
  while (p < static_cast<std::size_t>(2 * order + 2)) p <<= 1;
  return p;
}

BoundaryGrid1D to_grid(const FourierCoeffs1D& f, std::size_t grid_size) {
  if (grid_size < static_cast<std::size_t>(2 * f.order() + 1)) {
    throw DimensionError("grid of " + std::to_string(grid_size) + " samples cannot hold order " +
                         std::to_string(f.order()));
  }
  CVector buf(grid_size, Complex{});
  for (int k = f.min_index(); k <= f.order(); ++k) buf[wrap(k, grid_size)] = f[k];
  detail::fft_inverse(buf);
  return BoundaryGrid1D{std::move(buf)};
}

FourierCoeffs1D from_grid(const BoundaryGrid1D& grid, int order, Support support) {
  const std::size_t p = grid.size();
  if (p < static_cast<std::size_t>(2 * order + 1)) {
    throw DimensionError("grid of " + std::to_string(p) + " samples cannot resolve order " + std::to_string(order));
  }
  CVector buf = grid.samples;
  detail::fft_forward(buf);
  const double scale = 1.0 / static_cast<double>(p);
  FourierCoeffs1D f(order, support);
  for (int k = f.min_index(); k <= order; ++k) f.at(k) = buf[wrap(k, p)] * scale;
  return f;
}

BoundaryGrid2D to_grid(const FourierCoeffs2D& f, std::size_t grid_size) {
  if (grid_size < static_cast<std::size_t>(2 * f.order() + 1)) {
    throw DimensionError("grid of " + std::to_string(grid_size) + " samples cannot hold order " +
                         std::to_string(f.order()));
  }
  BoundaryGrid2D g{grid_size, CVector(grid_size * grid_size, Complex{})};
  for (int k = f.min_index(); k <= f.order(); ++k)
    for (int l = f.min_index(); l <= f.order(); ++l) g(wrap(k, grid_size), wrap(l, grid_size)) = f(k, l);
  detail::fft_inverse_2d(g.samples, grid_size);
  return g;
}

FourierCoeffs2D from_grid(const BoundaryGrid2D& grid, int order, Support support) {
  const std::size_t p = grid.size;
  if (p < static_cast<std::size_t>(2 * order + 1)) {
    throw DimensionError("grid of " + std::to_string(p) + " samples cannot resolve order " + std::to_string(order));
  }
  CVector buf = grid.samples;
  detail::fft_forward_2d(buf, p);
  const double scale = 1.0 / static_cast<double>(p * p);
  FourierCoeffs2D f(order, support);
  for (int k = f.min_index(); k <= order; ++k)
    for (int l = f.min_index(); l <= order; ++l) f.at(k, l) = buf[wrap(k, p) * p + wrap(l, p)] * scale;
  return f;
}

// ---------------------------------------------------------------------------
// inner products and evaluation

Complex inner(const FourierCoeffs1D& f, const FourierCoeffs1D& g) {
  require_same_order(f.order(), g.order(), "inner product");
  Complex s{};
  for (int k = std::max(f.min_index(), g.min_index()); k <= f.order(); ++k) s += f[k] * std::conj(g[k]);
  return s;
}

Complex inner(const FourierCoeffs2D& f, const FourierCoeffs2D& g) {
  require_same_order(f.order(), g.order(), "inner product");
  const int lo = std::max(f.min_index(), g.min_index());
  Complex s{};
  for (int k = lo; k <= f.order(); ++k)
    for (int l = lo; l <= f.order(); ++l) s += f(k, l) * std::conj(g(k, l));
  return s;
}

Complex evaluate(const FourierCoeffs1D& f, Complex z) noexcept {
  Complex acc{};
  for (int k = f.order(); k >= 0; --k) acc = acc * z + f[k];
  return acc;
}

Complex evaluate(const FourierCoeffs2D& f, Complex z, Complex w) noexcept {
  Complex acc{};
  for (int k = f.order(); k >= 0; --k) {
    Complex row{};
    for (int l = f.order(); l >= 0; --l) row = row * w + f(k, l);
    acc = acc * z + row;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Hilbert transform and analytic parts

FourierCoeffs1D hilbert_transform(const FourierCoeffs1D& f) {
  FourierCoeffs1D h(f.order(), Support::full);
  const Complex minus_i{0.0, -1.0};
  for (int k = 1; k <= f.order(); ++k) {
    h.at(k) = minus_i * f[k];
    h.at(-k) = -minus_i * f[-k];
  }
  return h;
}

double hermitian_defect(const FourierCoeffs1D& f) noexcept {
  const double scale = std::max(std::sqrt(f.energy()), 1e-300);
  double worst = 0.0;
  for (int k = 0; k <= f.order(); ++k) worst = std::max(worst, std::abs(f[-k] - std::conj(f[k])));
  return worst / scale;
}

double hermitian_defect(const FourierCoeffs2D& f) noexcept {
  const double scale = std::max(std::sqrt(f.energy()), 1e-300);
  double worst = 0.0;
  const int n = f.order();
  for (int k = -n; k <= n; ++k)
    for (int l = -n; l <= n; ++l) worst = std::max(worst, std::abs(f(-k, -l) - std::conj(f(k, l))));
  return worst / scale;
}

FourierCoeffs1D analytic_part(const FourierCoeffs1D& f) {
  if (hermitian_defect(f) > kRealTolerance) throw DomainError("analytic_part: input is not real-valued");
  FourierCoeffs1D out(f.order(), Support::hardy);
  for (int k = 0; k <= f.order(); ++k) out.at(k) = f[k];
  return out;
}

// ---------------------------------------------------------------------------
// quadrant pipeline

FourierCoeffs2D QuadrantParts::reflected_pm() const {
  FourierCoeffs2D out(fpm.order(), Support::hardy);
  for (int k = 0; k <= fpm.order(); ++k)
    for (int l = 0; l <= fpm.order(); ++l) out.at(k, l) = fpm(k, -l);
  return out;
}

QuadrantParts quadrant_split(const FourierCoeffs2D& f) {
  if (hermitian_defect(f) > kRealTolerance) throw DomainError("quadrant_split: input is not real-valued");
  const int n = f.order();
  QuadrantParts parts{FourierCoeffs2D(n, Support::full), FourierCoeffs2D(n, Support::full),
                      FourierCoeffs2D(n, Support::full), FourierCoeffs2D(n, Support::full),
                      FourierCoeffs1D(n, Support::full), FourierCoeffs1D(n, Support::full), f(0, 0)};
  for (int k = -n; k <= n; ++k) {
    for (int l = -n; l <= n; ++l) {
      const Complex c = f(k, l);
      if (k >= 0 && l >= 0) parts.fpp.at(k, l) = c;
      if (k >= 0 && l <= 0) parts.fpm.at(k, l) = c;
      if (k <= 0 && l >= 0) parts.fmp.at(k, l) = c;
      if (k <= 0 && l <= 0) parts.fmm.at(k, l) = c;
    }
    parts.F.at(k) = f(k, 0);
    parts.G.at(k) = f(0, k);
  }
  return parts;
}

BoundaryGrid2D real_reconstruct_2d(const QuadrantParts& parts, std::size_t grid_size) {
  const int n = parts.fpp.order();
  FourierCoeffs2D pp(n, Support::hardy);
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) pp.at(k, l) = parts.fpp(k, l);

  const BoundaryGrid2D a = to_grid(pp, grid_size);
  const BoundaryGrid2D b = to_grid(parts.reflected_pm(), grid_size);
  const BoundaryGrid1D fplus = to_grid(analytic_part(parts.F), grid_size);
  const BoundaryGrid1D gplus = to_grid(analytic_part(parts.G), grid_size);
  const double c00 = parts.c00.real();

  BoundaryGrid2D out{grid_size, CVector(grid_size * grid_size)};
  for (std::size_t j = 0; j < grid_size; ++j) {
    for (std::size_t l = 0; l < grid_size; ++l) {
      const std::size_t neg_l = (grid_size - l) % grid_size;
      const double v = 2.0 * a(j, l).real() + 2.0 * b(j, neg_l).real() - 2.0 * fplus.samples[j].real() -
                       2.0 * gplus.samples[l].real() + c00;
      out(j, l) = Complex{v, 0.0};
    }
  }
  return out;
}

}  // namespace afd
