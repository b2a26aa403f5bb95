#pragma once

// Boundary signals on the circle and the 2-torus, represented by truncated
// Fourier coefficients. Sample grids are derived views.

#include <cstddef>
#include <span>

#include "afd/types.hpp"

namespace afd {

/// Which frequencies an instance may carry. `hardy` stores k >= 0 only.
enum class Support { full, hardy };

/// Truncated Fourier series  f(e^{it}) = sum_k c_k e^{ikt},  |k| <= N.
class FourierCoeffs1D {
 public:
  FourierCoeffs1D() = default;
  FourierCoeffs1D(int order, Support support);

  /// Hardy instance with c_k = coeffs[k], N = coeffs.size() - 1.
  static FourierCoeffs1D from_hardy(CVector coeffs);
  /// Full instance with c_k = coeffs[k + N], coeffs.size() == 2N + 1.
  static FourierCoeffs1D from_full(CVector coeffs);

  int order() const noexcept { return order_; }
  Support support() const noexcept { return support_; }
  bool is_hardy() const noexcept { return support_ == Support::hardy; }
  int min_index() const noexcept { return is_hardy() ? 0 : -order_; }

  /// c_k, zero outside the stored range.
  Complex operator[](int k) const noexcept;
  /// Mutable c_k; throws std::out_of_range outside the stored range.
  Complex& at(int k);

  std::span<const Complex> values() const noexcept { return data_; }
  std::span<Complex> values() noexcept { return data_; }

  double energy() const noexcept;

  FourierCoeffs1D& operator+=(const FourierCoeffs1D& other);
  FourierCoeffs1D& operator-=(const FourierCoeffs1D& other);
  FourierCoeffs1D& operator*=(Complex s) noexcept;

 private:
  int order_ = 0;
  Support support_ = Support::hardy;
  CVector data_{Complex{}};
};

FourierCoeffs1D operator+(FourierCoeffs1D a, const FourierCoeffs1D& b);
FourierCoeffs1D operator-(FourierCoeffs1D a, const FourierCoeffs1D& b);
FourierCoeffs1D operator*(Complex s, FourierCoeffs1D a);

/// Truncated double series  f(e^{it}, e^{is}) = sum c_{kl} e^{i(kt + ls)}.
/// The first index k belongs to t (the z variable), l to s (the w variable).
class FourierCoeffs2D {
 public:
  FourierCoeffs2D() = default;
  FourierCoeffs2D(int order, Support support);

  int order() const noexcept { return order_; }
  Support support() const noexcept { return support_; }
  bool is_hardy() const noexcept { return support_ == Support::hardy; }
  int min_index() const noexcept { return is_hardy() ? 0 : -order_; }
  int side() const noexcept { return is_hardy() ? order_ + 1 : 2 * order_ + 1; }

  Complex operator()(int k, int l) const noexcept;
  Complex& at(int k, int l);

  /// Row-major storage over (k, l) starting at min_index().
  std::span<const Complex> values() const noexcept { return data_; }
  std::span<Complex> values() noexcept { return data_; }

  double energy() const noexcept;

  FourierCoeffs2D& operator+=(const FourierCoeffs2D& other);
  FourierCoeffs2D& operator-=(const FourierCoeffs2D& other);
  FourierCoeffs2D& operator*=(Complex s) noexcept;

 private:
  int order_ = 0;
  Support support_ = Support::hardy;
  CVector data_{Complex{}};
};

FourierCoeffs2D operator+(FourierCoeffs2D a, const FourierCoeffs2D& b);
FourierCoeffs2D operator-(FourierCoeffs2D a, const FourierCoeffs2D& b);
FourierCoeffs2D operator*(Complex s, FourierCoeffs2D a);

/// Samples at t_j = 2 pi j / P.
struct BoundaryGrid1D {
  CVector samples;

  std::size_t size() const noexcept { return samples.size(); }
  static double angle(std::size_t j, std::size_t size) noexcept;
};

/// Samples at (t_j, s_l), row-major in j.
struct BoundaryGrid2D {
  std::size_t size = 0;
  CVector samples;

  Complex operator()(std::size_t j, std::size_t l) const noexcept { return samples[j * size + l]; }
  Complex& operator()(std::size_t j, std::size_t l) noexcept { return samples[j * size + l]; }
};

/// Smallest power of two P with P >= 2N + 2.
std::size_t grid_size_for(int order);

BoundaryGrid1D to_grid(const FourierCoeffs1D& f, std::size_t grid_size);
FourierCoeffs1D from_grid(const BoundaryGrid1D& grid, int order, Support support);
BoundaryGrid2D to_grid(const FourierCoeffs2D& f, std::size_t grid_size);
FourierCoeffs2D from_grid(const BoundaryGrid2D& grid, int order, Support support);

/// sum_k c_k conj(d_k). Throws DimensionError on mismatched orders.
Complex inner(const FourierCoeffs1D& f, const FourierCoeffs1D& g);
Complex inner(const FourierCoeffs2D& f, const FourierCoeffs2D& g);

/// Value of the holomorphic extension at |z| < 1 (Horner over k >= 0).
Complex evaluate(const FourierCoeffs1D& f, Complex z) noexcept;
Complex evaluate(const FourierCoeffs2D& f, Complex z, Complex w) noexcept;

/// Fourier multiplier -i sgn(k).
FourierCoeffs1D hilbert_transform(const FourierCoeffs1D& f);

/// Largest |c_{-k} - conj(c_k)| relative to the coefficient norm.
double hermitian_defect(const FourierCoeffs1D& f) noexcept;
double hermitian_defect(const FourierCoeffs2D& f) noexcept;

/// f^+ = (f + iHf)/2 + c_0/2 for real-valued f, so that f = 2 Re f^+ - c_0.
/// Throws DomainError when f is not real-valued.
FourierCoeffs1D analytic_part(const FourierCoeffs1D& f);

/// Quadrant restrictions of a real 2-D signal. Axis coefficients belong to
/// every adjacent quadrant; F and G are the marginal means over s and t.
struct QuadrantParts {
  FourierCoeffs2D fpp;
  FourierCoeffs2D fpm;
  FourierCoeffs2D fmp;
  FourierCoeffs2D fmm;
  FourierCoeffs1D F;
  FourierCoeffs1D G;
  Complex c00;

  /// [f(., -.)]^{+,+} as a Hardy instance: coefficient (k, l) = c_{k,-l}.
  FourierCoeffs2D reflected_pm() const;
};

QuadrantParts quadrant_split(const FourierCoeffs2D& f);

/// 2Re f^{++}(t,s) + 2Re [f(.,-.)]^{++}(t,-s) - 2Re F^+(t) - 2Re G^+(s) + c00.
BoundaryGrid2D real_reconstruct_2d(const QuadrantParts& parts, std::size_t grid_size);

}  // namespace afd
