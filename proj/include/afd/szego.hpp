#pragma once

// Szegő kernels e_a = sqrt(1 - |a|^2) / (1 - conj(a) z), their higher-order
// relatives 1/(1 - conj(a) z)^m (z^{m-1} at a = 0) and tensor products.

#include <string>

#include "afd/hardy.hpp"

namespace afd {

/// Disc parameter with multiplicity order m >= 1.
struct AtomSpec {
  Complex a;
  int order = 1;

  void validate() const;
  bool operator==(const AtomSpec&) const = default;
};

struct TensorAtomSpec {
  AtomSpec left;
  AtomSpec right;

  void validate() const;
  bool operator==(const TensorAtomSpec&) const = default;
};

/// Coefficients of the normalized kernel e_a, k = 0..N.
FourierCoeffs1D szego_coeffs(Complex a, int order);

/// Unnormalized coefficients C(k+m-1, m-1) conj(a)^k, or the monomial z^{m-1} at a = 0.
FourierCoeffs1D higher_order_coeffs(const AtomSpec& spec, int order);

/// 1 / ||higher_order_coeffs(spec)|| over the untruncated series. Closed
/// form for m <= 3; partial summation with a geometric tail bound otherwise.
double normalization(const AtomSpec& spec);

/// normalization(spec) * higher_order_coeffs(spec, N).
FourierCoeffs1D atom_coeffs(const AtomSpec& spec, int order);

/// 1 - ||atom_coeffs(spec, N)||^2: energy lost by truncating at N.
double truncation_deficit(const AtomSpec& spec, int order);

/// Outer product of the two normalized factors.
FourierCoeffs2D tensor_atom_coeffs(const TensorAtomSpec& spec, int order);

/// Deficit above which truncation is reported.
inline constexpr double kTruncationWarning = 1e-8;

/// Empty when the deficit of e_a at `radius` is within kTruncationWarning.
std::string truncation_warning(double radius, int order);

}  // namespace afd
