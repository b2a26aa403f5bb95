#include "afd/szego.hpp"

#include <cmath>
#include <cstdio>

#include "afd/errors.hpp"

namespace afd {
namespace {

constexpr double kTailTolerance = 1e-14;

// sum_{k >= start} C(k+m-1, m-1)^2 x^k, summed until the geometric tail bound
// drops below kTailTolerance relative to the running sum.
double binomial_square_series(int m, double x, int start) {
  // term at k = start
  double term = std::pow(x, start);
  for (int j = 1; j < m; ++j) {
    const double c = static_cast<double>(start + j) / j;
    term *= c * c;
  }
  double sum = 0.0;
  for (long k = start;; ++k) {
    sum += term;
    const double ratio = std::pow(static_cast<double>(k + m) / static_cast<double>(k + 1), 2) * x;
    const double next = term * ratio;
    if (ratio < 1.0 && next / (1.0 - ratio) <= kTailTolerance * sum) break;
    if (next == 0.0) break;
    term = next;
  }
  return sum;
}

}  // namespace

void AtomSpec::validate() const {
  if (!(std::abs(a) < 1.0)) throw DomainError("atom parameter must lie inside the unit disc");
  if (order < 1) throw DomainError("atom order must be at least 1");
}

void TensorAtomSpec::validate() const {
  left.validate();
  right.validate();
}

FourierCoeffs1D szego_coeffs(Complex a, int order) { return atom_coeffs(AtomSpec{a, 1}, order); }

FourierCoeffs1D higher_order_coeffs(const AtomSpec& spec, int order) {
  spec.validate();
  FourierCoeffs1D f(order, Support::hardy);
  if (spec.a == Complex{}) {
    if (spec.order - 1 > order) {
      throw DimensionError("monomial z^" + std::to_string(spec.order - 1) + " exceeds truncation order " +
                           std::to_string(order));
    }
    f.at(spec.order - 1) = 1.0;
    return f;
  }
  const Complex abar = std::conj(spec.a);
  Complex c = 1.0;
  for (int k = 0; k <= order; ++k) {
    f.at(k) = c;
    c *= abar * (static_cast<double>(k + spec.order) / static_cast<double>(k + 1));
  }
  return f;
}

double normalization(const AtomSpec& spec) {
  spec.validate();
  if (spec.a == Complex{}) return 1.0;
  const double x = std::norm(spec.a);
  const double q = 1.0 - x;
  switch (spec.order) {
    case 1:
      return std::sqrt(q);
    case 2:
      return std::sqrt(q * q * q / (1.0 + x));
    case 3:
      return std::sqrt(std::pow(q, 5) / (1.0 + 4.0 * x + x * x));
    default:
      return 1.0 / std::sqrt(binomial_square_series(spec.order, x, 0));
  }
}

FourierCoeffs1D atom_coeffs(const AtomSpec& spec, int order) {
  FourierCoeffs1D f = higher_order_coeffs(spec, order);
  f *= normalization(spec);
  return f;
}

double truncation_deficit(const AtomSpec& spec, int order) {
  spec.validate();
  if (spec.a == Complex{}) return spec.order - 1 <= order ? 0.0 : 1.0;
  const double x = std::norm(spec.a);
  if (spec.order == 1) return std::pow(x, order + 1);
  const double n = normalization(spec);
  return n * n * binomial_square_series(spec.order, x, order + 1);
}

FourierCoeffs2D tensor_atom_coeffs(const TensorAtomSpec& spec, int order) {
  const FourierCoeffs1D u = atom_coeffs(spec.left, order);
  const FourierCoeffs1D v = atom_coeffs(spec.right, order);
  FourierCoeffs2D out(order, Support::hardy);
  for (int k = 0; k <= order; ++k)
    for (int l = 0; l <= order; ++l) out.at(k, l) = u[k] * v[l];
  return out;
}

std::string truncation_warning(double radius, int order) {
  const double deficit = std::pow(radius * radius, order + 1);
  if (deficit <= kTruncationWarning) return {};
  char buf[160];
  std::snprintf(buf, sizeof buf, "truncation order %d loses %.3g of the kernel energy at radius %.6g", order,
                deficit, radius);
  return buf;
}

}  // namespace afd
