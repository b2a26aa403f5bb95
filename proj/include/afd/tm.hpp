#pragma once

// Takenaka-Malmquist systems and 1-D adaptive Fourier decomposition (core AFD).

#include <string>
#include <vector>

#include "afd/grid.hpp"
#include "afd/hardy.hpp"

namespace afd {

/// Ordered disc parameters a_1..a_n; repetitions are allowed.
struct TMParamSequence {
  std::vector<Complex> params;

  void validate() const;
  /// m_k = number of entries a_j, j <= k, equal to a_k.
  std::vector<int> multiplicities() const;
};

/// Product of Möbius factors (z - a)/(1 - conj(a) z) sampled at t_j = 2 pi j / P.
BoundaryGrid1D blaschke_eval(const TMParamSequence& params, std::size_t grid_size);

struct TMBasis {
  std::vector<FourierCoeffs1D> functions;
  std::vector<std::string> warnings;

  /// max |<B_i, B_j> - delta_ij|
  double gram_error() const;
};

/// B_k = e_{a_k} * prod_{l<k} (z - a_l)/(1 - conj(a_l) z), truncated at N.
TMBasis tm_basis(const TMParamSequence& params, int order);

/// Generalized backward shift f -> (f - <f, e_a> e_a) (1 - conj(a) z)/(z - a).
/// Computed by division on a boundary grid. Throws InvariantViolation when the
/// quotient leaks more than 1e-8 ||f||^2 outside frequencies 0..N.
FourierCoeffs1D backward_shift(const FourierCoeffs1D& f, Complex a);

/// P_+[h (1 - conj(a) z)/(z - a)] for Hardy h, by synthetic division.
FourierCoeffs1D divide_mobius(const FourierCoeffs1D& h, Complex a);

struct Selection1D {
  Complex a;
  double value = 0.0;  // (1 - |a|^2) |f(a)|^2
};

/// Maximal selection of (1 - |a|^2)|f(a)|^2 over the grid.
Selection1D msp_1d(const FourierCoeffs1D& f, const GridSpec& grid, SearchTrace* trace = nullptr);

struct AfdStep {
  Complex a;
  int multiplicity = 1;
  Complex coefficient;          // <f_k, e_{a_k}> = <f, B_k>
  double residual_energy = 0.0; // ||f_{k+1}||^2
};

struct AFDRecord {
  int order = 0;
  double initial_energy = 0.0;
  std::vector<AfdStep> steps;
  std::vector<std::string> warnings;

  TMParamSequence params() const;
  /// max over steps of | (previous residual - residual) - |coefficient|^2 |
  double ledger_discrepancy() const;
};

inline constexpr double kDefaultEnergyThreshold = 1e-12;

/// Runs maximal selection and backward shift until `n_terms` steps or until
/// the residual energy drops below threshold * ||f||^2.
AFDRecord afd_decompose_1d(const FourierCoeffs1D& f, int n_terms, const GridSpec& grid,
                           double threshold = kDefaultEnergyThreshold);

/// sum_k coefficient_k B_k.
FourierCoeffs1D reconstruct_1d(const AFDRecord& record, int order);

/// The reduced remainders f_1..f_{n+1} obtained by replaying the backward
/// shifts of `record` on f.
std::vector<FourierCoeffs1D> reduced_remainders(const FourierCoeffs1D& f, const AFDRecord& record);

/// sum_k (1 - |a_k|)
double hyperbolic_diagnostic(const TMParamSequence& params);

}  // namespace afd
