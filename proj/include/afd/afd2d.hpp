#pragma once

// Two-dimensional decompositions on the torus: product-TM AFD, which adds a
// block D_n of 2n - 1 tensor coefficients per step, and the pure greedy
// algorithm over the product-Szegő dictionary.

#include <string>
#include <utility>
#include <vector>

#include "afd/grid.hpp"
#include "afd/hardy.hpp"
#include "afd/szego.hpp"
#include "afd/tm.hpp"

namespace afd {

struct PairSequence {
  std::vector<std::pair<Complex, Complex>> pairs;

  void validate() const;
  TMParamSequence left() const;
  TMParamSequence right() const;
};

/// <f, B_k (x) B_l> = sum c_{pq} conj(B_k[p]) conj(B_l[q]).
Complex product_coeff(const FourierCoeffs2D& f, const FourierCoeffs1D& bk, const FourierCoeffs1D& bl);

/// Index pairs (k, l), 1-based, of the block D_n: (n,1)..(n,n) then (1,n)..(n-1,n).
std::vector<std::pair<int, int>> dn_indices(int n);

/// ||D_n||^2 for the history extended by (a, b), from freshly built TM bases.
double dn_energy(const FourierCoeffs2D& f, const PairSequence& history, Complex a, Complex b, int order);

/// ||D_n||^2 as a function of the candidate (a, b) for a fixed history,
/// evaluated through reduced remainders. Separates as
///   (1-|a|^2) sum_l |u_l(a)|^2 + (1-|b|^2) sum_k |v_k(b)|^2
///   + (1-|a|^2)(1-|b|^2) |F(a, b)|^2.
class DnObjective {
 public:
  DnObjective(const FourierCoeffs2D& f, const PairSequence& history);

  double operator()(Complex a, Complex b) const;
  double left_part(Complex a) const;
  double right_part(Complex b) const;
  /// Horner partial sums of the corner term over w, one per z power.
  CVector corner_row(Complex b) const;
  double corner(Complex a, const CVector& row) const;

 private:
  std::vector<FourierCoeffs1D> u_;
  std::vector<FourierCoeffs1D> v_;
  FourierCoeffs2D corner_;
};

struct PairSelection {
  Complex a;
  Complex b;
  double value = 0.0;
  /// The objective does not vary with a (resp. b) at the selected partner:
  /// the remainder depends on one variable only.
  bool flat_in_a = false;
  bool flat_in_b = false;
};

PairSelection msp_product_tm(const FourierCoeffs2D& f, const PairSequence& history, const GridSpec& grid,
                             PairSearchTrace* trace = nullptr);

struct ProductTMStep {
  Complex a;
  Complex b;
  CVector block;  // coefficients in dn_indices(n) order
  double block_energy = 0.0;
  double residual_energy = 0.0;  // ||f||^2 - sum of block energies so far
  bool flat_in_a = false;
  bool flat_in_b = false;
};

struct ProductTMRecord {
  int order = 0;
  double initial_energy = 0.0;
  std::vector<ProductTMStep> steps;
  std::vector<std::string> warnings;

  PairSequence pairs() const;
};

ProductTMRecord afd2d_tm_decompose(const FourierCoeffs2D& f, int n_terms, const GridSpec& grid,
                                   double threshold = kDefaultEnergyThreshold);

/// S_n(f) rebuilt from the record's blocks.
FourierCoeffs2D reconstruct_product_tm(const ProductTMRecord& record, int order);

/// Unit-norm product atom in the truncated space (normalized by its truncated norm).
FourierCoeffs2D pga_atom(Complex a, Complex b, int order);

struct PgaSelection {
  TensorAtomSpec atom;
  Complex coefficient;
};

/// argmax |<g, e_a (x) e_b>| via the reproducing identity.
PgaSelection pga_step(const FourierCoeffs2D& g, const GridSpec& grid, PairSearchTrace* trace = nullptr);

struct PgaStep {
  TensorAtomSpec atom;
  Complex coefficient;
  double residual_energy = 0.0;
};

struct PGARecord {
  int order = 0;
  double initial_energy = 0.0;
  std::vector<PgaStep> steps;
  std::vector<std::string> warnings;
};

PGARecord pga_decompose(const FourierCoeffs2D& f, int n_terms, const GridSpec& grid,
                        double threshold = kDefaultEnergyThreshold);

FourierCoeffs2D reconstruct_pga(const PGARecord& record, int order);

}  // namespace afd
