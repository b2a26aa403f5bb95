#pragma once

// Pre-orthogonal greedy selection over parameterized dictionaries of
// coefficient vectors, with the weak (rho) variant, order escalation at
// parameters already in the span, and the plain orthogonal greedy baseline.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "afd/grid.hpp"
#include "afd/hardy.hpp"
#include "afd/szego.hpp"

namespace afd {

/// A dictionary element: a 1-D atom, or a tensor atom when `right` is set.
struct DictAtom {
  AtomSpec left;
  std::optional<AtomSpec> right;

  bool operator==(const DictAtom&) const = default;
};

std::string describe(const DictAtom& atom);

inline constexpr double kSpanEpsilon = 1e-8;
inline constexpr double kFrameTolerance = 1e-9;

Complex dot(std::span<const Complex> x, std::span<const Complex> y);  // sum x conj(y)
double norm2(std::span<const Complex> x);

/// Orthonormal vectors B_1..B_n built by Gram-Schmidt from source atoms.
class OrthoFrame {
 public:
  explicit OrthoFrame(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return basis_.size(); }
  const CVector& basis(std::size_t k) const { return basis_.at(k); }
  const std::vector<DictAtom>& sources() const noexcept { return sources_; }

  struct Projection {
    CVector residual;
    double r = 0.0;
  };
  /// Q(x) = x - sum <x, B_k> B_k, applied twice.
  Projection project_residual(std::span<const Complex> x) const;

  /// Appends the normalized projection residual of x. Throws
  /// DegenerateInputError when r < kSpanEpsilon.
  const CVector& extend(std::span<const Complex> x, const DictAtom& source);

  /// max |<B_i, B_j> - delta_ij|
  double orthonormality_error() const;

 private:
  std::size_t dimension_;
  std::vector<CVector> basis_;
  std::vector<DictAtom> sources_;
};

struct WeakParam {
  double rho = 1.0;

  void validate() const;
};

struct SelectionOutcome {
  DictAtom atom;
  double r = 0.0;
  double gain = 0.0;         // |<g, B^a>| = correlation / r
  double correlation = 0.0;  // |<g, atom>|
  bool span_degenerate = false;
};

/// Gain of one unit-norm candidate against the frame. When r < kSpanEpsilon
/// the outcome is flagged span_degenerate and the gain is left at zero.
SelectionOutcome candidate_gain(std::span<const Complex> g, std::span<const Complex> atom, const OrthoFrame& frame);

/// Evaluates <h_i, x(a, b)> for a fixed family of vectors h_i and base
/// (order-1) atoms. `row(b)` fixes the second parameter (ignored in 1-D) and
/// returns a callable writing one value per vector for a given a.
using DotRow = std::function<void(Complex, std::span<Complex>)>;

class Dictionary {
 public:
  virtual ~Dictionary() = default;

  virtual int order() const noexcept = 0;
  virtual bool is_product() const noexcept = 0;
  virtual std::size_t dimension() const noexcept = 0;

  /// Unit-norm coefficient vector of the atom in the truncated space.
  virtual CVector atom(const DictAtom& spec) const = 0;
  /// Candidates replacing a span-degenerate atom, in preference order.
  virtual std::vector<DictAtom> escalations(const DictAtom& spec) const = 0;
  /// Batch evaluator of inner products with base atoms.
  virtual std::function<DotRow(Complex)> dot_rows(const std::vector<const CVector*>& vectors) const = 0;

  DictAtom base_atom(Complex a, Complex b) const;
};

/// Szegő kernels e_a and their higher-order ladder on the disc.
class SzegoDictionary1D final : public Dictionary {
 public:
  explicit SzegoDictionary1D(int order);

  int order() const noexcept override { return order_; }
  bool is_product() const noexcept override { return false; }
  std::size_t dimension() const noexcept override { return static_cast<std::size_t>(order_) + 1; }
  CVector atom(const DictAtom& spec) const override;
  std::vector<DictAtom> escalations(const DictAtom& spec) const override;
  std::function<DotRow(Complex)> dot_rows(const std::vector<const CVector*>& vectors) const override;

 private:
  int order_;
};

/// Tensor products e_a (x) e_b and their per-factor order ladders.
class ProductSzegoDictionary2D final : public Dictionary {
 public:
  explicit ProductSzegoDictionary2D(int order);

  int order() const noexcept override { return order_; }
  bool is_product() const noexcept override { return true; }
  std::size_t dimension() const noexcept override {
    return static_cast<std::size_t>(order_ + 1) * static_cast<std::size_t>(order_ + 1);
  }
  CVector atom(const DictAtom& spec) const override;
  /// Raises the left order, then the right order.
  std::vector<DictAtom> escalations(const DictAtom& spec) const override;
  std::function<DotRow(Complex)> dot_rows(const std::vector<const CVector*>& vectors) const override;

 private:
  int order_;
};

/// Coarse-grid summary of one selection.
struct SelectionStats {
  double sup_gain = 0.0;
  double sup_r = 0.0;
  std::size_t evaluations = 0;
};

/// Pre-orthogonal rho-maximal selection over the grid (pairs of grid points
/// for product dictionaries). With rho = 1 the gain is maximized, near-ties
/// go to the smaller r, and the result is refined. With rho < 1 the candidate
/// with the smallest r among those within rho of the coarse supremum wins.
SelectionOutcome poga_select(std::span<const Complex> g, const OrthoFrame& frame, const Dictionary& dict,
                             WeakParam weak, const GridSpec& grid, SelectionStats* stats = nullptr);

/// argmax |<g, atom>| over base atoms, without pre-orthogonalization.
DictAtom oga_select(std::span<const Complex> g, const Dictionary& dict, const GridSpec& grid);

struct PogaStep {
  DictAtom atom;
  Complex coefficient;           // <f, B_k>
  double residual_energy = 0.0;  // ||g_{k+1}||^2
  double r = 0.0;
  double gain = 0.0;
  double sup_gain = 0.0;
  double r_sup = 0.0;            // sup of r over the synthesis support or the grid
  double running_r = 0.0;        // R_k
};

struct PogaRecord {
  bool product = false;
  int order = 0;
  double rho = 1.0;
  double initial_energy = 0.0;
  std::vector<PogaStep> steps;
  std::vector<std::string> warnings;

  /// max over steps of | ||f||^2 - sum |c_j|^2 - ||g_{k+1}||^2 |
  double ledger_discrepancy() const;
};

/// Runs pre-orthogonal greedy selection on the coefficient vector f. When the
/// synthesis atoms of f are known they are used for the r supremum.
PogaRecord poga_decompose(std::span<const Complex> f, int n_terms, const Dictionary& dict, WeakParam weak,
                          const GridSpec& grid, const std::vector<DictAtom>* synthesis = nullptr,
                          double threshold = 1e-12);

/// Rebuilds the frame from the record's atoms and returns sum c_k B_k.
CVector reconstruct_poga(const PogaRecord& record, const Dictionary& dict);

}  // namespace afd
