#include "afd/tm.hpp"

#include <algorithm>
#include <cmath>

#include "afd/errors.hpp"
#include "afd/szego.hpp"

namespace afd {
namespace {

constexpr double kShiftLeakTolerance = 1e-8;

// In-place y = x / (1 - conj(a) z) on truncated Hardy coefficients.
void divide_kernel(std::span<Complex> x, Complex a) {
  const Complex abar = std::conj(a);
  for (std::size_t k = 1; k < x.size(); ++k) x[k] += abar * x[k - 1];
}

// In-place y = x (z - a), truncated.
void multiply_zero(std::span<Complex> x, Complex a) {
  for (std::size_t k = x.size(); k-- > 0;) x[k] = (k > 0 ? x[k - 1] : Complex{}) - a * x[k];
}

void add_warning(std::vector<std::string>& warnings, const std::string& w) {
  if (!w.empty() && std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
}

}  // namespace

void TMParamSequence::validate() const {
  for (const auto& a : params) {
    if (!(std::abs(a) < 1.0)) throw DomainError("TM parameter outside the unit disc");
  }
}

std::vector<int> TMParamSequence::multiplicities() const {
  std::vector<int> m(params.size(), 1);
  for (std::size_t k = 0; k < params.size(); ++k) {
    m[k] = static_cast<int>(std::count(params.begin(), params.begin() + static_cast<long>(k) + 1, params[k]));
  }
  return m;
}

BoundaryGrid1D blaschke_eval(const TMParamSequence& params, std::size_t grid_size) {
  params.validate();
  BoundaryGrid1D out{CVector(grid_size, Complex{1.0, 0.0})};
  for (std::size_t j = 0; j < grid_size; ++j) {
    const Complex z = std::polar(1.0, BoundaryGrid1D::angle(j, grid_size));
    for (const auto& a : params.params) out.samples[j] *= (z - a) / (1.0 - std::conj(a) * z);
  }
  return out;
}

double TMBasis::gram_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    for (std::size_t j = 0; j < functions.size(); ++j) {
      const Complex g = inner(functions[i], functions[j]);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

TMBasis tm_basis(const TMParamSequence& params, int order) {
  params.validate();
  TMBasis basis;
  CVector blaschke(static_cast<std::size_t>(order) + 1, Complex{});
  blaschke[0] = 1.0;
  for (const auto& a : params.params) {
    CVector b = blaschke;
    divide_kernel(b, a);
    const double n = std::sqrt(1.0 - std::norm(a));
    for (auto& c : b) c *= n;
    basis.functions.push_back(FourierCoeffs1D::from_hardy(std::move(b)));
    add_warning(basis.warnings, truncation_warning(std::abs(a), order));

    multiply_zero(blaschke, a);
    divide_kernel(blaschke, a);
  }
  return basis;
}

FourierCoeffs1D backward_shift(const FourierCoeffs1D& f, Complex a) {
  if (!f.is_hardy()) throw DomainError("backward_shift expects a Hardy signal");
  if (!(std::abs(a) < 1.0)) throw DomainError("backward_shift parameter outside the unit disc");
  const int order = f.order();
  const std::size_t p = 2 * grid_size_for(order);
  const double na = std::sqrt(1.0 - std::norm(a));
  const Complex coefficient = na * evaluate(f, a);
  const Complex abar = std::conj(a);

  BoundaryGrid1D samples = to_grid(f, p);
  for (std::size_t j = 0; j < p; ++j) {
    const Complex z = std::polar(1.0, BoundaryGrid1D::angle(j, p));
    const Complex kernel = na / (1.0 - abar * z);
    const Complex mobius = (z - a) / (1.0 - abar * z);
    samples.samples[j] = (samples.samples[j] - coefficient * kernel) / mobius;
  }
  // Full-range transform so the discarded part can be measured.
  const FourierCoeffs1D all = from_grid(samples, static_cast<int>(p / 2) - 1, Support::full);
  FourierCoeffs1D out(order, Support::hardy);
  double leak = 0.0;
  for (int k = all.min_index(); k <= all.order(); ++k) {
    if (k >= 0 && k <= order) {
      out.at(k) = all[k];
    } else {
      leak += std::norm(all[k]);
    }
  }
  const double energy = f.energy();
  if (leak > kShiftLeakTolerance * energy && leak > 1e-300) {
    throw InvariantViolation("backward shift left " + std::to_string(leak / std::max(energy, 1e-300)) +
                             " of the energy outside the Hardy band; raise the truncation order or lower the radius");
  }
  return out;
}

FourierCoeffs1D divide_mobius(const FourierCoeffs1D& h, Complex a) {
  const int n = h.order();
  // p = h (1 - conj(a) z), degree n + 1
  CVector p(static_cast<std::size_t>(n) + 2, Complex{});
  const Complex abar = std::conj(a);
  for (int k = 0; k <= n; ++k) {
    p[static_cast<std::size_t>(k)] += h[k];
    p[static_cast<std::size_t>(k) + 1] -= abar * h[k];
  }
  CVector q(static_cast<std::size_t>(n) + 1, Complex{});
  q[static_cast<std::size_t>(n)] = p[static_cast<std::size_t>(n) + 1];
  for (int k = n; k >= 1; --k) {
    q[static_cast<std::size_t>(k) - 1] = p[static_cast<std::size_t>(k)] + a * q[static_cast<std::size_t>(k)];
  }
  return FourierCoeffs1D::from_hardy(std::move(q));
}

Selection1D msp_1d(const FourierCoeffs1D& f, const GridSpec& grid, SearchTrace* trace) {
  if (f.energy() == 0.0) throw DegenerateInputError("maximal selection on a zero remainder");
  const ArgmaxResult best = grid_argmax(
      [&f](Complex a) { return (1.0 - std::norm(a)) * std::norm(evaluate(f, a)); }, grid, trace);
  return Selection1D{best.point.z(), best.value};
}

TMParamSequence AFDRecord::params() const {
  TMParamSequence seq;
  for (const auto& s : steps) seq.params.push_back(s.a);
  return seq;
}

double AFDRecord::ledger_discrepancy() const {
  double prev = initial_energy;
  double worst = 0.0;
  for (const auto& s : steps) {
    worst = std::max(worst, std::abs(prev - s.residual_energy - std::norm(s.coefficient)));
    prev = s.residual_energy;
  }
  return worst;
}

AFDRecord afd_decompose_1d(const FourierCoeffs1D& f, int n_terms, const GridSpec& grid, double threshold) {
  if (n_terms < 1) throw ConfigError("number of terms must be at least 1");
  if (!f.is_hardy()) throw DomainError("AFD expects a Hardy signal");
  grid.validate();
  AFDRecord record;
  record.order = f.order();
  record.initial_energy = f.energy();
  if (record.initial_energy == 0.0) throw DegenerateInputError("AFD of the zero signal");

  FourierCoeffs1D remainder = f;
  std::vector<Complex> chosen;
  for (int step = 0; step < n_terms; ++step) {
    if (remainder.energy() <= threshold * record.initial_energy) break;
    const Selection1D sel = msp_1d(remainder, grid);
    const Complex coefficient = std::sqrt(1.0 - std::norm(sel.a)) * evaluate(remainder, sel.a);
    remainder = backward_shift(remainder, sel.a);
    chosen.push_back(sel.a);
    const int multiplicity = static_cast<int>(std::count(chosen.begin(), chosen.end(), sel.a));
    record.steps.push_back(AfdStep{sel.a, multiplicity, coefficient, remainder.energy()});
    add_warning(record.warnings, truncation_warning(std::abs(sel.a), f.order()));
  }
  return record;
}

FourierCoeffs1D reconstruct_1d(const AFDRecord& record, int order) {
  const TMBasis basis = tm_basis(record.params(), order);
  FourierCoeffs1D out(order, Support::hardy);
  for (std::size_t k = 0; k < record.steps.size(); ++k) out += record.steps[k].coefficient * basis.functions[k];
  return out;
}

std::vector<FourierCoeffs1D> reduced_remainders(const FourierCoeffs1D& f, const AFDRecord& record) {
  std::vector<FourierCoeffs1D> out{f};
  for (const auto& s : record.steps) out.push_back(backward_shift(out.back(), s.a));
  return out;
}

double hyperbolic_diagnostic(const TMParamSequence& params) {
  double s = 0.0;
  for (const auto& a : params.params) s += 1.0 - std::abs(a);
  return s;
}

}  // namespace afd
