#include "afd/poga.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "afd/errors.hpp"

namespace afd {
namespace {

constexpr double kTieTolerance = 1e-12;
// Below this r^2 the Pythagorean shortcut loses too many digits.
constexpr double kExplicitThreshold = 1e-4;
constexpr int kMaxEscalationDepth = 8;

Complex horner(std::span<const Complex> c, Complex z) {
  Complex acc{};
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

// sqrt(1-|a|^2) / sqrt(1-|a|^{2(N+1)}): coefficient scale of the truncated unit atom.
double base_scale(Complex a, int order) {
  const double x = std::norm(a);
  if (x == 0.0) return 1.0;
  return std::sqrt((1.0 - x) / -std::expm1((order + 1) * std::log(x)));
}

CVector unit_factor(const AtomSpec& spec, int order) {
  const FourierCoeffs1D f = atom_coeffs(spec, order);
  CVector v(f.values().begin(), f.values().end());
  const double n = std::sqrt(norm2(v));
  for (auto& c : v) c /= n;
  return v;
}

struct Scored {
  SelectionOutcome outcome;
  GridPoint pa;
  GridPoint pb;
  bool valid = false;
};

class Selector {
 public:
  Selector(std::span<const Complex> g, const OrthoFrame& frame, const Dictionary& dict)
      : g_(g), frame_(frame), dict_(dict) {
    vectors_.push_back(&g_copy_);
    g_copy_.assign(g.begin(), g.end());
    for (std::size_t k = 0; k < frame.size(); ++k) vectors_.push_back(&frame.basis(k));
    rows_ = dict.dot_rows(vectors_);
  }

  // Scores every pair (pa[i], pb[j]) in a-major order; pb is ignored for 1-D dictionaries.
  std::vector<Scored> score(const std::vector<GridPoint>& pa, const std::vector<GridPoint>& pb) const {
    const std::vector<GridPoint> single{GridPoint{}};
    const std::vector<GridPoint>& bs = dict_.is_product() ? pb : single;
    std::vector<Scored> out(pa.size() * bs.size());
    parallel_for(bs.size(), [&](std::size_t ib) {
      const DotRow row = rows_(bs[ib].z());
      CVector vals(vectors_.size());
      for (std::size_t ia = 0; ia < pa.size(); ++ia) {
        row(pa[ia].z(), vals);
        Scored& s = out[ia * bs.size() + ib];
        s.pa = pa[ia];
        s.pb = bs[ib];
        s.outcome.atom = dict_.base_atom(pa[ia].z(), bs[ib].z());
        double proj = 0.0;
        for (std::size_t k = 1; k < vals.size(); ++k) proj += std::norm(vals[k]);
        const double r2 = 1.0 - proj;
        if (r2 < kExplicitThreshold) {
          s.outcome = explicit_outcome(s.outcome.atom);
        } else {
          s.outcome.r = std::sqrt(r2);
          s.outcome.correlation = std::abs(vals[0]);
          s.outcome.gain = s.outcome.correlation / s.outcome.r;
        }
        s.valid = !s.outcome.span_degenerate && std::isfinite(s.outcome.gain);
      }
    });
    return out;
  }

  // Evaluates an atom exactly, escalating its order while it lies in the span.
  SelectionOutcome explicit_outcome(const DictAtom& atom) const {
    SelectionOutcome o = candidate_gain(g_, dict_.atom(atom), frame_);
    o.atom = atom;
    if (!o.span_degenerate) return o;
    return escalate(atom, 1).value_or(o);
  }

 private:
  std::optional<SelectionOutcome> escalate(const DictAtom& atom, int depth) const {
    std::optional<SelectionOutcome> best;
    std::vector<DictAtom> degenerate;
    for (const DictAtom& e : dict_.escalations(atom)) {
      SelectionOutcome o = candidate_gain(g_, dict_.atom(e), frame_);
      o.atom = e;
      if (o.span_degenerate) {
        degenerate.push_back(e);
      } else if (!best || o.gain > best->gain) {
        best = o;
      }
    }
    if (best || depth >= kMaxEscalationDepth) return best;
    for (const DictAtom& e : degenerate) {
      auto o = escalate(e, depth + 1);
      if (o && (!best || o->gain > best->gain)) best = o;
    }
    return best;
  }

  std::span<const Complex> g_;
  CVector g_copy_;
  const OrthoFrame& frame_;
  const Dictionary& dict_;
  std::vector<const CVector*> vectors_;
  std::function<DotRow(Complex)> rows_;
};

std::vector<GridPoint> b_points(const Dictionary& dict, const std::vector<GridPoint>& points) {
  return dict.is_product() ? points : std::vector<GridPoint>{GridPoint{}};
}

}  // namespace

std::string describe(const DictAtom& atom) {
  char buf[160];
  if (atom.right) {
    std::snprintf(buf, sizeof buf, "(%.6g%+.6gi; %d) x (%.6g%+.6gi; %d)", atom.left.a.real(), atom.left.a.imag(),
                  atom.left.order, atom.right->a.real(), atom.right->a.imag(), atom.right->order);
  } else {
    std::snprintf(buf, sizeof buf, "(%.6g%+.6gi; %d)", atom.left.a.real(), atom.left.a.imag(), atom.left.order);
  }
  return buf;
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw DimensionError("vector lengths differ");
  Complex s{};
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
  return s;
}

double norm2(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& c : x) s += std::norm(c);
  return s;
}

OrthoFrame::Projection OrthoFrame::project_residual(std::span<const Complex> x) const {
  if (x.size() != dimension_) throw DimensionError("vector length does not match the frame");
  Projection p{CVector(x.begin(), x.end()), 0.0};
  CVector c(basis_.size());
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < basis_.size(); ++k) c[k] = dot(p.residual, basis_[k]);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      for (std::size_t i = 0; i < dimension_; ++i) p.residual[i] -= c[k] * basis_[k][i];
    }
  }
  p.r = std::sqrt(norm2(p.residual));
  return p;
}

const CVector& OrthoFrame::extend(std::span<const Complex> x, const DictAtom& source) {
  Projection p = project_residual(x);
  if (p.r < kSpanEpsilon) throw DegenerateInputError("atom " + describe(source) + " lies in the span of the frame");
  for (auto& c : p.residual) c /= p.r;

  double drift = 0.0;
  for (const auto& b : basis_) drift = std::max(drift, std::abs(dot(p.residual, b)));
  if (drift > kFrameTolerance) {
    for (const auto& b : basis_) {
      const Complex c = dot(p.residual, b);
      for (std::size_t i = 0; i < dimension_; ++i) p.residual[i] -= c * b[i];
    }
    const double n = std::sqrt(norm2(p.residual));
    for (auto& c : p.residual) c /= n;
  }
  basis_.push_back(std::move(p.residual));
  sources_.push_back(source);
  return basis_.back();
}

double OrthoFrame::orthonormality_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t j = i; j < basis_.size(); ++j) {
      worst = std::max(worst, std::abs(dot(basis_[i], basis_[j]) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

void WeakParam::validate() const {
  if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in (0, 1]");
}

SelectionOutcome candidate_gain(std::span<const Complex> g, std::span<const Complex> atom, const OrthoFrame& frame) {
  const OrthoFrame::Projection p = frame.project_residual(atom);
  SelectionOutcome o;
  o.r = p.r;
  o.correlation = std::abs(dot(g, atom));
  if (p.r < kSpanEpsilon) {
    o.span_degenerate = true;
    return o;
  }
  o.gain = o.correlation / p.r;
  return o;
}

DictAtom Dictionary::base_atom(Complex a, Complex b) const {
  DictAtom atom{AtomSpec{a, 1}, std::nullopt};
  if (is_product()) atom.right = AtomSpec{b, 1};
  return atom;
}

// ---------------------------------------------------------------------------
// dictionaries

SzegoDictionary1D::SzegoDictionary1D(int order) : order_(order) {
  if (order < 0) throw ConfigError("truncation order must be non-negative");
}

CVector SzegoDictionary1D::atom(const DictAtom& spec) const {
  if (spec.right) throw DimensionError("tensor atom given to a 1-D dictionary");
  return unit_factor(spec.left, order_);
}

std::vector<DictAtom> SzegoDictionary1D::escalations(const DictAtom& spec) const {
  const AtomSpec next{spec.left.a, spec.left.order + 1};
  if (next.a == Complex{} && next.order - 1 > order_) return {};
  return {DictAtom{next, std::nullopt}};
}

std::function<DotRow(Complex)> SzegoDictionary1D::dot_rows(const std::vector<const CVector*>& vectors) const {
  const int order = order_;
  return [vectors, order](Complex) -> DotRow {
    return [vectors, order](Complex a, std::span<Complex> out) {
      const double s = base_scale(a, order);
      for (std::size_t i = 0; i < vectors.size(); ++i) out[i] = s * horner(*vectors[i], a);
    };
  };
}

ProductSzegoDictionary2D::ProductSzegoDictionary2D(int order) : order_(order) {
  if (order < 0) throw ConfigError("truncation order must be non-negative");
}

CVector ProductSzegoDictionary2D::atom(const DictAtom& spec) const {
  if (!spec.right) throw DimensionError("1-D atom given to a product dictionary");
  const CVector u = unit_factor(spec.left, order_);
  const CVector v = unit_factor(*spec.right, order_);
  CVector out(dimension());
  for (std::size_t k = 0; k < u.size(); ++k)
    for (std::size_t l = 0; l < v.size(); ++l) out[k * v.size() + l] = u[k] * v[l];
  return out;
}

std::vector<DictAtom> ProductSzegoDictionary2D::escalations(const DictAtom& spec) const {
  std::vector<DictAtom> out;
  auto feasible = [this](const AtomSpec& s) { return !(s.a == Complex{} && s.order - 1 > order_); };
  const AtomSpec left{spec.left.a, spec.left.order + 1};
  const AtomSpec right{spec.right->a, spec.right->order + 1};
  if (feasible(left)) out.push_back(DictAtom{left, spec.right});
  if (feasible(right)) out.push_back(DictAtom{spec.left, right});
  return out;
}

std::function<DotRow(Complex)> ProductSzegoDictionary2D::dot_rows(const std::vector<const CVector*>& vectors) const {
  const int order = order_;
  return [vectors, order](Complex b) -> DotRow {
    const std::size_t side = static_cast<std::size_t>(order) + 1;
    // rows[i][p] = sum_q h_i[p, q] b^q
    std::vector<CVector> rows(vectors.size(), CVector(side));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const std::span<const Complex> h(*vectors[i]);
      for (std::size_t p = 0; p < side; ++p) rows[i][p] = horner(h.subspan(p * side, side), b);
    }
    const double sb = base_scale(b, order);
    return [rows = std::move(rows), sb, order](Complex a, std::span<Complex> out) {
      const double s = sb * base_scale(a, order);
      for (std::size_t i = 0; i < rows.size(); ++i) out[i] = s * horner(rows[i], a);
    };
  };
}

// ---------------------------------------------------------------------------
// selection

SelectionOutcome poga_select(std::span<const Complex> g, const OrthoFrame& frame, const Dictionary& dict,
                             WeakParam weak, const GridSpec& grid, SelectionStats* stats) {
  weak.validate();
  grid.validate();
  if (g.size() != dict.dimension() || frame.dimension() != dict.dimension()) {
    throw DimensionError("signal, frame and dictionary dimensions differ");
  }
  if (norm2(g) == 0.0) throw DegenerateInputError("selection on a zero remainder");

  const Selector selector(g, frame, dict);
  const std::vector<GridPoint> points = coarse_points(grid);
  const std::vector<Scored> coarse = selector.score(points, b_points(dict, points));

  SelectionStats local;
  local.evaluations = coarse.size();
  for (const auto& s : coarse) {
    if (!s.valid) continue;
    local.sup_gain = std::max(local.sup_gain, s.outcome.gain);
    local.sup_r = std::max(local.sup_r, s.outcome.r);
  }

  const Scored* best = nullptr;
  if (weak.rho < 1.0) {
    const double floor = weak.rho * local.sup_gain;
    for (const auto& s : coarse) {
      if (!s.valid || s.outcome.gain < floor) continue;
      if (!best || s.outcome.r < best->outcome.r) best = &s;
    }
  } else {
    for (const auto& s : coarse) {
      if (!s.valid) continue;
      if (!best) {
        best = &s;
        continue;
      }
      const double bg = best->outcome.gain;
      if (s.outcome.gain > bg * (1.0 + kTieTolerance) ||
          (s.outcome.gain >= bg * (1.0 - kTieTolerance) && s.outcome.r < best->outcome.r)) {
        best = &s;
      }
    }
  }
  if (!best) throw DegenerateInputError("no admissible dictionary candidate on the grid");

  Scored current = *best;
  if (weak.rho == 1.0) {
    for (int level = 1; level <= grid.refine_levels; ++level) {
      const std::vector<GridPoint> sa = refine_stencil(current.pa, level, grid);
      const std::vector<GridPoint> sb =
          dict.is_product() ? refine_stencil(current.pb, level, grid) : std::vector<GridPoint>{GridPoint{}};
      const std::vector<Scored> local_scores = selector.score(sa, sb);
      local.evaluations += local_scores.size();
      Scored next = current;
      for (const auto& s : local_scores) {
        if (s.valid && s.outcome.gain > next.outcome.gain) next = s;
      }
      current = next;
    }
  }
  if (stats) *stats = local;
  return current.outcome;
}

DictAtom oga_select(std::span<const Complex> g, const Dictionary& dict, const GridSpec& grid) {
  grid.validate();
  if (g.size() != dict.dimension()) throw DimensionError("signal and dictionary dimensions differ");
  if (norm2(g) == 0.0) throw DegenerateInputError("selection on a zero remainder");
  const CVector gv(g.begin(), g.end());
  const auto rows = dict.dot_rows({&gv});

  struct Best {
    GridPoint pa, pb;
    double value = -1.0;
  };
  auto scan = [&](const std::vector<GridPoint>& pa, const std::vector<GridPoint>& pb, Best best) {
    std::vector<double> values(pa.size() * pb.size());
    parallel_for(pb.size(), [&](std::size_t ib) {
      const DotRow row = rows(pb[ib].z());
      Complex v;
      for (std::size_t ia = 0; ia < pa.size(); ++ia) {
        row(pa[ia].z(), std::span<Complex>(&v, 1));
        values[ia * pb.size() + ib] = std::abs(v);
      }
    });
    for (std::size_t ia = 0; ia < pa.size(); ++ia) {
      for (std::size_t ib = 0; ib < pb.size(); ++ib) {
        if (values[ia * pb.size() + ib] > best.value) best = Best{pa[ia], pb[ib], values[ia * pb.size() + ib]};
      }
    }
    return best;
  };

  const std::vector<GridPoint> points = coarse_points(grid);
  Best best = scan(points, b_points(dict, points), Best{});
  for (int level = 1; level <= grid.refine_levels; ++level) {
    const std::vector<GridPoint> sa = refine_stencil(best.pa, level, grid);
    const std::vector<GridPoint> sb =
        dict.is_product() ? refine_stencil(best.pb, level, grid) : std::vector<GridPoint>{GridPoint{}};
    best = scan(sa, sb, best);
  }
  return dict.base_atom(best.pa.z(), best.pb.z());
}

// ---------------------------------------------------------------------------
// decomposition

double PogaRecord::ledger_discrepancy() const {
  double extracted = 0.0;
  double worst = 0.0;
  for (const auto& s : steps) {
    extracted += std::norm(s.coefficient);
    worst = std::max(worst, std::abs(initial_energy - extracted - s.residual_energy));
  }
  return worst;
}

PogaRecord poga_decompose(std::span<const Complex> f, int n_terms, const Dictionary& dict, WeakParam weak,
                          const GridSpec& grid, const std::vector<DictAtom>* synthesis, double threshold) {
  if (n_terms < 1) throw ConfigError("number of terms must be at least 1");
  weak.validate();
  if (f.size() != dict.dimension()) throw DimensionError("signal and dictionary dimensions differ");

  PogaRecord record;
  record.product = dict.is_product();
  record.order = dict.order();
  record.rho = weak.rho;
  record.initial_energy = norm2(f);
  if (record.initial_energy == 0.0) throw DegenerateInputError("decomposition of the zero signal");

  std::vector<CVector> synthesis_atoms;
  if (synthesis) {
    for (const auto& s : *synthesis) synthesis_atoms.push_back(dict.atom(s));
  }

  CVector g(f.begin(), f.end());
  OrthoFrame frame(dict.dimension());
  double running = 0.0;
  for (int step = 0; step < n_terms; ++step) {
    if (norm2(g) <= threshold * record.initial_energy) break;
    SelectionStats stats;
    const SelectionOutcome sel = poga_select(g, frame, dict, weak, grid, &stats);

    double r_sup = stats.sup_r;
    if (synthesis) {
      r_sup = 0.0;
      for (const auto& x : synthesis_atoms) r_sup = std::max(r_sup, frame.project_residual(x).r);
    }
    running = std::max(running, r_sup);

    const CVector& b = frame.extend(dict.atom(sel.atom), sel.atom);
    const Complex c = dot(g, b);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= c * b[i];

    record.steps.push_back(PogaStep{sel.atom, c, norm2(g), sel.r, sel.gain, stats.sup_gain, r_sup, running});
    for (const double radius : {std::abs(sel.atom.left.a), sel.atom.right ? std::abs(sel.atom.right->a) : 0.0}) {
      const std::string w = truncation_warning(radius, dict.order());
      if (!w.empty() && std::find(record.warnings.begin(), record.warnings.end(), w) == record.warnings.end()) {
        record.warnings.push_back(w);
      }
    }
  }
  return record;
}

CVector reconstruct_poga(const PogaRecord& record, const Dictionary& dict) {
  OrthoFrame frame(dict.dimension());
  CVector out(dict.dimension(), Complex{});
  for (const auto& s : record.steps) {
    const CVector& b = frame.extend(dict.atom(s.atom), s.atom);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s.coefficient * b[i];
  }
  return out;
}

}  // namespace afd
