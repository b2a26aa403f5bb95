#include "afd/afd2d.hpp"

#include <algorithm>
#include <cmath>

#include "afd/errors.hpp"

namespace afd {
namespace {

constexpr double kFlatTolerance = 1e-12;

void add_warning(std::vector<std::string>& warnings, const std::string& w) {
  if (!w.empty() && std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
}

FourierCoeffs1D divide_blaschke(FourierCoeffs1D h, const std::vector<Complex>& zeros) {
  for (const auto& a : zeros) h = divide_mobius(h, a);
  return h;
}

// Row p of a Hardy 2-D array as a 1-D Hardy instance over l.
FourierCoeffs1D row_of(const FourierCoeffs2D& f, int p) {
  CVector v(static_cast<std::size_t>(f.order()) + 1);
  for (int q = 0; q <= f.order(); ++q) v[static_cast<std::size_t>(q)] = f(p, q);
  return FourierCoeffs1D::from_hardy(std::move(v));
}

FourierCoeffs1D column_of(const FourierCoeffs2D& f, int q) {
  CVector v(static_cast<std::size_t>(f.order()) + 1);
  for (int p = 0; p <= f.order(); ++p) v[static_cast<std::size_t>(p)] = f(p, q);
  return FourierCoeffs1D::from_hardy(std::move(v));
}

// sum_q f(p, q) conj(b[q]) for each p: the partial inner product over w.
FourierCoeffs1D contract_right(const FourierCoeffs2D& f, const FourierCoeffs1D& b) {
  CVector out(static_cast<std::size_t>(f.order()) + 1, Complex{});
  for (int p = 0; p <= f.order(); ++p) {
    Complex s{};
    for (int q = 0; q <= f.order(); ++q) s += f(p, q) * std::conj(b[q]);
    out[static_cast<std::size_t>(p)] = s;
  }
  return FourierCoeffs1D::from_hardy(std::move(out));
}

FourierCoeffs1D contract_left(const FourierCoeffs2D& f, const FourierCoeffs1D& a) {
  CVector out(static_cast<std::size_t>(f.order()) + 1, Complex{});
  for (int p = 0; p <= f.order(); ++p) {
    const Complex w = std::conj(a[p]);
    for (int q = 0; q <= f.order(); ++q) out[static_cast<std::size_t>(q)] += f(p, q) * w;
  }
  return FourierCoeffs1D::from_hardy(std::move(out));
}

Complex horner(std::span<const Complex> c, Complex z) {
  Complex acc{};
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

// 1 / truncated norm of e_a at order N.
double truncated_scale(Complex a, int order) {
  return 1.0 / std::sqrt(1.0 - std::pow(std::norm(a), order + 1));
}

void require_hardy(const FourierCoeffs2D& f, const char* who) {
  if (!f.is_hardy()) throw DomainError(std::string(who) + " expects a Hardy signal");
}

}  // namespace

void PairSequence::validate() const {
  for (const auto& [a, b] : pairs) {
    if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0)) throw DomainError("parameter pair outside the bidisc");
  }
}

TMParamSequence PairSequence::left() const {
  TMParamSequence s;
  for (const auto& p : pairs) s.params.push_back(p.first);
  return s;
}

TMParamSequence PairSequence::right() const {
  TMParamSequence s;
  for (const auto& p : pairs) s.params.push_back(p.second);
  return s;
}

Complex product_coeff(const FourierCoeffs2D& f, const FourierCoeffs1D& bk, const FourierCoeffs1D& bl) {
  if (f.order() != bk.order() || f.order() != bl.order()) {
    throw DimensionError("product_coeff: truncation orders differ");
  }
  Complex s{};
  for (int p = 0; p <= f.order(); ++p) {
    Complex row{};
    for (int q = 0; q <= f.order(); ++q) row += f(p, q) * std::conj(bl[q]);
    s += row * std::conj(bk[p]);
  }
  return s;
}

std::vector<std::pair<int, int>> dn_indices(int n) {
  std::vector<std::pair<int, int>> idx;
  idx.reserve(static_cast<std::size_t>(2 * n - 1));
  for (int l = 1; l <= n; ++l) idx.emplace_back(n, l);
  for (int k = 1; k < n; ++k) idx.emplace_back(k, n);
  return idx;
}

double dn_energy(const FourierCoeffs2D& f, const PairSequence& history, Complex a, Complex b, int order) {
  PairSequence extended = history;
  extended.pairs.emplace_back(a, b);
  extended.validate();
  const TMBasis left = tm_basis(extended.left(), order);
  const TMBasis right = tm_basis(extended.right(), order);
  const int n = static_cast<int>(extended.pairs.size());
  double e = 0.0;
  for (const auto& [k, l] : dn_indices(n)) {
    e += std::norm(product_coeff(f, left.functions[static_cast<std::size_t>(k - 1)],
                                 right.functions[static_cast<std::size_t>(l - 1)]));
  }
  return e;
}

// ---------------------------------------------------------------------------
// DnObjective

DnObjective::DnObjective(const FourierCoeffs2D& f, const PairSequence& history) : corner_(f.order(), Support::hardy) {
  require_hardy(f, "DnObjective");
  history.validate();
  const int order = f.order();
  const std::vector<Complex> za = history.left().params;
  const std::vector<Complex> zb = history.right().params;
  const TMBasis left = tm_basis(history.left(), order);
  const TMBasis right = tm_basis(history.right(), order);

  for (const auto& bl : right.functions) u_.push_back(divide_blaschke(contract_right(f, bl), za));
  for (const auto& bk : left.functions) v_.push_back(divide_blaschke(contract_left(f, bk), zb));

  // corner: divide every column (over z) by the a-Blaschke product, then every row by the b one.
  FourierCoeffs2D tmp(order, Support::hardy);
  for (int q = 0; q <= order; ++q) {
    const FourierCoeffs1D col = divide_blaschke(column_of(f, q), za);
    for (int p = 0; p <= order; ++p) tmp.at(p, q) = col[p];
  }
  for (int p = 0; p <= order; ++p) {
    const FourierCoeffs1D row = divide_blaschke(row_of(tmp, p), zb);
    for (int q = 0; q <= order; ++q) corner_.at(p, q) = row[q];
  }
}

double DnObjective::left_part(Complex a) const {
  double s = 0.0;
  for (const auto& u : u_) s += std::norm(evaluate(u, a));
  return (1.0 - std::norm(a)) * s;
}

double DnObjective::right_part(Complex b) const {
  double s = 0.0;
  for (const auto& v : v_) s += std::norm(evaluate(v, b));
  return (1.0 - std::norm(b)) * s;
}

CVector DnObjective::corner_row(Complex b) const {
  const int order = corner_.order();
  CVector row(static_cast<std::size_t>(order) + 1);
  for (int p = 0; p <= order; ++p) {
    row[static_cast<std::size_t>(p)] = horner(corner_.values().subspan(static_cast<std::size_t>(p * (order + 1)),
                                                                       static_cast<std::size_t>(order + 1)),
                                              b);
  }
  return row;
}

double DnObjective::corner(Complex a, const CVector& row) const {
  return (1.0 - std::norm(a)) * std::norm(horner(row, a));
}

double DnObjective::operator()(Complex a, Complex b) const {
  return left_part(a) + right_part(b) + (1.0 - std::norm(b)) * corner(a, corner_row(b));
}

PairSelection msp_product_tm(const FourierCoeffs2D& f, const PairSequence& history, const GridSpec& grid,
                             PairSearchTrace* trace) {
  require_hardy(f, "msp_product_tm");
  if (f.energy() == 0.0) throw DegenerateInputError("maximal selection on a zero remainder");
  const DnObjective objective(f, history);
  const std::vector<GridPoint> points = coarse_points(grid);
  std::vector<double> left(points.size());
  parallel_for(points.size(), [&](std::size_t i) { left[i] = objective.left_part(points[i].z()); });

  const PairObjective pair = [&](Complex b) -> PairRow {
    const double right = objective.right_part(b);
    const double wb = 1.0 - std::norm(b);
    CVector row = objective.corner_row(b);
    return [&objective, &left, right, wb, row = std::move(row)](std::size_t ia, Complex a) {
      const double l = ia == kOffGrid ? objective.left_part(a) : left[ia];
      return l + right + wb * objective.corner(a, row);
    };
  };
  const PairArgmaxResult best = grid_argmax_pair(pair, grid, trace);

  PairSelection sel{best.a.z(), best.b.z(), best.value};
  auto spread = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return std::pair{*lo, *hi};
  };
  std::vector<double> along_a(points.size());
  std::vector<double> along_b(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    along_a[i] = objective(points[i].z(), sel.b);
    along_b[i] = objective(sel.a, points[i].z());
  }
  const double scale = std::max(best.value, 1e-300);
  const auto [alo, ahi] = spread(along_a);
  const auto [blo, bhi] = spread(along_b);
  sel.flat_in_a = ahi - alo <= kFlatTolerance * scale;
  sel.flat_in_b = bhi - blo <= kFlatTolerance * scale;
  return sel;
}

PairSequence ProductTMRecord::pairs() const {
  PairSequence s;
  for (const auto& st : steps) s.pairs.emplace_back(st.a, st.b);
  return s;
}

ProductTMRecord afd2d_tm_decompose(const FourierCoeffs2D& f, int n_terms, const GridSpec& grid, double threshold) {
  if (n_terms < 1) throw ConfigError("number of terms must be at least 1");
  require_hardy(f, "afd2d_tm_decompose");
  grid.validate();
  ProductTMRecord record;
  record.order = f.order();
  record.initial_energy = f.energy();
  if (record.initial_energy == 0.0) throw DegenerateInputError("decomposition of the zero signal");

  PairSequence history;
  double residual = record.initial_energy;
  for (int step = 0; step < n_terms; ++step) {
    if (residual <= threshold * record.initial_energy) break;
    const PairSelection sel = msp_product_tm(f, history, grid);
    history.pairs.emplace_back(sel.a, sel.b);
    const int n = static_cast<int>(history.pairs.size());
    const TMBasis left = tm_basis(history.left(), f.order());
    const TMBasis right = tm_basis(history.right(), f.order());

    ProductTMStep st{sel.a, sel.b, {}, 0.0, 0.0, sel.flat_in_a, sel.flat_in_b};
    for (const auto& [k, l] : dn_indices(n)) {
      const Complex c = product_coeff(f, left.functions[static_cast<std::size_t>(k - 1)],
                                      right.functions[static_cast<std::size_t>(l - 1)]);
      st.block.push_back(c);
      st.block_energy += std::norm(c);
    }
    residual -= st.block_energy;
    st.residual_energy = residual;
    record.steps.push_back(std::move(st));
    add_warning(record.warnings, truncation_warning(std::abs(sel.a), f.order()));
    add_warning(record.warnings, truncation_warning(std::abs(sel.b), f.order()));
  }
  return record;
}

FourierCoeffs2D reconstruct_product_tm(const ProductTMRecord& record, int order) {
  const PairSequence pairs = record.pairs();
  const TMBasis left = tm_basis(pairs.left(), order);
  const TMBasis right = tm_basis(pairs.right(), order);
  FourierCoeffs2D out(order, Support::hardy);
  for (std::size_t s = 0; s < record.steps.size(); ++s) {
    const auto idx = dn_indices(static_cast<int>(s) + 1);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto& bk = left.functions[static_cast<std::size_t>(idx[i].first - 1)];
      const auto& bl = right.functions[static_cast<std::size_t>(idx[i].second - 1)];
      const Complex c = record.steps[s].block[i];
      for (int p = 0; p <= order; ++p) {
        const Complex cp = c * bk[p];
        for (int q = 0; q <= order; ++q) out.at(p, q) += cp * bl[q];
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// pure greedy

FourierCoeffs2D pga_atom(Complex a, Complex b, int order) {
  FourierCoeffs2D atom = tensor_atom_coeffs(TensorAtomSpec{AtomSpec{a, 1}, AtomSpec{b, 1}}, order);
  atom *= truncated_scale(a, order) * truncated_scale(b, order);
  return atom;
}

PgaSelection pga_step(const FourierCoeffs2D& g, const GridSpec& grid, PairSearchTrace* trace) {
  require_hardy(g, "pga_step");
  if (g.energy() == 0.0) throw DegenerateInputError("greedy selection on a zero remainder");
  const int order = g.order();
  const PairObjective objective = [&g, order](Complex b) -> PairRow {
    CVector row(static_cast<std::size_t>(order) + 1);
    for (int p = 0; p <= order; ++p) {
      row[static_cast<std::size_t>(p)] =
          horner(g.values().subspan(static_cast<std::size_t>(p * (order + 1)), static_cast<std::size_t>(order + 1)), b);
    }
    const double wb = std::sqrt(1.0 - std::norm(b)) * truncated_scale(b, order);
    return [row = std::move(row), wb, order](std::size_t, Complex a) {
      return wb * std::sqrt(1.0 - std::norm(a)) * truncated_scale(a, order) * std::abs(horner(row, a));
    };
  };
  const PairArgmaxResult best = grid_argmax_pair(objective, grid, trace);
  const Complex a = best.a.z();
  const Complex b = best.b.z();
  return PgaSelection{TensorAtomSpec{AtomSpec{a, 1}, AtomSpec{b, 1}}, inner(g, pga_atom(a, b, order))};
}

PGARecord pga_decompose(const FourierCoeffs2D& f, int n_terms, const GridSpec& grid, double threshold) {
  if (n_terms < 1) throw ConfigError("number of terms must be at least 1");
  require_hardy(f, "pga_decompose");
  grid.validate();
  PGARecord record;
  record.order = f.order();
  record.initial_energy = f.energy();
  if (record.initial_energy == 0.0) throw DegenerateInputError("decomposition of the zero signal");

  FourierCoeffs2D remainder = f;
  for (int step = 0; step < n_terms; ++step) {
    if (remainder.energy() <= threshold * record.initial_energy) break;
    const PgaSelection sel = pga_step(remainder, grid);
    remainder -= sel.coefficient * pga_atom(sel.atom.left.a, sel.atom.right.a, f.order());
    record.steps.push_back(PgaStep{sel.atom, sel.coefficient, remainder.energy()});
    add_warning(record.warnings, truncation_warning(std::abs(sel.atom.left.a), f.order()));
    add_warning(record.warnings, truncation_warning(std::abs(sel.atom.right.a), f.order()));
  }
  return record;
}

FourierCoeffs2D reconstruct_pga(const PGARecord& record, int order) {
  FourierCoeffs2D out(order, Support::hardy);
  for (const auto& s : record.steps) out += s.coefficient * pga_atom(s.atom.left.a, s.atom.right.a, order);
  return out;
}

}  // namespace afd
