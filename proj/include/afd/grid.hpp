#pragma once

// Deterministic polar search over the open unit disc.
//
// Coarse points are ordered by (radius, angle): the origin first, then each
// ring in increasing angle. Every reduction keeps the first point in that
// order among equal values, so results do not depend on evaluation order or
// thread count. Refinement evaluates a 3x3 polar stencil around the current
// best point, halving the local cell at each level, and moves only on strict
// improvement.

#include <cstddef>
#include <functional>
#include <vector>

#include "afd/types.hpp"

namespace afd {

struct GridSpec {
  int radial_count = 48;
  int angular_count = 96;
  int refine_levels = 2;
  double max_radius = 0.995;

  /// Throws ConfigError unless counts are positive and 0 < max_radius < 1.
  void validate() const;
};

/// A disc parameter in polar form together with the search cell around it.
struct GridPoint {
  double radius = 0.0;
  double angle = 0.0;   // in [0, 2 pi)
  double cell_radial = 0.0;
  double cell_angular = 0.0;
  // radius = base_radius + cell_radial * radial_steps, angle = cell_angular * angular_steps;
  // steps are dyadic, so a site reached along different refinement paths has identical coordinates
  double base_radius = 0.0;
  double radial_steps = 0.0;
  double angular_steps = 0.0;

  Complex z() const noexcept;
};

/// Lexicographic (radius, angle).
bool precedes(const GridPoint& a, const GridPoint& b) noexcept;

/// Radii max_radius * sin(pi j / 2R), j = 1..R, clustered toward the rim.
std::vector<double> grid_radii(const GridSpec& grid);

std::vector<GridPoint> coarse_points(const GridSpec& grid);

/// Stencil for refinement level `level` (1-based) in tie-break order. The
/// center itself is included. Points stay within [0, max_radius].
std::vector<GridPoint> refine_stencil(const GridPoint& center, int level, const GridSpec& grid);

/// Calls body(i) for i in [0, n), possibly from several threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

struct ArgmaxResult {
  GridPoint point;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Every point the search evaluated, in evaluation order, with its value.
struct SearchTrace {
  std::vector<GridPoint> points;
  std::vector<double> values;
};

using Objective = std::function<double(Complex)>;

ArgmaxResult grid_argmax(const Objective& objective, const GridSpec& grid, SearchTrace* trace = nullptr);

/// Objective over pairs (a, b), evaluated row by row. `row(b)` is called once
/// per distinct b and returns a callable of (a_index, a), where a_index is the
/// position of a in coarse_points() or kOffGrid for refinement points.
inline constexpr std::size_t kOffGrid = static_cast<std::size_t>(-1);
using PairRow = std::function<double(std::size_t, Complex)>;
using PairObjective = std::function<PairRow(Complex)>;

struct PairArgmaxResult {
  GridPoint a;
  GridPoint b;
  double value = 0.0;
  std::size_t evaluations = 0;
};

struct PairSearchTrace {
  std::vector<GridPoint> a;
  std::vector<GridPoint> b;
  std::vector<double> values;
};

/// Pairs are ordered lexicographically by (a, b), each in single-point order.
PairArgmaxResult grid_argmax_pair(const PairObjective& objective, const GridSpec& grid,
                                  PairSearchTrace* trace = nullptr);

}  // namespace afd
