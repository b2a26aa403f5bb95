#include "afd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "afd/errors.hpp"

namespace afd {
namespace {

double normalize_angle(double theta) {
  const double two_pi = 2.0 * kPi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta >= two_pi) theta = 0.0;
  return theta;
}

// NaN never wins.
double sanitize(double v) { return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v; }

std::vector<double> evaluate_points(const Objective& objective, const std::vector<GridPoint>& points) {
  std::vector<double> values(points.size());
  parallel_for(points.size(), [&](std::size_t i) { values[i] = sanitize(objective(points[i].z())); });
  return values;
}

}  // namespace

void GridSpec::validate() const {
  if (radial_count < 1) throw ConfigError("grid radial count must be positive");
  if (angular_count < 1) throw ConfigError("grid angular count must be positive");
  if (refine_levels < 0) throw ConfigError("grid refinement levels must be non-negative");
  if (!(max_radius > 0.0 && max_radius < 1.0)) throw ConfigError("grid max radius must lie in (0, 1)");
}

Complex GridPoint::z() const noexcept { return std::polar(radius, angle); }

bool precedes(const GridPoint& a, const GridPoint& b) noexcept {
  if (a.radius != b.radius) return a.radius < b.radius;
  return a.angle < b.angle;
}

std::vector<double> grid_radii(const GridSpec& grid) {
  grid.validate();
  std::vector<double> radii(static_cast<std::size_t>(grid.radial_count));
  for (int j = 1; j <= grid.radial_count; ++j) {
    radii[static_cast<std::size_t>(j - 1)] =
        grid.max_radius * std::sin(kPi * static_cast<double>(j) / (2.0 * grid.radial_count));
  }
  radii.back() = grid.max_radius;
  return radii;
}

std::vector<GridPoint> coarse_points(const GridSpec& grid) {
  const std::vector<double> radii = grid_radii(grid);
  const double dtheta = 2.0 * kPi / grid.angular_count;
  std::vector<GridPoint> points;
  points.reserve(1 + radii.size() * static_cast<std::size_t>(grid.angular_count));
  points.push_back(GridPoint{0.0, 0.0, radii.front(), dtheta, 0.0, 0.0, 0.0});
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double below = j == 0 ? 0.0 : radii[j - 1];
    const double above = j + 1 < radii.size() ? radii[j + 1] : radii[j];
    const double cell = j + 1 < radii.size() ? std::min(above - radii[j], radii[j] - below) : radii[j] - below;
    for (int k = 0; k < grid.angular_count; ++k) {
      points.push_back(GridPoint{radii[j], dtheta * k, cell, dtheta, radii[j], 0.0, static_cast<double>(k)});
    }
  }
  return points;
}

std::vector<GridPoint> refine_stencil(const GridPoint& center, int level, const GridSpec& grid) {
  const double scale = std::ldexp(1.0, -level);
  const double turn = std::round(2.0 * kPi / center.cell_angular);
  std::vector<GridPoint> out;
  auto add = [&](double rs, double ts) {
    ts = std::fmod(ts, turn);
    if (ts < 0.0) ts += turn;
    GridPoint p = center;
    p.radial_steps = rs;
    p.angular_steps = ts;
    p.radius = center.base_radius + center.cell_radial * rs;
    p.angle = normalize_angle(center.cell_angular * ts);
    out.push_back(p);
  };

  if (center.radius == 0.0) {
    add(0.0, 0.0);
    const int count = std::max(1, static_cast<int>(turn));
    for (int k = 0; k < count; ++k) add(scale, k);
  } else {
    for (const double rs : {center.radial_steps - scale, center.radial_steps, center.radial_steps + scale}) {
      const double r = center.base_radius + center.cell_radial * rs;
      if (r <= 0.0 || r > grid.max_radius) continue;
      for (const double ts : {center.angular_steps - scale, center.angular_steps, center.angular_steps + scale}) add(rs, ts);
    }
  }
  std::stable_sort(out.begin(), out.end(), precedes);
  return out;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n / 64 + 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
}

ArgmaxResult grid_argmax(const Objective& objective, const GridSpec& grid, SearchTrace* trace) {
  const std::vector<GridPoint> points = coarse_points(grid);
  if (points.empty()) throw ConfigError("empty search grid");
  const std::vector<double> values = evaluate_points(objective, points);

  ArgmaxResult best{points[0], values[0], points.size()};
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (values[i] > best.value) {
      best.point = points[i];
      best.value = values[i];
    }
  }
  if (trace) {
    trace->points.insert(trace->points.end(), points.begin(), points.end());
    trace->values.insert(trace->values.end(), values.begin(), values.end());
  }

  for (int level = 1; level <= grid.refine_levels; ++level) {
    const std::vector<GridPoint> stencil = refine_stencil(best.point, level, grid);
    const std::vector<double> sv = evaluate_points(objective, stencil);
    best.evaluations += stencil.size();
    GridPoint next = best.point;
    double next_value = best.value;
    for (std::size_t i = 0; i < stencil.size(); ++i) {
      if (sv[i] > next_value) {
        next = stencil[i];
        next_value = sv[i];
      }
    }
    best.point = next;
    best.value = next_value;
    if (trace) {
      trace->points.insert(trace->points.end(), stencil.begin(), stencil.end());
      trace->values.insert(trace->values.end(), sv.begin(), sv.end());
    }
  }
  return best;
}

PairArgmaxResult grid_argmax_pair(const PairObjective& objective, const GridSpec& grid, PairSearchTrace* trace) {
  const std::vector<GridPoint> points = coarse_points(grid);
  if (points.empty()) throw ConfigError("empty search grid");
  const std::size_t n = points.size();

  // values[ib * n + ia]
  std::vector<double> values(n * n);
  parallel_for(n, [&](std::size_t ib) {
    const PairRow row = objective(points[ib].z());
    for (std::size_t ia = 0; ia < n; ++ia) values[ib * n + ia] = sanitize(row(ia, points[ia].z()));
  });

  std::size_t best_a = 0;
  std::size_t best_b = 0;
  double best_value = values[0];
  for (std::size_t ia = 0; ia < n; ++ia) {
    for (std::size_t ib = 0; ib < n; ++ib) {
      if (values[ib * n + ia] > best_value) {
        best_value = values[ib * n + ia];
        best_a = ia;
        best_b = ib;
      }
    }
  }
  if (trace) {
    for (std::size_t ia = 0; ia < n; ++ia) {
      for (std::size_t ib = 0; ib < n; ++ib) {
        trace->a.push_back(points[ia]);
        trace->b.push_back(points[ib]);
        trace->values.push_back(values[ib * n + ia]);
      }
    }
  }

  PairArgmaxResult best{points[best_a], points[best_b], best_value, n * n};
  for (int level = 1; level <= grid.refine_levels; ++level) {
    const std::vector<GridPoint> sa = refine_stencil(best.a, level, grid);
    const std::vector<GridPoint> sb = refine_stencil(best.b, level, grid);
    std::vector<double> sv(sa.size() * sb.size());
    parallel_for(sb.size(), [&](std::size_t ib) {
      const PairRow row = objective(sb[ib].z());
      for (std::size_t ia = 0; ia < sa.size(); ++ia) sv[ib * sa.size() + ia] = sanitize(row(kOffGrid, sa[ia].z()));
    });
    best.evaluations += sv.size();
    PairArgmaxResult next = best;
    for (std::size_t ia = 0; ia < sa.size(); ++ia) {
      for (std::size_t ib = 0; ib < sb.size(); ++ib) {
        const double v = sv[ib * sa.size() + ia];
        if (v > next.value) {
          next.a = sa[ia];
          next.b = sb[ib];
          next.value = v;
        }
        if (trace) {
          trace->a.push_back(sa[ia]);
          trace->b.push_back(sb[ib]);
          trace->values.push_back(v);
        }
      }
    }
    best.a = next.a;
    best.b = next.b;
    best.value = next.value;
  }
  return best;
}

}  // namespace afd
