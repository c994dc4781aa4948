#pragma once

// The xi-adic box grid: geometric boxes [xi^i, xi^{i+1}) x [xi^j, xi^{j+1})
// intersected with the admissibility region.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bincyc/analytic.hpp"

namespace bincyc {

// Canonical i-th grid line xi^i, always computed through std::pow so box
// edges are bitwise shared between neighbours.
inline double grid_line(int i, const ScaleContext& ctx) {
  return std::pow(ctx.xi, static_cast<double>(i));
}

// Index i with grid_line(i) <= v < grid_line(i+1).
inline int grid_index(double v, const ScaleContext& ctx) {
  if (!(v >= 1.0)) throw std::invalid_argument("grid_index: v must be >= 1");
  int i = static_cast<int>(std::floor(std::log(v) / std::log(ctx.xi)));
  while (grid_line(i, ctx) > v) --i;
  while (grid_line(i + 1, ctx) <= v) ++i;
  return i;
}

inline DyadicBox grid_box(int i, int j, const ScaleContext& ctx, double g) {
  DyadicBox b;
  b.p_lo = grid_line(i, ctx);
  b.p_hi = grid_line(i + 1, ctx);
  b.q_lo = grid_line(j, ctx);
  b.q_hi = grid_line(j + 1, ctx);
  b.admissible = box_admissible(b.p_lo, b.q_lo, ctx, g);
  b.range_class = classify_p_range(b.p_lo, ctx);
  return b;
}

struct BoxGrid {
  double x;
  double gamma;
  std::vector<DyadicBox> boxes;  // admissible boxes, lexicographic in (i, j)
};

// All admissible grid boxes for the scale ctx. Anchors satisfy P^2 <= xi * x
// (from P <= xi Q and P Q <= x) and Q <= x, which bounds the index ranges.
inline BoxGrid dyadic_boxes(const ScaleContext& ctx, const Gamma& g) {
  BoxGrid grid;
  grid.x = ctx.x;
  grid.gamma = g.value;
  const double log_xi = std::log(ctx.xi);
  const int imax = static_cast<int>(std::floor(0.5 * std::log(ctx.xi * ctx.x) / log_xi)) + 1;
  const int jmax = static_cast<int>(std::floor(std::log(ctx.x) / log_xi)) + 1;
  for (int i = 0; i <= imax; ++i) {
    const double P = grid_line(i, ctx);
    if (P * P > ctx.xi * ctx.x) break;
    for (int j = 0; j <= jmax; ++j) {
      const double Q = grid_line(j, ctx);
      if (Q > ctx.x) break;
      if (!box_admissible(P, Q, ctx, g.value)) continue;
      grid.boxes.push_back(grid_box(i, j, ctx, g.value));
    }
  }
  return grid;
}

}  // namespace bincyc
