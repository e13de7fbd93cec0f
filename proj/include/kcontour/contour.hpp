#pragma once

// Sampling of the Gaussian-curvature field on a parameter grid, marching
// squares level-set extraction, and orthogonal projection of the contours to
// the chart's base plane.

#include "kcontour/geometry.hpp"
#include "kcontour/surface.hpp"

#include <cstdint>
#include <vector>

namespace kcontour {

struct ScalarGrid {
    int nu = 0, nv = 0;           // node counts along u and v
    Rect extent;                  // node (i, j) sits at (u_at(i), v_at(j))
    std::vector<double> values;   // row-major, u outer: idx = i * nv + j
    std::vector<std::uint8_t> mask; // 1 where the value is valid

    double u_at(int i) const {
        return extent.u_min + (extent.u_max - extent.u_min) * i / (nu - 1);
    }
    double v_at(int j) const {
        return extent.v_min + (extent.v_max - extent.v_min) * j / (nv - 1);
    }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * nv + j; }
    bool valid(int i, int j) const { return mask[idx(i, j)] != 0; }
};

using Polyline2 = std::vector<Vec2>;

struct ContourSet {
    std::vector<double> levels;
    // chains[k] holds the parameter-space polylines of levels[k];
    // projected[k] the same chains mapped through position and the base-plane
    // projection (same chain and vertex counts).
    std::vector<std::vector<Polyline2>> chains;
    std::vector<std::vector<Polyline2>> projected;
};

/// K at each grid node; nodes where evaluation fails (degenerate metric or
/// domain error) are masked out rather than reported as errors.
ScalarGrid sample_K_grid(const SurfacePatch& s, int nu, int nv);

/// Marching squares with linear edge interpolation. Saddle cells are resolved
/// by the cell-average rule; chains are emitted in deterministic scan order.
/// A level outside the sampled range yields an empty chain list, not an error.
ContourSet extract_contours(const ScalarGrid& g, const std::vector<double>& levels);

/// Fill in the projected chains: each parameter vertex is mapped through
/// position(s, .) and the out-of-plane (z) coordinate is dropped.
void project_contours(const SurfacePatch& s, ContourSet& cs);

/// Evenly spaced quantiles of the valid sampled values: q/(count+1) for
/// q = 1..count. Levels equal to the sampled extremes are dropped.
std::vector<double> quantile_levels(const ScalarGrid& g, int count);

} // namespace kcontour
