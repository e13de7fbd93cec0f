#pragma once

// Least-squares geometric fits on projected contour chains and the
// concentricity / parallelism verdicts built from them.

#include "kcontour/contour.hpp"
#include "kcontour/geometry.hpp"

#include <span>
#include <vector>

namespace kcontour {

struct CircleFit {
    Vec2 center;
    double radius = 0.0;
    double rms_residual = 0.0; // rms of geometric point-to-circle distances
};

struct LineFit {
    Vec2 direction;            // unit; first nonzero component positive
    double offset = 0.0;       // signed distance of the line from the origin
    double rms_residual = 0.0;
};

/// Algebraic (Kasa) circle fit: linear least squares on
/// x^2 + y^2 = c0 x + c1 y + c2, residual reported geometrically.
CircleFit fit_circle(std::span<const Vec2> points);

/// Total-least-squares line: principal direction of the centered point set.
LineFit fit_line(std::span<const Vec2> points);

struct ContourFitRecord {
    int level_index = 0;
    int chain_index = 0;
    std::size_t n_points = 0;
    bool fitted = false;       // chains shorter than 8 vertices are skipped
    double residual = 0.0;
    Vec2 center_or_direction;
    double radius_or_offset = 0.0;
};

struct SymmetryVerdict {
    bool holds = false;
    Vec2 common_center;        // concentricity
    Vec2 common_direction;     // parallelism
    double spread = 0.0;       // worst-case center deviation / pairwise angle
    std::vector<ContourFitRecord> per_contour;
};

/// Fits a circle per projected chain; holds iff every fitted chain has
/// rms_residual <= tol * radius and all centers lie within tol * min(radius)
/// of their joint mean.
SymmetryVerdict concentricity_verdict(const ContourSet& cs, double tol = 1e-2);

/// Fits a line per projected chain; holds iff residuals <= tol * chain extent
/// and all pairwise direction angles <= tol radians.
SymmetryVerdict parallelism_verdict(const ContourSet& cs, double tol = 1e-2);

} // namespace kcontour
