#pragma once

// Surface charts and the classical apparatus: fundamental forms, unit normal,
// area element, Gaussian and mean curvature, plus the specialized direct
// curvature formula for polar graphs (r cos t, r sin t, F(r, t)).

#include "kcontour/geometry.hpp"
#include "kcontour/jet.hpp"

#include <variant>

namespace kcontour {

struct Rect {
    double u_min = 0.0, u_max = 1.0;
    double v_min = 0.0, v_max = 1.0;

    bool contains(double u, double v) const {
        return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
    }
};

/// Graph over the xy-plane in polar parameters: (r cos t, r sin t, F(r, t)).
struct PolarGraph {
    ScalarField height;
};

/// Graph over the xy-plane in Cartesian parameters: (x, y, F(x, y)).
struct CartesianGraph {
    ScalarField height;
};

/// Generic immersion (u, v) -> R^3.
struct Immersion {
    ScalarField x, y, z;
};

struct SurfacePatch {
    std::variant<PolarGraph, CartesianGraph, Immersion> chart;
    Rect domain;
};

struct FundForms {
    double E = 0, F = 0, G = 0; // first fundamental form
    double L = 0, M = 0, N = 0; // second fundamental form
    Vec3 normal;                // unit normal; positive z for graph charts
    double delta = 0;           // sqrt(EG - F^2)
    double K = 0;               // Gaussian curvature
    double H = 0;               // mean curvature
};

Vec3 position(const SurfacePatch& s, double u, double v);
FundForms fundamental_forms(const SurfacePatch& s, double u, double v);
double gaussian_curvature(const SurfacePatch& s, double u, double v);
double mean_curvature(const SurfacePatch& s, double u, double v);
double area_element(const SurfacePatch& s, double u, double v);
Vec3 normal(const SurfacePatch& s, double u, double v);

/// Direct curvature of a polar graph:
///   K = { r^2 F_rr (r F_r + F_tt) - (F_t - r F_rt)^2 } / Delta^4,
///   Delta = sqrt(r^2 + r^2 F_r^2 + F_t^2).
/// Independent of the fundamental-forms pipeline; the two must agree.
double polar_graph_K(const ScalarField& F, double r, double theta);

/// K of a polar graph from precomputed partials (shared with the classifier,
/// which may supply finite-difference partials of a tabulated field).
double polar_graph_K_from_partials(double r, double Fr, double Ft, double Frr, double Frt,
                                   double Ftt);

} // namespace kcontour
