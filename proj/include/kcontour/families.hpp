#pragma once

// The concrete surface families and their closed-form curvature data, used as
// independent oracles against the fundamental-forms pipeline:
//   x family: polar graph F = c r^m cos(m t), m not in {0, 1}, c != 0
//   p family: Cartesian graph F = c e^{kx} cos(ky), k != 0, c != 0
//   helicoids: polar graph F = a t + A(r)

#include "kcontour/geometry.hpp"
#include "kcontour/surface.hpp"

#include <functional>
#include <numbers>

namespace kcontour {

struct XFamilyParams {
    double m;
    double c;
    double theta_min = 0.0;
    double theta_max = 2.0 * std::numbers::pi;

    XFamilyParams(double m, double c, double theta_min = 0.0,
                  double theta_max = 2.0 * std::numbers::pi);
};

struct PFamilyParams {
    double k;
    double c;

    PFamilyParams(double k, double c);
};

struct HelicoidParams {
    double a = 0.0;                                  // pitch
    std::function<Jet2(const Jet2&)> profile;        // A(r); empty means A == 0
};

SurfacePatch x_family_patch(const XFamilyParams& p, double r_min = 0.2, double r_max = 2.0);
double x_family_K(const XFamilyParams& p, double r);
double x_family_H(const XFamilyParams& p, double r, double theta);
Vec3 x_family_normal(const XFamilyParams& p, double r, double theta);

SurfacePatch p_family_patch(const PFamilyParams& p,
                            Rect domain = Rect{-1.0, 1.0, -1.0, 1.0});
double p_family_K(const PFamilyParams& p, double x);
double p_family_H(const PFamilyParams& p, double x, double y);
Vec3 p_family_normal(const PFamilyParams& p, double x, double y);

SurfacePatch helicoid_patch(const HelicoidParams& p, double r_min = 0.2, double r_max = 2.0,
                            double theta_min = 0.0,
                            double theta_max = 2.0 * std::numbers::pi);

/// Flat plane as a polar graph F == 0 (degenerate member excluded from the
/// x family by its parameter constraints).
SurfacePatch plane_patch(double r_min = 0.2, double r_max = 2.0);

} // namespace kcontour
