#include "kcontour/families.hpp"

#include "kcontour/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace kcontour {

XFamilyParams::XFamilyParams(double m, double c, double theta_min, double theta_max)
    : m(m), c(c), theta_min(theta_min), theta_max(theta_max) {
    if (m == 0.0 || m == 1.0)
        throw std::invalid_argument("x family: m = 0 or 1 gives a plane; use plane_patch");
    if (c == 0.0) throw std::invalid_argument("x family: c must be non-zero");
    if (!(theta_min < theta_max) || !std::isfinite(theta_min) || !std::isfinite(theta_max))
        throw std::invalid_argument("x family: theta span must be a finite interval");
}

PFamilyParams::PFamilyParams(double k, double c) : k(k), c(c) {
    if (k == 0.0) throw std::invalid_argument("p family: k must be non-zero");
    if (c == 0.0) throw std::invalid_argument("p family: c must be non-zero");
}

SurfacePatch x_family_patch(const XFamilyParams& p, double r_min, double r_max) {
    if (!(0.0 < r_min && r_min < r_max))
        throw std::invalid_argument("x family: need 0 < r_min < r_max");
    const double m = p.m, c = p.c;
    ScalarField F = [m, c](const Jet2& r, const Jet2& t) { return c * pow(r, m) * cos(m * t); };
    return SurfacePatch{PolarGraph{std::move(F)}, Rect{r_min, r_max, p.theta_min, p.theta_max}};
}

double x_family_K(const XFamilyParams& p, double r) {
    const double m = p.m, c = p.c;
    if (r < 0.0 || (r == 0.0 && 2.0 * m - 4.0 < 0.0))
        throw DomainError("x_family_K: r outside domain");
    const double cm2 = c * c * m * m;
    const double den = 1.0 + cm2 * std::pow(r, 2.0 * m - 2.0);
    return -cm2 * (m - 1.0) * (m - 1.0) * std::pow(r, 2.0 * m - 4.0) / (den * den);
}

double x_family_H(const XFamilyParams& p, double r, double theta) {
    const double m = p.m, c = p.c;
    if (r <= 0.0) throw DomainError("x_family_H: r must be positive");
    const double den = 1.0 + c * c * m * m * std::pow(r, 2.0 * m - 2.0);
    return -c * c * c * m * m * m * (m - 1.0) * std::pow(r, 3.0 * m - 4.0) *
           std::cos(m * theta) / (2.0 * std::pow(den, 1.5));
}

Vec3 x_family_normal(const XFamilyParams& p, double r, double theta) {
    const double m = p.m, c = p.c;
    if (r <= 0.0) throw DomainError("x_family_normal: r must be positive");
    const double rm = std::pow(r, m);
    const double den = r * std::sqrt(1.0 + c * c * m * m * std::pow(r, 2.0 * m - 2.0));
    return {-c * m * rm * std::cos((m - 1.0) * theta) / den,
            c * m * rm * std::sin((m - 1.0) * theta) / den, r / den};
}

SurfacePatch p_family_patch(const PFamilyParams& p, Rect domain) {
    const double k = p.k, c = p.c;
    ScalarField F = [k, c](const Jet2& x, const Jet2& y) { return c * exp(k * x) * cos(k * y); };
    return SurfacePatch{CartesianGraph{std::move(F)}, domain};
}

double p_family_K(const PFamilyParams& p, double x) {
    const double k = p.k, c = p.c;
    const double e2 = std::exp(2.0 * k * x);
    const double den = 1.0 + c * c * k * k * e2;
    return -c * c * k * k * k * k * e2 / (den * den);
}

double p_family_H(const PFamilyParams& p, double x, double y) {
    const double k = p.k, c = p.c;
    const double den = 1.0 + c * c * k * k * std::exp(2.0 * k * x);
    return -c * c * c * k * k * k * k * std::exp(3.0 * k * x) * std::cos(k * y) /
           (2.0 * std::pow(den, 1.5));
}

Vec3 p_family_normal(const PFamilyParams& p, double x, double y) {
    const double k = p.k, c = p.c;
    const double e = std::exp(k * x);
    const double den = std::sqrt(1.0 + c * c * k * k * e * e);
    return {-c * k * e * std::cos(k * y) / den, c * k * e * std::sin(k * y) / den, 1.0 / den};
}

SurfacePatch helicoid_patch(const HelicoidParams& p, double r_min, double r_max,
                            double theta_min, double theta_max) {
    if (!(0.0 < r_min && r_min < r_max))
        throw std::invalid_argument("helicoid: need 0 < r_min < r_max");
    const double a = p.a;
    auto profile = p.profile;
    ScalarField F = [a, profile](const Jet2& r, const Jet2& t) {
        Jet2 z = a * t;
        if (profile) z = z + profile(r);
        return z;
    };
    return SurfacePatch{PolarGraph{std::move(F)}, Rect{r_min, r_max, theta_min, theta_max}};
}

SurfacePatch plane_patch(double r_min, double r_max) {
    ScalarField F = [](const Jet2&, const Jet2&) { return Jet2::constant(0.0); };
    return SurfacePatch{PolarGraph{std::move(F)},
                        Rect{r_min, r_max, 0.0, 2.0 * std::numbers::pi}};
}

} // namespace kcontour
