#pragma once

// Second-order forward-mode autodiff for scalar fields of two parameters.
// A Jet2 carries the value, both first partials, and the (symmetric) Hessian
// of a quantity with respect to the two chart parameters (u, v).

#include "kcontour/errors.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace kcontour {

struct Jet2 {
    double v = 0.0;   // value
    double du = 0.0;  // d/du
    double dv = 0.0;  // d/dv
    double duu = 0.0; // d2/du2
    double duv = 0.0; // d2/dudv (== d2/dvdu, stored once)
    double dvv = 0.0; // d2/dv2

    static Jet2 constant(double c) { return {c, 0, 0, 0, 0, 0}; }
    static Jet2 var_u(double x) { return {x, 1, 0, 0, 0, 0}; }
    static Jet2 var_v(double y) { return {y, 0, 1, 0, 0, 0}; }
};

// A scalar field is a closed expression over two seeded jets. Building the
// field from jet arithmetic gives exact-to-roundoff derivatives.
using ScalarField = std::function<Jet2(const Jet2&, const Jet2&)>;

// f(g) for a unary primitive with value f0 and derivatives f1, f2 at g.v.
inline Jet2 jet_chain(const Jet2& g, double f0, double f1, double f2) {
    Jet2 o;
    o.v = f0;
    o.du = f1 * g.du;
    o.dv = f1 * g.dv;
    o.duu = f2 * g.du * g.du + f1 * g.duu;
    o.duv = f2 * g.du * g.dv + f1 * g.duv;
    o.dvv = f2 * g.dv * g.dv + f1 * g.dvv;
    return o;
}

// f(a, b) for a binary primitive with first/second partials at (a.v, b.v).
inline Jet2 jet_chain2(const Jet2& a, const Jet2& b, double f0, double fa, double fb,
                       double faa, double fab, double fbb) {
    Jet2 o;
    o.v = f0;
    o.du = fa * a.du + fb * b.du;
    o.dv = fa * a.dv + fb * b.dv;
    o.duu = faa * a.du * a.du + 2.0 * fab * a.du * b.du + fbb * b.du * b.du +
            fa * a.duu + fb * b.duu;
    o.duv = faa * a.du * a.dv + fab * (a.du * b.dv + a.dv * b.du) + fbb * b.du * b.dv +
            fa * a.duv + fb * b.duv;
    o.dvv = faa * a.dv * a.dv + 2.0 * fab * a.dv * b.dv + fbb * b.dv * b.dv +
            fa * a.dvv + fb * b.dvv;
    return o;
}

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.du + b.du, a.dv + b.dv, a.duu + b.duu, a.duv + b.duv, a.dvv + b.dvv};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.du - b.du, a.dv - b.dv, a.duu - b.duu, a.duv - b.duv, a.dvv - b.dvv};
}
inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.du, -a.dv, -a.duu, -a.duv, -a.dvv}; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 o;
    o.v = a.v * b.v;
    o.du = a.du * b.v + a.v * b.du;
    o.dv = a.dv * b.v + a.v * b.dv;
    o.duu = a.duu * b.v + 2.0 * a.du * b.du + a.v * b.duu;
    o.duv = a.duv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.duv;
    o.dvv = a.dvv * b.v + 2.0 * a.dv * b.dv + a.v * b.dvv;
    return o;
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.v == 0.0) throw DomainError("divide: zero denominator");
    const double inv = 1.0 / b.v;
    return jet_chain2(a, b, a.v * inv, inv, -a.v * inv * inv, 0.0, -inv * inv,
                      2.0 * a.v * inv * inv * inv);
}

inline Jet2 operator+(const Jet2& a, double s) { return a + Jet2::constant(s); }
inline Jet2 operator+(double s, const Jet2& a) { return Jet2::constant(s) + a; }
inline Jet2 operator-(const Jet2& a, double s) { return a - Jet2::constant(s); }
inline Jet2 operator-(double s, const Jet2& a) { return Jet2::constant(s) - a; }
inline Jet2 operator*(const Jet2& a, double s) { return {a.v * s, a.du * s, a.dv * s, a.duu * s, a.duv * s, a.dvv * s}; }
inline Jet2 operator*(double s, const Jet2& a) { return a * s; }
inline Jet2 operator/(const Jet2& a, double s) {
    if (s == 0.0) throw DomainError("divide: zero denominator");
    return a * (1.0 / s);
}
inline Jet2 operator/(double s, const Jet2& a) { return Jet2::constant(s) / a; }

inline Jet2 sin(const Jet2& g) { return jet_chain(g, std::sin(g.v), std::cos(g.v), -std::sin(g.v)); }
inline Jet2 cos(const Jet2& g) { return jet_chain(g, std::cos(g.v), -std::sin(g.v), -std::cos(g.v)); }
inline Jet2 exp(const Jet2& g) {
    const double e = std::exp(g.v);
    return jet_chain(g, e, e, e);
}

inline Jet2 log(const Jet2& g) {
    if (g.v <= 0.0) throw DomainError("log: non-positive argument");
    const double inv = 1.0 / g.v;
    return jet_chain(g, std::log(g.v), inv, -inv * inv);
}

inline Jet2 sqrt(const Jet2& g) {
    if (g.v <= 0.0) throw DomainError("sqrt: non-positive argument");
    const double s = std::sqrt(g.v);
    return jet_chain(g, s, 0.5 / s, -0.25 / (s * g.v));
}

// x^p for real p. Negative or zero base is allowed only when p is an integer
// (and positive enough to keep the needed derivatives finite).
inline Jet2 pow(const Jet2& g, double p) {
    const double x = g.v;
    if (x > 0.0) {
        const double f0 = std::pow(x, p);
        return jet_chain(g, f0, p * f0 / x, p * (p - 1.0) * f0 / (x * x));
    }
    const double pr = std::round(p);
    if (pr != p) throw DomainError("pow: non-positive base with non-integer exponent");
    const auto ipow = [](double b, double e) {
        if (b == 0.0 && e < 0.0) throw DomainError("pow: zero base with negative exponent");
        return std::pow(b, e);
    };
    if (x == 0.0 && p < 2.0 && p != 0.0 && p != 1.0)
        throw DomainError("pow: zero base with negative exponent");
    return jet_chain(g, ipow(x, p), p == 0.0 ? 0.0 : p * ipow(x, p - 1.0),
                     (p == 0.0 || p == 1.0) ? 0.0 : p * (p - 1.0) * ipow(x, p - 2.0));
}

inline Jet2 atan2(const Jet2& y, const Jet2& x) {
    const double q = x.v * x.v + y.v * y.v;
    if (q == 0.0) throw DomainError("atan2: both arguments zero");
    const double fy = x.v / q;           // d/dy
    const double fx = -y.v / q;          // d/dx
    const double q2 = q * q;
    const double fyy = -2.0 * x.v * y.v / q2;
    const double fyx = (y.v * y.v - x.v * x.v) / q2;
    const double fxx = 2.0 * x.v * y.v / q2;
    return jet_chain2(y, x, std::atan2(y.v, x.v), fy, fx, fyy, fyx, fxx);
}

/// Value and all first/second partials of f at (u, v) by jet arithmetic.
inline Jet2 eval_jet2(const ScalarField& f, double u, double v) {
    return f(Jet2::var_u(u), Jet2::var_v(v));
}

/// Value only (derivative seeds suppressed).
inline double eval_value(const ScalarField& f, double u, double v) {
    return f(Jet2::constant(u), Jet2::constant(v)).v;
}

/// Independent oracle: all six Jet2 entries by central finite differences.
/// Truncation error is O(h^2); the default step balances truncation against
/// roundoff for O(1)-scaled inputs.
inline Jet2 finite_difference_jet2(const ScalarField& f, double u, double v, double h = 1e-4) {
    if (h <= 0.0) throw DomainError("finite_difference_jet2: step must be positive");
    const auto F = [&](double a, double b) { return eval_value(f, a, b); };
    const double f00 = F(u, v);
    const double fpu = F(u + h, v), fmu = F(u - h, v);
    const double fpv = F(u, v + h), fmv = F(u, v - h);
    const double fpp = F(u + h, v + h), fpm = F(u + h, v - h);
    const double fmp = F(u - h, v + h), fmm = F(u - h, v - h);
    Jet2 o;
    o.v = f00;
    o.du = (fpu - fmu) / (2.0 * h);
    o.dv = (fpv - fmv) / (2.0 * h);
    o.duu = (fpu - 2.0 * f00 + fmu) / (h * h);
    o.dvv = (fpv - 2.0 * f00 + fmv) / (h * h);
    o.duv = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    return o;
}

} // namespace kcontour
