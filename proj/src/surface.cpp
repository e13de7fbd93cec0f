#include "kcontour/surface.hpp"

#include "kcontour/errors.hpp"

#include <array>

namespace kcontour {

namespace {

// Jets of the three embedding coordinates as functions of (u, v).
std::array<Jet2, 3> chart_jets(const SurfacePatch& s, double u, double v) {
    const Jet2 ju = Jet2::var_u(u);
    const Jet2 jv = Jet2::var_v(v);
    return std::visit(
        [&](const auto& chart) -> std::array<Jet2, 3> {
            using T = std::decay_t<decltype(chart)>;
            if constexpr (std::is_same_v<T, PolarGraph>) {
                return {ju * cos(jv), ju * sin(jv), chart.height(ju, jv)};
            } else if constexpr (std::is_same_v<T, CartesianGraph>) {
                return {ju, jv, chart.height(ju, jv)};
            } else {
                return {chart.x(ju, jv), chart.y(ju, jv), chart.z(ju, jv)};
            }
        },
        s.chart);
}

bool is_graph_chart(const SurfacePatch& s) {
    return !std::holds_alternative<Immersion>(s.chart);
}

} // namespace

Vec3 position(const SurfacePatch& s, double u, double v) {
    const auto j = chart_jets(s, u, v);
    return {j[0].v, j[1].v, j[2].v};
}

FundForms fundamental_forms(const SurfacePatch& s, double u, double v) {
    const auto j = chart_jets(s, u, v);
    const Vec3 ru{j[0].du, j[1].du, j[2].du};
    const Vec3 rv{j[0].dv, j[1].dv, j[2].dv};
    const Vec3 ruu{j[0].duu, j[1].duu, j[2].duu};
    const Vec3 ruv{j[0].duv, j[1].duv, j[2].duv};
    const Vec3 rvv{j[0].dvv, j[1].dvv, j[2].dvv};

    FundForms f;
    f.E = dot(ru, ru);
    f.F = dot(ru, rv);
    f.G = dot(rv, rv);

    const double disc = f.E * f.G - f.F * f.F;
    const double scale2 = std::max(1.0, f.E) * std::max(1.0, f.G);
    if (disc <= 1e-14 * scale2) throw DegenerateMetricError(u, v, disc);

    Vec3 n = cross(ru, rv);
    f.delta = norm(n);
    n = (1.0 / f.delta) * n;
    // Orientation convention: graphs take the normal with positive last
    // component; generic immersions keep the (d_u, d_v) cross-product order.
    if (is_graph_chart(s) && n.z < 0.0) n = -1.0 * n;
    f.normal = n;

    f.L = dot(ruu, n);
    f.M = dot(ruv, n);
    f.N = dot(rvv, n);
    f.K = (f.L * f.N - f.M * f.M) / disc;
    f.H = (f.E * f.N - 2.0 * f.F * f.M + f.G * f.L) / (2.0 * disc);
    return f;
}

double gaussian_curvature(const SurfacePatch& s, double u, double v) {
    return fundamental_forms(s, u, v).K;
}

double mean_curvature(const SurfacePatch& s, double u, double v) {
    return fundamental_forms(s, u, v).H;
}

double area_element(const SurfacePatch& s, double u, double v) {
    return fundamental_forms(s, u, v).delta;
}

Vec3 normal(const SurfacePatch& s, double u, double v) {
    return fundamental_forms(s, u, v).normal;
}

double polar_graph_K_from_partials(double r, double Fr, double Ft, double Frr, double Frt,
                                   double Ftt) {
    if (r <= 0.0) throw DomainError("polar_graph_K: r must be positive");
    const double delta2 = r * r + r * r * Fr * Fr + Ft * Ft;
    const double num = r * r * Frr * (r * Fr + Ftt) - (Ft - r * Frt) * (Ft - r * Frt);
    return num / (delta2 * delta2);
}

double polar_graph_K(const ScalarField& F, double r, double theta) {
    if (r <= 0.0) throw DomainError("polar_graph_K: r must be positive");
    const Jet2 jF = eval_jet2(F, r, theta);
    return polar_graph_K_from_partials(r, jF.du, jF.dv, jF.duu, jF.duv, jF.dvv);
}

} // namespace kcontour
