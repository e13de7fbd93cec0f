#include "kcontour/symmetry.hpp"

#include "kcontour/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace kcontour {

namespace {

constexpr double kHorizontalFloor = 1e-8;

double horizontal_angle(Vec3 n) { return std::atan2(n.y, n.x); }

double horizontal_norm(Vec3 n) { return std::hypot(n.x, n.y); }

// Sample coordinates strictly inside the interval (small margin keeps
// finite-difference-free evaluation away from exact endpoints).
std::vector<double> linspace_interior(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * (i + 0.5) / n;
    return out;
}

// Both shift kinds act on the second chart parameter.
Vec3 normal_at_shift(const SurfacePatch& s, double u, double v, double t) {
    return normal(s, u, v + t);
}

} // namespace

Vec3 rotate_about_axis(Vec3 v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

RotationEstimate estimate_rotation_constant(const SurfacePatch& s, ShiftKind /*kind*/,
                                            SampleSpec spec) {
    const auto us = linspace_interior(s.domain.u_min, s.domain.u_max, spec.nu);
    const auto vs = linspace_interior(s.domain.v_min, s.domain.v_max, spec.nv);

    // coarse slope from a tiny shift, to cap the step below the pi/2 branch limit
    double k_coarse = 0.0;
    {
        const double t0 = 1e-3;
        int n = 0;
        for (double u : us) {
            const double v = vs.front();
            const Vec3 n0 = normal(s, u, v);
            if (horizontal_norm(n0) < kHorizontalFloor) continue;
            const Vec3 n1 = normal_at_shift(s, u, v, t0);
            if (horizontal_norm(n1) < kHorizontalFloor) continue;
            double d = horizontal_angle(n1) - horizontal_angle(n0);
            d = std::remainder(d, 2.0 * std::numbers::pi);
            k_coarse += d / t0;
            ++n;
        }
        if (n > 0) k_coarse /= n;
    }
    const double dt_max = std::numbers::pi / (2.0 * std::max(std::abs(k_coarse), 1.0));
    const double dt = std::min(dt_max, std::numbers::pi / 4.0) ;

    double stt = 0.0, sta = 0.0;
    std::vector<std::pair<double, double>> table; // (t, unwrapped angle delta)
    int skipped = 0;
    for (double u : us) {
        for (double v : vs) {
            const Vec3 n0 = normal(s, u, v);
            if (horizontal_norm(n0) < kHorizontalFloor) {
                ++skipped;
                continue;
            }
            const double a0 = horizontal_angle(n0);
            double prev = 0.0;
            bool skip_point = false;
            std::vector<std::pair<double, double>> local;
            for (int q = 1; q <= spec.nshift; ++q) {
                const double t = q * dt;
                const Vec3 nt = normal_at_shift(s, u, v, t);
                if (horizontal_norm(nt) < kHorizontalFloor) {
                    skip_point = true;
                    break;
                }
                double d = horizontal_angle(nt) - a0;
                // nearest-branch continuation from the previous shift
                d = prev + std::remainder(d - prev, 2.0 * std::numbers::pi);
                prev = d;
                local.emplace_back(t, d);
            }
            if (skip_point) {
                ++skipped;
                continue;
            }
            for (const auto& [t, d] : local) {
                stt += t * t;
                sta += t * d;
                table.emplace_back(t, d);
            }
        }
    }
    if (table.empty())
        throw DomainError("estimate_rotation_constant: every sample had a near-vertical normal");

    RotationEstimate est;
    est.k_hat = sta / stt; // regression through the origin (angle(0) = 0 by definition)
    est.skipped = skipped;
    for (const auto& [t, d] : table)
        est.max_residual = std::max(est.max_residual, std::abs(d - est.k_hat * t));
    return est;
}

double equivariance_residual(const SurfacePatch& s, const SymmetryProbe& probe,
                             SampleSpec spec) {
    const auto us = linspace_interior(s.domain.u_min, s.domain.u_max, spec.nu);
    const auto vs = linspace_interior(s.domain.v_min, s.domain.v_max, spec.nv);
    const double dt = std::numbers::pi / (2.0 * std::max(std::abs(probe.rotation_constant), 1.0)) /
                      spec.nshift;

    double worst = 0.0;
    for (double u : us) {
        for (double v : vs) {
            const Vec3 n0 = normal(s, u, v);
            const Vec3 x0 = position(s, u, v);
            for (int q = 1; q <= spec.nshift; ++q) {
                const double t = q * dt;
                const Vec3 nt = normal_at_shift(s, u, v, t);
                const Vec3 xt = position(s, u, v + t);
                // condition (3): normal rotates by k t
                const Vec3 ngap = nt - rotate_about_axis(n0, probe.rotation_constant * t);
                worst = std::max(worst, norm(ngap));
                // condition (2): projected position rotates by t / translates by t
                Vec3 xref;
                if (probe.kind == ShiftKind::Rotational) {
                    xref = rotate_about_axis({x0.x, x0.y, 0.0}, t);
                } else {
                    xref = {x0.x, x0.y + t, 0.0};
                }
                const double pgap = std::hypot(xt.x - xref.x, xt.y - xref.y);
                worst = std::max(worst, pgap);
            }
        }
    }
    return worst;
}

SymmetryLabel classify_symmetry_kind(double k_hat, ShiftKind kind, double tol) {
    if (kind == ShiftKind::Rotational)
        return std::abs(k_hat - 1.0) <= tol ? SymmetryLabel::Rotational
                                            : SymmetryLabel::StrictlySemiRotational;
    return std::abs(k_hat) <= tol ? SymmetryLabel::Parallel
                                  : SymmetryLabel::StrictlyQuasiRotational;
}

const char* to_string(SymmetryLabel label) {
    switch (label) {
        case SymmetryLabel::Rotational: return "rotational";
        case SymmetryLabel::StrictlySemiRotational: return "strictly semi-rotational";
        case SymmetryLabel::Parallel: return "parallel";
        case SymmetryLabel::StrictlyQuasiRotational: return "strictly quasi-rotational";
    }
    return "unknown";
}

} // namespace kcontour
