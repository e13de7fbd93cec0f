#include "kcontour/fitgeom.hpp"

#include "kcontour/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace kcontour {

namespace {

constexpr std::size_t kMinChainVertices = 8;

Vec2 centroid(std::span<const Vec2> pts) {
    Vec2 c;
    for (const Vec2& p : pts) c = c + p;
    return (1.0 / static_cast<double>(pts.size())) * c;
}

// Largest-eigenvalue direction of the 2x2 scatter matrix of centered points.
// Returns the smaller eigenvalue through lambda_min (the TLS residual energy).
Vec2 principal_direction(std::span<const Vec2> pts, Vec2 mean, double& lambda_min) {
    double sxx = 0, sxy = 0, syy = 0;
    for (const Vec2& p : pts) {
        const double dx = p.x - mean.x, dy = p.y - mean.y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double tr = sxx + syy;
    const double det = sxx * syy - sxy * sxy;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double l1 = tr / 2.0 + disc;
    lambda_min = tr / 2.0 - disc;
    Vec2 d;
    if (std::abs(sxy) > 1e-300) {
        d = {l1 - syy, sxy};
    } else {
        d = sxx >= syy ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
    }
    const double n = norm(d);
    if (n == 0.0) return {1.0, 0.0};
    d = (1.0 / n) * d;
    // canonical sign: first nonzero component positive
    if (d.x < 0.0 || (d.x == 0.0 && d.y < 0.0)) d = -1.0 * d;
    return d;
}

} // namespace

CircleFit fit_circle(std::span<const Vec2> points) {
    if (points.size() < 3) throw FitError("fit_circle: need at least 3 points");

    // reject (near-)collinear input before solving
    Vec2 mean = centroid(points);
    double lmin = 0.0;
    principal_direction(points, mean, lmin);
    double extent = 0.0;
    for (const Vec2& p : points) extent = std::max(extent, norm(p - mean));
    if (std::sqrt(lmin / points.size()) <= 1e-12 * std::max(extent, 1e-300))
        throw FitError("fit_circle: points are collinear");

    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    for (const Vec2& p : points) {
        const Eigen::Vector3d row(p.x, p.y, 1.0);
        A += row * row.transpose();
        b += row * (p.x * p.x + p.y * p.y);
    }
    const Eigen::Vector3d c = A.ldlt().solve(b);

    CircleFit fit;
    fit.center = {c(0) / 2.0, c(1) / 2.0};
    const double r2 = c(2) + fit.center.x * fit.center.x + fit.center.y * fit.center.y;
    if (!(r2 > 0.0)) throw FitError("fit_circle: degenerate solution");
    fit.radius = std::sqrt(r2);

    double ss = 0.0;
    for (const Vec2& p : points) {
        const double d = norm(p - fit.center) - fit.radius;
        ss += d * d;
    }
    fit.rms_residual = std::sqrt(ss / points.size());
    return fit;
}

LineFit fit_line(std::span<const Vec2> points) {
    if (points.size() < 2) throw FitError("fit_line: need at least 2 points");
    const Vec2 mean = centroid(points);
    double extent = 0.0;
    for (const Vec2& p : points) extent = std::max(extent, norm(p - mean));
    if (extent == 0.0) throw FitError("fit_line: points are coincident");

    LineFit fit;
    double lmin = 0.0;
    fit.direction = principal_direction(points, mean, lmin);
    const Vec2 n{fit.direction.y, -fit.direction.x};
    fit.offset = dot(n, mean);
    double ss = 0.0;
    for (const Vec2& p : points) {
        const double d = dot(n, p) - fit.offset;
        ss += d * d;
    }
    fit.rms_residual = std::sqrt(ss / points.size());
    return fit;
}

SymmetryVerdict concentricity_verdict(const ContourSet& cs, double tol) {
    SymmetryVerdict v;
    int nonempty_levels = 0;
    for (const auto& lc : cs.projected)
        if (!lc.empty()) ++nonempty_levels;
    if (nonempty_levels < 2)
        throw FitError("concentricity_verdict: need at least 2 nonempty projected levels");

    std::vector<CircleFit> fits;
    bool residual_ok = true;
    int attempted = 0;
    for (std::size_t li = 0; li < cs.projected.size(); ++li) {
        for (std::size_t ci = 0; ci < cs.projected[li].size(); ++ci) {
            const Polyline2& chain = cs.projected[li][ci];
            ContourFitRecord rec;
            rec.level_index = static_cast<int>(li);
            rec.chain_index = static_cast<int>(ci);
            rec.n_points = chain.size();
            if (chain.size() >= kMinChainVertices) {
                ++attempted;
                try {
                    const CircleFit f = fit_circle(chain);
                    rec.fitted = true;
                    rec.residual = f.rms_residual;
                    rec.center_or_direction = f.center;
                    rec.radius_or_offset = f.radius;
                    fits.push_back(f);
                    if (f.rms_residual > tol * f.radius) residual_ok = false;
                } catch (const FitError&) {
                    residual_ok = false;
                }
            }
            v.per_contour.push_back(rec);
        }
    }
    if (attempted < 2) throw FitError("concentricity_verdict: fewer than 2 fittable chains");
    if (fits.size() < 2) {
        // Chains were long enough but none admitted a circle (e.g. straight
        // contours): not concentric, rather than an input error.
        v.holds = false;
        return v;
    }

    Vec2 mean_center;
    double min_radius = fits.front().radius;
    for (const CircleFit& f : fits) {
        mean_center = mean_center + f.center;
        min_radius = std::min(min_radius, f.radius);
    }
    mean_center = (1.0 / static_cast<double>(fits.size())) * mean_center;
    double spread = 0.0;
    for (const CircleFit& f : fits) spread = std::max(spread, norm(f.center - mean_center));

    v.common_center = mean_center;
    v.spread = spread;
    v.holds = residual_ok && spread <= tol * min_radius;
    return v;
}

SymmetryVerdict parallelism_verdict(const ContourSet& cs, double tol) {
    SymmetryVerdict v;
    int nonempty_levels = 0;
    for (const auto& lc : cs.projected)
        if (!lc.empty()) ++nonempty_levels;
    if (nonempty_levels < 2)
        throw FitError("parallelism_verdict: need at least 2 nonempty projected levels");

    std::vector<LineFit> fits;
    bool residual_ok = true;
    for (std::size_t li = 0; li < cs.projected.size(); ++li) {
        for (std::size_t ci = 0; ci < cs.projected[li].size(); ++ci) {
            const Polyline2& chain = cs.projected[li][ci];
            ContourFitRecord rec;
            rec.level_index = static_cast<int>(li);
            rec.chain_index = static_cast<int>(ci);
            rec.n_points = chain.size();
            if (chain.size() >= kMinChainVertices) {
                const LineFit f = fit_line(chain);
                double extent = 0.0;
                for (const Vec2& p : chain)
                    for (const Vec2& q : chain) extent = std::max(extent, norm(p - q));
                rec.fitted = true;
                rec.residual = f.rms_residual;
                rec.center_or_direction = f.direction;
                rec.radius_or_offset = f.offset;
                fits.push_back(f);
                if (f.rms_residual > tol * extent) residual_ok = false;
            }
            v.per_contour.push_back(rec);
        }
    }
    if (fits.size() < 2) throw FitError("parallelism_verdict: fewer than 2 fittable chains");

    double max_angle = 0.0;
    for (std::size_t a = 0; a < fits.size(); ++a) {
        for (std::size_t b = a + 1; b < fits.size(); ++b) {
            const double c = std::clamp(
                std::abs(dot(fits[a].direction, fits[b].direction)), 0.0, 1.0);
            max_angle = std::max(max_angle, std::acos(c));
        }
    }
    Vec2 mean_dir;
    for (const LineFit& f : fits) {
        const double sign = dot(f.direction, fits.front().direction) >= 0.0 ? 1.0 : -1.0;
        mean_dir = mean_dir + sign * f.direction;
    }
    const double n = norm(mean_dir);
    if (n > 0.0) mean_dir = (1.0 / n) * mean_dir;
    if (mean_dir.x < 0.0 || (mean_dir.x == 0.0 && mean_dir.y < 0.0)) mean_dir = -1.0 * mean_dir;

    v.common_direction = mean_dir;
    v.spread = max_angle;
    v.holds = residual_ok && max_angle <= tol;
    return v;
}

} // namespace kcontour
