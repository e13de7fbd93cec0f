#include "kcontour/classify.hpp"

#include "kcontour/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace kcontour {

namespace {

constexpr double kAlphaFloor = 1e-10;

struct LineRegression {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LineRegression ols(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
        sxx += x[k] * x[k];
        sxy += x[k] * y[k];
    }
    LineRegression r;
    const double den = n * sxx - sx * sx;
    r.slope = (n * sxy - sx * sy) / den;
    r.intercept = (sy - r.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double e = y[k] - (r.slope * x[k] + r.intercept);
        ss += e * e;
    }
    r.rms = std::sqrt(ss / x.size());
    return r;
}

// d/dx along one axis of a uniformly spaced table: 4th-order central stencil
// in the interior, 2nd-order central then one-sided at the edges.
std::vector<double> fd_derivative(const std::vector<double>& f, double h) {
    const int n = static_cast<int>(f.size());
    std::vector<double> d(n);
    if (n < 3) throw PreconditionError("finite differences need at least 3 samples");
    for (int i = 0; i < n; ++i) {
        if (i >= 2 && i <= n - 3) {
            d[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
        } else if (i == 0) {
            d[i] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        } else if (i == n - 1) {
            d[i] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
        } else {
            d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        }
    }
    return d;
}

std::vector<double> table_derivative_u(const FieldSamples& s, const std::vector<double>& f) {
    const double h = s.u[1] - s.u[0];
    std::vector<double> out(f.size());
    std::vector<double> col(s.nu());
    for (int j = 0; j < s.nv(); ++j) {
        for (int i = 0; i < s.nu(); ++i) col[i] = f[s.idx(i, j)];
        const auto d = fd_derivative(col, h);
        for (int i = 0; i < s.nu(); ++i) out[s.idx(i, j)] = d[i];
    }
    return out;
}

std::vector<double> table_derivative_v(const FieldSamples& s, const std::vector<double>& f) {
    const double h = s.v[1] - s.v[0];
    std::vector<double> out(f.size());
    std::vector<double> row(s.nv());
    for (int i = 0; i < s.nu(); ++i) {
        for (int j = 0; j < s.nv(); ++j) row[j] = f[s.idx(i, j)];
        const auto d = fd_derivative(row, h);
        for (int j = 0; j < s.nv(); ++j) out[s.idx(i, j)] = d[j];
    }
    return out;
}

double node_delta(const FieldSamples& s, bool polar, int i, int j) {
    const std::size_t k = s.idx(i, j);
    if (polar) {
        const double r = s.u[i];
        return std::sqrt(r * r + r * r * s.Fu[k] * s.Fu[k] + s.Fv[k] * s.Fv[k]);
    }
    return std::sqrt(1.0 + s.Fu[k] * s.Fu[k] + s.Fv[k] * s.Fv[k]);
}

double node_K(const FieldSamples& s, bool polar, int i, int j) {
    const std::size_t k = s.idx(i, j);
    if (polar) {
        return polar_graph_K_from_partials(s.u[i], s.Fu[k], s.Fv[k], s.Fuu[k], s.Fuv[k],
                                           s.Fvv[k]);
    }
    const double den = 1.0 + s.Fu[k] * s.Fu[k] + s.Fv[k] * s.Fv[k];
    return (s.Fuu[k] * s.Fvv[k] - s.Fuv[k] * s.Fuv[k]) / (den * den);
}

// Worst relative spread of Delta along the second parameter.
double delta_invariance(const FieldSamples& s, bool polar) {
    double worst = 0.0;
    for (int i = 0; i < s.nu(); ++i) {
        double mean = 0.0;
        for (int j = 0; j < s.nv(); ++j) mean += node_delta(s, polar, i, j);
        mean /= s.nv();
        for (int j = 0; j < s.nv(); ++j) {
            const double dev = std::abs(node_delta(s, polar, i, j) - mean) /
                               std::max(mean, 1e-300);
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

AlphaBetaField recover_impl(const FieldSamples& s, bool polar, double tol) {
    if (delta_invariance(s, polar) > tol)
        throw PreconditionError("area element is not invariant along contours");

    double k_min = 0.0, k_max = 0.0, k_abs = 0.0;
    for (int i = 0; i < s.nu(); ++i) {
        for (int j = 0; j < s.nv(); ++j) {
            const double k = node_K(s, polar, i, j);
            if (i == 0 && j == 0) k_min = k_max = k;
            k_min = std::min(k_min, k);
            k_max = std::max(k_max, k);
            k_abs = std::max(k_abs, std::abs(k));
        }
    }
    if (k_max - k_min <= tol * std::max(1.0, k_abs))
        throw PreconditionError("Gaussian curvature is constant on the sampled grid");

    AlphaBetaField ab;
    ab.r = s.u;
    ab.theta = s.v;
    ab.alpha.resize(s.F.size());
    ab.beta.resize(s.F.size());
    std::size_t flat_nodes = 0;
    for (int i = 0; i < s.nu(); ++i) {
        for (int j = 0; j < s.nv(); ++j) {
            const std::size_t k = s.idx(i, j);
            const double w = polar ? s.u[i] * s.Fu[k] : s.Fu[k];
            ab.alpha[k] = std::hypot(w, s.Fv[k]);
            if (ab.alpha[k] < kAlphaFloor) {
                ++flat_nodes;
                ab.beta[k] = 0.0;
            } else {
                ab.beta[k] = std::atan2(s.Fv[k], w);
            }
        }
    }
    if (flat_nodes * 4 > s.F.size())
        throw PreconditionError("flat region: the height gradient vanishes on an open set");

    // unwrap beta along each row, then align rows at the first column
    for (int i = 0; i < s.nu(); ++i) {
        for (int j = 1; j < s.nv(); ++j) {
            const std::size_t k = s.idx(i, j);
            const double prev = ab.beta[s.idx(i, j - 1)];
            ab.beta[k] = prev + std::remainder(ab.beta[k] - prev, 2.0 * std::numbers::pi);
        }
        if (i > 0) {
            const double gap = ab.beta[s.idx(i, 0)] - ab.beta[s.idx(i - 1, 0)];
            const double shift = gap - std::remainder(gap, 2.0 * std::numbers::pi);
            for (int j = 0; j < s.nv(); ++j) ab.beta[s.idx(i, j)] -= shift;
        }
    }

    ab.phi.resize(s.nu());
    ab.psi.resize(s.nu());
    std::vector<double> row(s.nv());
    for (int i = 0; i < s.nu(); ++i) {
        for (int j = 0; j < s.nv(); ++j) row[j] = ab.beta[s.idx(i, j)];
        const LineRegression fit = ols(s.v, row);
        ab.phi[i] = fit.slope;
        ab.psi[i] = fit.intercept;
        ab.beta_fit_rms = std::max(ab.beta_fit_rms, fit.rms);
    }
    return ab;
}

struct BasisFit {
    double amplitude = 0.0; // c (>= 0)
    double phase = 0.0;     // l with F ~ c g(r) cos(m t + l) + offset
    double offset = 0.0;
    double rms = 0.0;       // rms(F - fit) / scale
};

// Least squares of F against { g(u) cos(m v), g(u) sin(m v), 1 }.
template <typename G>
BasisFit fit_wave_basis(const FieldSamples& s, double m, G&& g) {
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    for (int i = 0; i < s.nu(); ++i) {
        const double gi = g(s.u[i]);
        for (int j = 0; j < s.nv(); ++j) {
            const Eigen::Vector3d row(gi * std::cos(m * s.v[j]), gi * std::sin(m * s.v[j]), 1.0);
            A += row * row.transpose();
            b += row * s.F[s.idx(i, j)];
        }
    }
    const Eigen::Vector3d c = A.ldlt().solve(b);

    BasisFit fit;
    fit.amplitude = std::hypot(c(0), c(1));
    fit.phase = std::atan2(-c(1), c(0));
    fit.offset = c(2);
    double ss = 0.0, scale = 0.0;
    for (int i = 0; i < s.nu(); ++i) {
        const double gi = g(s.u[i]);
        for (int j = 0; j < s.nv(); ++j) {
            const double fitted = c(0) * gi * std::cos(m * s.v[j]) +
                                  c(1) * gi * std::sin(m * s.v[j]) + c(2);
            const double e = s.F[s.idx(i, j)] - fitted;
            ss += e * e;
            scale = std::max(scale, std::abs(s.F[s.idx(i, j)]));
        }
    }
    fit.rms = std::sqrt(ss / s.F.size()) / std::max(scale, 1e-12);
    return fit;
}

std::vector<double> row_mean_alpha(const FieldSamples& s, const AlphaBetaField& ab) {
    std::vector<double> out(s.nu());
    for (int i = 0; i < s.nu(); ++i) {
        double m = 0.0;
        for (int j = 0; j < s.nv(); ++j) m += ab.alpha[ab.idx(i, j)];
        out[i] = m / s.nv();
    }
    return out;
}

struct HelicoidFit {
    double a = 0.0;
    std::vector<double> profile;
    double rms = 0.0;
};

HelicoidFit fit_helicoid(const FieldSamples& s) {
    HelicoidFit fit;
    double c = 0.0;
    for (double fv : s.Fv) c += fv;
    fit.a = c / static_cast<double>(s.Fv.size());
    fit.profile.resize(s.nu());
    for (int i = 0; i < s.nu(); ++i) {
        double m = 0.0;
        for (int j = 0; j < s.nv(); ++j) m += s.F[s.idx(i, j)] - fit.a * s.v[j];
        fit.profile[i] = m / s.nv();
    }
    double ss = 0.0, scale = 0.0;
    for (int i = 0; i < s.nu(); ++i) {
        for (int j = 0; j < s.nv(); ++j) {
            const double e = s.F[s.idx(i, j)] - (fit.a * s.v[j] + fit.profile[i]);
            ss += e * e;
            scale = std::max(scale, std::abs(s.F[s.idx(i, j)]));
        }
    }
    fit.rms = std::sqrt(ss / s.F.size()) / std::max(scale, 1e-12);
    return fit;
}

// K range scan shared by both classifiers. Returns true when K is constant
// to tolerance; flat reports whether that constant is (numerically) zero.
bool constant_K(const FieldSamples& s, bool polar, double tol, bool& flat) {
    double k_min = 0.0, k_max = 0.0, k_abs = 0.0;
    for (int i = 0; i < s.nu(); ++i) {
        for (int j = 0; j < s.nv(); ++j) {
            const double k = node_K(s, polar, i, j);
            if (i == 0 && j == 0) k_min = k_max = k;
            k_min = std::min(k_min, k);
            k_max = std::max(k_max, k);
            k_abs = std::max(k_abs, std::abs(k));
        }
    }
    if (k_max - k_min <= std::max(tol * std::max(1.0, k_abs), 1e-12)) {
        flat = k_abs <= std::max(tol, 1e-9);
        return true;
    }
    return false;
}

LineRegression log_alpha_fit(const std::vector<double>& abscissa,
                             const std::vector<double>& alpha_rows, bool log_abscissa) {
    std::vector<double> x(abscissa.size()), y(abscissa.size());
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
        if (alpha_rows[i] <= 0.0)
            throw PreconditionError("alpha vanishes; cannot fit its growth law");
        x[i] = log_abscissa ? std::log(abscissa[i]) : abscissa[i];
        y[i] = std::log(alpha_rows[i]);
    }
    return ols(x, y);
}

} // namespace

FieldSamples sample_field(const ScalarField& f, const Rect& domain, int nu, int nv) {
    if (nu < 2 || nv < 2) throw std::invalid_argument("sample_field: grid sizes must be >= 2");
    FieldSamples s;
    s.u.resize(nu);
    s.v.resize(nv);
    for (int i = 0; i < nu; ++i)
        s.u[i] = domain.u_min + (domain.u_max - domain.u_min) * i / (nu - 1);
    for (int j = 0; j < nv; ++j)
        s.v[j] = domain.v_min + (domain.v_max - domain.v_min) * j / (nv - 1);
    const std::size_t n = static_cast<std::size_t>(nu) * nv;
    s.F.resize(n);
    s.Fu.resize(n);
    s.Fv.resize(n);
    s.Fuu.resize(n);
    s.Fuv.resize(n);
    s.Fvv.resize(n);
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const Jet2 jf = eval_jet2(f, s.u[i], s.v[j]);
            const std::size_t k = s.idx(i, j);
            s.F[k] = jf.v;
            s.Fu[k] = jf.du;
            s.Fv[k] = jf.dv;
            s.Fuu[k] = jf.duu;
            s.Fuv[k] = jf.duv;
            s.Fvv[k] = jf.dvv;
        }
    }
    return s;
}

FieldSamples sample_field_from_table(const std::vector<double>& u, const std::vector<double>& v,
                                     const std::vector<double>& F) {
    if (u.size() < 3 || v.size() < 3)
        throw std::invalid_argument("sample_field_from_table: need at least a 3x3 grid");
    if (F.size() != u.size() * v.size())
        throw std::invalid_argument("sample_field_from_table: F size does not match the grid");
    const double hu = u[1] - u[0];
    for (std::size_t i = 1; i < u.size(); ++i)
        if (std::abs((u[i] - u[i - 1]) - hu) > 1e-9 * std::max(1.0, std::abs(hu)))
            throw std::invalid_argument("sample_field_from_table: u grid is not uniform");
    const double hv = v[1] - v[0];
    for (std::size_t j = 1; j < v.size(); ++j)
        if (std::abs((v[j] - v[j - 1]) - hv) > 1e-9 * std::max(1.0, std::abs(hv)))
            throw std::invalid_argument("sample_field_from_table: v grid is not uniform");

    FieldSamples s;
    s.u = u;
    s.v = v;
    s.F = F;
    s.Fu = table_derivative_u(s, s.F);
    s.Fv = table_derivative_v(s, s.F);
    s.Fuu = table_derivative_u(s, s.Fu);
    s.Fuv = table_derivative_v(s, s.Fu);
    s.Fvv = table_derivative_v(s, s.Fv);
    return s;
}

AlphaBetaField recover_alpha_beta(const FieldSamples& s, double tol) {
    return recover_impl(s, /*polar=*/true, tol);
}

namespace {

ClassificationReport classify_impl(const FieldSamples& s, bool polar, double tol) {
    ClassificationReport rep;
    rep.delta_invariance = delta_invariance(s, polar);

    bool flat = false;
    if (constant_K(s, polar, tol, flat)) {
        rep.precondition_K = false;
        rep.precondition_delta = rep.delta_invariance <= tol;
        if (flat) {
            rep.verdict = VerdictKind::Plane;
            rep.diagnostic = "K vanishes identically (flat)";
        } else {
            rep.diagnostic = "constant non-zero K: standing assumption violated";
        }
        return rep;
    }
    rep.precondition_K = true;

    if (rep.delta_invariance > tol) {
        rep.precondition_delta = false;
        rep.diagnostic = "area element is not invariant along contours";
        return rep;
    }
    rep.precondition_delta = true;

    AlphaBetaField ab;
    try {
        ab = recover_impl(s, polar, tol);
    } catch (const PreconditionError& e) {
        rep.diagnostic = e.what();
        return rep;
    }
    rep.beta_linearity = ab.beta_fit_rms;

    double phi_mean = std::accumulate(ab.phi.begin(), ab.phi.end(), 0.0) / ab.phi.size();
    double phi_dev = 0.0;
    for (double p : ab.phi) phi_dev = std::max(phi_dev, std::abs(p - phi_mean));
    if (phi_dev > tol * (1.0 + std::abs(phi_mean)) || ab.beta_fit_rms > std::sqrt(tol)) {
        rep.diagnostic = "beta is not linear in the contour parameter";
        return rep;
    }
    const auto alpha_rows = row_mean_alpha(s, ab);
    const bool slope_near_zero = std::abs(phi_mean) <= tol * (1.0 + std::abs(phi_mean));

    if (polar) {
        // case split of the concentric-contour theorem:
        // constant beta slope 0 -> helicoidal; non-zero constant -> x family
        HelicoidFit heli;
        double heli_rms = std::numeric_limits<double>::infinity();
        if (slope_near_zero) {
            heli = fit_helicoid(s);
            heli_rms = heli.rms;
        }

        double x_rms = std::numeric_limits<double>::infinity();
        double m_hat = 0.0;
        BasisFit xf;
        try {
            const LineRegression growth = log_alpha_fit(s.u, alpha_rows, /*log_abscissa=*/true);
            m_hat = growth.slope;
            if (std::abs(m_hat) > 1e-6) {
                xf = fit_wave_basis(s, m_hat, [m_hat](double r) { return std::pow(r, m_hat); });
                x_rms = xf.rms;
            }
        } catch (const PreconditionError&) {
        }

        if (slope_near_zero && heli_rms <= tol && !(x_rms <= tol && x_rms * 10.0 <= heli_rms)) {
            rep.verdict = VerdictKind::Helicoidal;
            rep.a = heli.a;
            rep.profile_r = s.u;
            rep.profile_A = heli.profile;
            rep.reconstruction_rms = heli_rms;
            return rep;
        }
        if (x_rms <= tol) {
            rep.verdict = VerdictKind::XFamily;
            rep.m = m_hat;
            rep.c = xf.amplitude;
            rep.phase = xf.phase;
            rep.offset = xf.offset;
            rep.reconstruction_rms = x_rms;
            return rep;
        }
        rep.reconstruction_rms = std::min(heli_rms, x_rms);
        rep.diagnostic = "reconstruction error exceeds tolerance";
        return rep;
    }

    // Cartesian: non-zero constant beta slope characterizes the p family.
    if (slope_near_zero) {
        rep.diagnostic = "beta does not depend on the contour parameter";
        return rep;
    }
    const double k_hat = -phi_mean;
    const BasisFit pf =
        fit_wave_basis(s, k_hat, [k_hat](double x) { return std::exp(k_hat * x); });
    if (pf.rms <= tol) {
        rep.verdict = VerdictKind::PFamily;
        rep.m = k_hat;
        rep.c = pf.amplitude;
        rep.phase = pf.phase;
        rep.offset = pf.offset;
        rep.reconstruction_rms = pf.rms;
        return rep;
    }
    rep.reconstruction_rms = pf.rms;
    rep.diagnostic = "reconstruction error exceeds tolerance";
    return rep;
}

} // namespace

ClassificationReport classify_polar(const FieldSamples& s, double tol) {
    return classify_impl(s, /*polar=*/true, tol);
}

ClassificationReport classify_cartesian(const FieldSamples& s, double tol) {
    return classify_impl(s, /*polar=*/false, tol);
}

double proof_identity_residual(const FieldSamples& s, double tol) {
    const AlphaBetaField ab = recover_impl(s, /*polar=*/true, tol);
    const auto alpha_rows = row_mean_alpha(s, ab);

    const double phi_mean = std::accumulate(ab.phi.begin(), ab.phi.end(), 0.0) / ab.phi.size();
    std::vector<double> alpha_prime(s.nu());
    if (std::abs(phi_mean) > tol) {
        // power-law branch: alpha = e^b r^m, differentiated analytically
        const LineRegression growth = log_alpha_fit(s.u, alpha_rows, /*log_abscissa=*/true);
        for (int i = 0; i < s.nu(); ++i)
            alpha_prime[i] = std::exp(growth.intercept) * growth.slope *
                             std::pow(s.u[i], growth.slope - 1.0);
    } else {
        alpha_prime = fd_derivative(alpha_rows, s.u[1] - s.u[0]);
    }

    double worst = 0.0;
    for (int i = 0; i < s.nu(); ++i) {
        double delta_mean = 0.0;
        for (int j = 0; j < s.nv(); ++j) delta_mean += node_delta(s, true, i, j);
        delta_mean /= s.nv();
        const double d4 = delta_mean * delta_mean * delta_mean * delta_mean;
        const double rhs = alpha_rows[i] * (1.0 + ab.phi[i]) *
                           (s.u[i] * alpha_prime[i] - alpha_rows[i]) / d4;
        for (int j = 0; j < s.nv(); ++j)
            worst = std::max(worst, std::abs(node_K(s, true, i, j) - rhs));
    }
    return worst;
}

const char* to_string(VerdictKind verdict) {
    switch (verdict) {
        case VerdictKind::Plane: return "Plane";
        case VerdictKind::Helicoidal: return "Helicoidal";
        case VerdictKind::XFamily: return "XFamily";
        case VerdictKind::PFamily: return "PFamily";
        case VerdictKind::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

} // namespace kcontour
