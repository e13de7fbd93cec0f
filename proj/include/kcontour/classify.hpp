#pragma once

// Constructive classification of sampled height fields. Recovers the polar
// gradient factorization r F_r = alpha cos(beta), F_t = alpha sin(beta)
// (resp. its Cartesian analogue), tests the structural alternatives, and
// emits a verdict with fitted parameters and residual diagnostics.

#include "kcontour/jet.hpp"
#include "kcontour/surface.hpp"

#include <string>
#include <vector>

namespace kcontour {

/// A height field tabulated on a regular (u, v) grid together with its
/// first and second partials. Analytic fields use jets; tabulated fields use
/// 4th-order central differences in the interior and 2nd-order one-sided
/// stencils at the edges.
struct FieldSamples {
    std::vector<double> u; // grid coordinates, strictly increasing
    std::vector<double> v;
    // row-major, u outer: idx = i * nv + j
    std::vector<double> F, Fu, Fv, Fuu, Fuv, Fvv;

    int nu() const { return static_cast<int>(u.size()); }
    int nv() const { return static_cast<int>(v.size()); }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * v.size() + j; }
};

FieldSamples sample_field(const ScalarField& f, const Rect& domain, int nu, int nv);
FieldSamples sample_field_from_table(const std::vector<double>& u, const std::vector<double>& v,
                                     const std::vector<double>& F);

struct AlphaBetaField {
    std::vector<double> r;     // grid radii (or x for the Cartesian analogue)
    std::vector<double> theta; // grid angles (or y)
    std::vector<double> alpha; // per node, alpha >= 0
    std::vector<double> beta;  // per node, unwrapped along each r-row
    std::vector<double> phi;   // fitted beta slope per row
    std::vector<double> psi;   // fitted beta intercept per row
    double beta_fit_rms = 0.0; // worst per-row rms of the linear beta fit

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * theta.size() + j; }
};

/// Polar recovery: alpha = sqrt((r F_r)^2 + F_t^2), beta = atan2(F_t, r F_r).
/// Throws PreconditionError when the area element is not invariant along the
/// second parameter, when K is constant, or when alpha vanishes on an open set.
AlphaBetaField recover_alpha_beta(const FieldSamples& s, double tol = 1e-6);

enum class VerdictKind { Plane, Helicoidal, XFamily, PFamily, Unclassified };

struct ClassificationReport {
    VerdictKind verdict = VerdictKind::Unclassified;
    // XFamily: exponent m, amplitude c, phase, offset.
    // PFamily: the same slots hold k, c, phase, offset.
    double m = 0.0, c = 0.0, phase = 0.0, offset = 0.0;
    // Helicoidal: pitch and profile samples A(r).
    double a = 0.0;
    std::vector<double> profile_r, profile_A;

    double delta_invariance = 0.0;   // worst relative spread of Delta along rows
    double beta_linearity = 0.0;     // worst per-row rms of the linear beta fit
    double reconstruction_rms = 0.0; // rms(F - F_fitted) / scale
    bool precondition_delta = false; // area element invariant to tolerance
    bool precondition_K = false;     // sampled K non-constant
    std::string diagnostic;
};

ClassificationReport classify_polar(const FieldSamples& s, double tol = 1e-6);
ClassificationReport classify_cartesian(const FieldSamples& s, double tol = 1e-6);

/// Max over grid nodes of | K - alpha (1 + beta_t)(r alpha' - alpha) / Delta^4 |
/// with K from the direct polar-graph formula and the right side built from
/// the recovered alpha, per-row beta slope, and the fitted alpha derivative.
double proof_identity_residual(const FieldSamples& s, double tol = 1e-6);

const char* to_string(VerdictKind verdict);

} // namespace kcontour
