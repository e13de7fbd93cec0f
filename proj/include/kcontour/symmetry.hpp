#pragma once

// Executable Gauss-map equivariance probes. The parameter shift phi_t acts as
// theta -> theta + t (rotational kind) or y -> y + t (translational kind);
// the probe estimates the constant k with n(phi_t p) = Rot_z(k t) n(p) and
// measures how well both equivariance conditions hold.

#include "kcontour/geometry.hpp"
#include "kcontour/surface.hpp"

namespace kcontour {

enum class ShiftKind { Rotational, Translational };

enum class SymmetryLabel { Rotational, StrictlySemiRotational, Parallel, StrictlyQuasiRotational };

/// Rotation about the third coordinate axis.
Vec3 rotate_about_axis(Vec3 v, double angle);

struct SampleSpec {
    int nu = 16;      // base points along u
    int nv = 16;      // base points along v
    int nshift = 8;   // shifts per base point
};

struct RotationEstimate {
    double k_hat = 0.0;
    double max_residual = 0.0; // max |angle - k_hat * t| over the regression table
    int skipped = 0;           // base points with near-vertical normal
};

/// Signed rotation angle of the normal's horizontal component, regressed
/// against the shift t. Angle tracking uses nearest-branch continuation from
/// t = 0, with shift steps capped at pi / (2 |k_coarse|) after a coarse
/// two-point estimate.
RotationEstimate estimate_rotation_constant(const SurfacePatch& s, ShiftKind kind,
                                            SampleSpec spec = {});

struct SymmetryProbe {
    ShiftKind kind = ShiftKind::Rotational;
    double rotation_constant = 0.0;
};

/// Max over samples and shifts of the normal equivariance gap
/// || n(phi_t p) - Rot(k t) n(p) || and the base-plane equivariance gap
/// (rotation by t, or translation by t along the second axis).
double equivariance_residual(const SurfacePatch& s, const SymmetryProbe& probe,
                             SampleSpec spec = {});

/// rotational (k ~ 1), strictly semi-rotational, parallel (k ~ 0),
/// strictly quasi-rotational.
SymmetryLabel classify_symmetry_kind(double k_hat, ShiftKind kind, double tol = 1e-6);

const char* to_string(SymmetryLabel label);

} // namespace kcontour
