#pragma once

#include <stdexcept>
#include <string>

namespace kcontour {

/// Evaluation outside the mathematical domain of a primitive
/// (log of a non-positive value, division by zero, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// EG - F^2 fell below tolerance: the chart is not an immersion there.
struct DegenerateMetricError : std::runtime_error {
    DegenerateMetricError(double u, double v, double disc)
        : std::runtime_error("degenerate metric at (u,v) = (" + std::to_string(u) + ", " +
                             std::to_string(v) + "), EG-F^2 = " + std::to_string(disc)),
          u(u), v(v), discriminant(disc) {}
    double u, v, discriminant;
};

/// A least-squares fit could not be performed (collinear circle points,
/// coincident line points, too few chains).
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A classifier hypothesis failed (area-element invariance, non-constant K,
/// flat region). Carried as a diagnostic, not a crash.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad CLI flags, config keys, or input files. Maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace kcontour
