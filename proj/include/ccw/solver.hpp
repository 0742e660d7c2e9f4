#ifndef CCW_SOLVER_HPP
#define CCW_SOLVER_HPP

#include <stdexcept>
#include <vector>

#include "ccw/model.hpp"

namespace ccw {

/// One-sided limits of the magnetization as h approaches the singular field
/// value r - s from below (minus) and above (plus).
struct MagnetizationLimits {
    double m_minus = 0.0;
    double m_plus = 0.0;
    double z_minus = 0.0;
    double z_plus = 0.0;
    double jump = 0.0;  ///< m_plus - m_minus, nonnegative
};

/// Fixed-point iteration failed to reach the residual tolerance; carries the
/// last iterate so callers can inspect how close it got.
struct NonConvergenceError : std::runtime_error {
    NonConvergenceError(double iterate, double residual);
    double last_iterate;
    double last_residual;
};

/// The requested point carries two exactly degenerate minimizers (the
/// discontinuity locus h = r - s with beta above critical), so a single
/// magnetization value is not defined.
struct AmbiguousMagnetizationError : std::runtime_error {
    explicit AmbiguousMagnetizationError(const MinimizerSet& set);
};

/// All global minimizers of the free energy on [-1, 1].
///
/// Scans a uniform grid (>= 2001 points) for derivative sign changes and
/// value-bracketed minima, refines each candidate by safeguarded Newton on
/// the derivative until the self-consistency residual is below 1e-12, and
/// selects by minimal value; values within 1e-10 of the minimum are declared
/// ties. A supercritical symmetric point yields the pair +-z0, everything
/// else a single minimizer.
MinimizerSet minimize_free_energy(const ModelParams& p);

/// A root of the self-consistency residual, found by damped fixed-point
/// iteration z <- (1-lambda)*z + lambda*tanh(beta*(t*z + h_eff)) with lambda
/// adapted so the residual decreases monotonically, plus a Newton polish.
/// Converges when |residual| < 1e-12 within 1e4 iterations, otherwise throws
/// NonConvergenceError. Expects |z_init| <= 1.
double solve_self_consistency(const ModelParams& p, double z_init);

/// The limiting specific magnetization m = s - r + (1-s-r)*z at the unique
/// global minimizer. Throws AmbiguousMagnetizationError when called exactly
/// at a two-minimizer point (h = r - s with beta above critical); use
/// directional_limits there.
double specific_magnetization(const ModelParams& p);

/// One-sided limits of m at h = r - s. At that field the functional is even
/// in z, so the limits are m(+-z0) with z0 the nonnegative spontaneous
/// solution; z0 = 0 (no jump) exactly when beta*(1-s-r) <= 1.
MagnetizationLimits directional_limits(double beta, double s, double r);

/// Cross-check of directional_limits by straight evaluation: returns, for
/// k = 3..8, max over both sides of |m(r-s +- 10^-k) - m_limit|. Expects a
/// point where the off-limit evaluations are unambiguous.
std::vector<double> directional_limit_deviations(double beta, double s, double r);

/// Nonnegative root of z = tanh(beta_t*z): zero for beta_t <= 1, otherwise
/// the unique positive root by bisection. Expects beta_t > 0.
double spontaneous_z(double beta_t);

}  // namespace ccw

#endif  // CCW_SOLVER_HPP
