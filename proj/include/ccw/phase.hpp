#ifndef CCW_PHASE_HPP
#define CCW_PHASE_HPP

#include <optional>
#include <string>

#include "ccw/solver.hpp"

namespace ccw {

/// Where (s, r) sits in the admissible triangle of the sr-plane.
enum class Region {
    Diagonal,          ///< s = r < 1/2
    Dominant,          ///< s >= 1/2 or r >= 1/2 (with s + r < 1)
    OffDiagonalSmall,  ///< s, r < 1/2 and s != r
};

/// What the magnetization does as h crosses r - s at the given beta.
enum class Regime {
    NoJump,             ///< beta <= beta*, limits coincide at s - r
    SymmetricFlip,      ///< diagonal case: m_plus = -m_minus != 0
    JumpNoPhaseChange,  ///< both limits share the sign of s - r
    OrderDisorder,      ///< beta = beta**: one limit is exactly zero
    AsymmetricFlip,     ///< beta > beta**: m_minus < 0 < m_plus, asymmetric
};

const char* to_string(Region region);
const char* to_string(Regime regime);

/// Regime classification at one (s, r, beta) point, with the raw distances
/// from the critical lines so callers can apply their own thresholds.
struct TransitionReport {
    Region region = Region::Diagonal;
    double beta_star = 0.0;
    std::optional<double> beta_double_star;  ///< defined only off-diagonal small
    Regime regime = Regime::NoJump;
    MagnetizationLimits limits;
    double beta_minus_beta_star = 0.0;
    std::optional<double> beta_minus_beta_double_star;
    double s_minus_r = 0.0;
};

/// First critical inverse temperature beta* = 1/(1 - s - r). Throws
/// std::invalid_argument on an inadmissible (s, r).
double beta_star(double s, double r);

/// Second critical inverse temperature
///   beta** = arctanh((r-s)/(1-s-r)) / (r-s),
/// defined for 0 <= s, r < 1/2 with s != r; symmetric under swapping s and r.
/// Throws std::domain_error outside that range.
double beta_double_star(double s, double r);

/// Diagonal if |s - r| <= 1e-15 (and s < 1/2), Dominant if s or r >= 1/2,
/// OffDiagonalSmall otherwise.
Region classify_region(double s, double r);

/// Full regime classification. Equality with beta* or beta** is detected at
/// 1e-12 relative tolerance; the report's limits come from
/// directional_limits and realize the claimed sign pattern.
TransitionReport classify_transition(double s, double r, double beta);

/// Size of the discontinuity at h = r - s:
///   jump = 2*(1-s-r)*spontaneous_z(beta*(1-s-r)),
/// zero exactly when beta <= beta*.
double jump_magnitude(double s, double r, double beta);

}  // namespace ccw

#endif  // CCW_PHASE_HPP
