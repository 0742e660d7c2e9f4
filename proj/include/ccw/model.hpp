#ifndef CCW_MODEL_HPP
#define CCW_MODEL_HPP

#include <cstdint>
#include <vector>

namespace ccw {

/// Parameter point (beta, s, r, h) of the limiting model.
///
/// s and r are the pinned-plus and pinned-minus fractions of the population,
/// the remaining fraction t = 1 - s - r is free, and the free spins feel the
/// effective field h + s - r once the pinned spins are absorbed into the
/// Hamiltonian.
struct ModelParams {
    double beta = 1.0;  ///< inverse temperature, > 0
    double s = 0.0;     ///< pinned-plus fraction, in [0, 1)
    double r = 0.0;     ///< pinned-minus fraction, in [0, 1)
    double h = 0.0;     ///< external field

    double coupling() const { return 1.0 - s - r; }
    double effective_field() const { return h + s - r; }

    /// Throws std::invalid_argument unless beta > 0, s >= 0, r >= 0,
    /// s + r < 1 - 1e-12 and all entries are finite.
    void validate() const;
};

/// Integer composition of a finite population: n_plus sites pinned to +1,
/// n_minus pinned to -1, n_free undecided.
struct FiniteModel {
    std::int64_t n_total = 0;
    std::int64_t n_plus = 0;
    std::int64_t n_minus = 0;
    std::int64_t n_free = 0;

    double s_n() const { return static_cast<double>(n_plus) / static_cast<double>(n_total); }
    double r_n() const { return static_cast<double>(n_minus) / static_cast<double>(n_total); }
    double t_n() const { return static_cast<double>(n_free) / static_cast<double>(n_total); }

    /// Throws std::invalid_argument unless n_total > 0, all counts >= 0 and
    /// n_plus + n_minus + n_free == n_total.
    void validate() const;

    /// Builds the composition closest to the target fractions: n_plus and
    /// n_minus are n*s and n*r rounded half away from zero, the rest is free.
    static FiniteModel from_fractions(std::int64_t n, double s, double r);
};

/// Per-site magnetization of the sector with k free spins equal to +1.
struct SectorMagnetization {
    std::int64_t k = 0;
    double m_n = 0.0;
};

/// Global minimizer(s) of the free energy on [-1, 1], values ascending.
/// Two entries occur only for a symmetric supercritical double well, in
/// which case they are +-z0.
struct MinimizerSet {
    std::vector<double> minimizers;
    double value = 0.0;               ///< common minimal free-energy value
    std::vector<double> curvature;    ///< second derivative at each minimizer
};

/// m_n = s_n - r_n + (2k - n_free)/n. Throws std::out_of_range unless
/// 0 <= k <= n_free.
SectorMagnetization sector_magnetization(const FiniteModel& fm, std::int64_t k);

/// Free-energy functional
///   i(z) = -beta*t*z^2/2 - beta*h_eff*z + (1-z)/2*log(1-z) + (1+z)/2*log(1+z)
/// on [-1, 1]; the entropy terms extend continuously to 0 at z = +-1.
/// Throws std::domain_error if |z| > 1.
double free_energy(const ModelParams& p, double z);

/// i'(z) = atanh(z) - beta*(t*z + h_eff); diverges at the endpoints, so
/// minimizers are interior. Throws std::domain_error unless |z| < 1.
double free_energy_deriv(const ModelParams& p, double z);

/// i''(z) = 1/(1 - z^2) - beta*t. Throws std::domain_error unless |z| < 1.
double free_energy_second_deriv(const ModelParams& p, double z);

/// z - tanh(beta*(t*z + h_eff)); zero exactly at stationary points of the
/// free energy. Expects |z| <= 1.
double self_consistency_residual(const ModelParams& p, double z);

/// Energy per site of any configuration in sector k:
///   H/N = -(m^2/2 + h*m) - 1/(2N).
/// Configurations in a sector share their energy. Throws std::out_of_range
/// on a bad k.
double hamiltonian_per_site(const FiniteModel& fm, double h, std::int64_t k);

/// m = s - r + (1 - s - r)*z. Expects |z| <= 1.
double magnetization_from_z(const ModelParams& p, double z);

}  // namespace ccw

#endif  // CCW_MODEL_HPP
