#include "ccw/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ccw {

namespace {

// (x/2)*log(x), extended continuously by 0 at x = 0 so the entropy term is
// defined on the closed interval.
double half_xlogx(double x) { return x > 0.0 ? 0.5 * x * std::log(x) : 0.0; }

double mixing_entropy(double z) { return half_xlogx(1.0 - z) + half_xlogx(1.0 + z); }

}  // namespace

void ModelParams::validate() const {
    if (!std::isfinite(beta) || !std::isfinite(s) || !std::isfinite(r) || !std::isfinite(h)) {
        throw std::invalid_argument("ModelParams: entries must be finite");
    }
    if (!(beta > 0.0)) {
        throw std::invalid_argument("ModelParams: beta must be > 0, got " + std::to_string(beta));
    }
    if (s < 0.0 || r < 0.0) {
        throw std::invalid_argument("ModelParams: pinned fractions must be >= 0");
    }
    // Keeps the coupling t = 1 - s - r bounded away from zero.
    if (s + r >= 1.0 - 1e-12) {
        throw std::invalid_argument("ModelParams: s + r must be < 1, got " +
                                    std::to_string(s + r));
    }
}

void FiniteModel::validate() const {
    if (n_total <= 0) {
        throw std::invalid_argument("FiniteModel: n_total must be positive");
    }
    if (n_plus < 0 || n_minus < 0 || n_free < 0) {
        throw std::invalid_argument("FiniteModel: counts must be nonnegative");
    }
    if (n_plus + n_minus + n_free != n_total) {
        throw std::invalid_argument("FiniteModel: counts must partition n_total");
    }
}

FiniteModel FiniteModel::from_fractions(std::int64_t n, double s, double r) {
    if (n <= 0) {
        throw std::invalid_argument("FiniteModel: n must be positive");
    }
    if (!(s >= 0.0) || !(r >= 0.0) || !(s + r < 1.0)) {
        throw std::invalid_argument("FiniteModel: fractions must be >= 0 with s + r < 1");
    }
    // Half-away-from-zero rounding; the realized fractions, not the targets,
    // define the model.
    const auto plus = static_cast<std::int64_t>(std::llround(static_cast<double>(n) * s));
    const auto minus = static_cast<std::int64_t>(std::llround(static_cast<double>(n) * r));
    if (plus + minus > n) {
        throw std::invalid_argument("FiniteModel: rounded pin counts exceed n");
    }
    FiniteModel fm{n, plus, minus, n - plus - minus};
    fm.validate();
    return fm;
}

SectorMagnetization sector_magnetization(const FiniteModel& fm, std::int64_t k) {
    fm.validate();
    if (k < 0 || k > fm.n_free) {
        throw std::out_of_range("sector_magnetization: k outside [0, n_free]");
    }
    const double m = fm.s_n() - fm.r_n() +
                     static_cast<double>(2 * k - fm.n_free) / static_cast<double>(fm.n_total);
    return SectorMagnetization{k, m};
}

double free_energy(const ModelParams& p, double z) {
    p.validate();
    if (!(std::fabs(z) <= 1.0)) {
        throw std::domain_error("free_energy: z outside [-1, 1]");
    }
    return -0.5 * p.beta * p.coupling() * (z * z) - p.beta * p.effective_field() * z +
           mixing_entropy(z);
}

double free_energy_deriv(const ModelParams& p, double z) {
    p.validate();
    if (!(std::fabs(z) < 1.0)) {
        throw std::domain_error("free_energy_deriv: z outside (-1, 1)");
    }
    return std::atanh(z) - p.beta * (p.coupling() * z + p.effective_field());
}

double free_energy_second_deriv(const ModelParams& p, double z) {
    p.validate();
    if (!(std::fabs(z) < 1.0)) {
        throw std::domain_error("free_energy_second_deriv: z outside (-1, 1)");
    }
    return 1.0 / (1.0 - z * z) - p.beta * p.coupling();
}

double self_consistency_residual(const ModelParams& p, double z) {
    return z - std::tanh(p.beta * (p.coupling() * z + p.effective_field()));
}

double hamiltonian_per_site(const FiniteModel& fm, double h, std::int64_t k) {
    const double m = sector_magnetization(fm, k).m_n;
    return -(0.5 * m * m + h * m) - 0.5 / static_cast<double>(fm.n_total);
}

double magnetization_from_z(const ModelParams& p, double z) {
    return (p.s - p.r) + p.coupling() * z;
}

}  // namespace ccw
