#include "ccw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace ccw {

namespace {

constexpr double kResidualTol = 1e-12;
constexpr double kTieTol = 1e-10;
constexpr int kGridPoints = 4001;

// Largest |z| at which atanh is still evaluable; for very strong couplings
// the minimizer is pinned here to double precision.
const double kZMax = std::nextafter(1.0, 0.0);

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Safeguarded Newton on the derivative inside a bracket with
// deriv(a) <= 0 <= deriv(b); falls back to bisection whenever the Newton
// step leaves the bracket or the curvature is not positive.
double refine_minimum(const ModelParams& p, double a, double b) {
    a = std::max(a, -kZMax);
    b = std::min(b, kZMax);
    if (free_energy_deriv(p, a) > 0.0) return a;  // pinned at the left edge
    if (free_energy_deriv(p, b) < 0.0) return b;  // pinned at the right edge
    double z = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
        if (std::fabs(self_consistency_residual(p, z)) < kResidualTol) break;
        const double d = free_energy_deriv(p, z);
        if (d < 0.0) {
            a = z;
        } else if (d > 0.0) {
            b = z;
        } else {
            break;
        }
        const double d2 = free_energy_second_deriv(p, z);
        double zn = d2 > 0.0 ? z - d / d2 : 0.5 * (a + b);
        if (!(zn > a && zn < b)) zn = 0.5 * (a + b);
        if (zn == z) break;
        z = zn;
    }
    return z;
}

// Unbracketed Newton from a seed; used to land in wells the coarse grid
// cannot separate. Junk results are filtered by the residual check.
double refine_from_seed(const ModelParams& p, double z) {
    z = std::clamp(z, -kZMax, kZMax);
    for (int it = 0; it < 60; ++it) {
        if (std::fabs(self_consistency_residual(p, z)) < kResidualTol) break;
        const double d = free_energy_deriv(p, z);
        const double d2 = free_energy_second_deriv(p, z);
        if (!(d2 > 0.0)) break;
        const double zn = std::clamp(z - d / d2, -kZMax, kZMax);
        if (zn == z) break;
        z = zn;
    }
    return z;
}

}  // namespace

NonConvergenceError::NonConvergenceError(double iterate, double residual)
    : std::runtime_error("self-consistency iteration stalled at z = " + fmt_g(iterate) +
                         " with residual " + fmt_g(residual)),
      last_iterate(iterate),
      last_residual(residual) {}

AmbiguousMagnetizationError::AmbiguousMagnetizationError(const MinimizerSet& set)
    : std::runtime_error(
          "magnetization is not single-valued here: degenerate minimizers at z = " +
          fmt_g(set.minimizers.empty() ? 0.0 : set.minimizers.front()) + " and z = " +
          fmt_g(set.minimizers.empty() ? 0.0 : set.minimizers.back()) +
          "; use directional_limits") {}

double spontaneous_z(double beta_t) {
    if (beta_t <= 1.0) return 0.0;
    const auto residual = [beta_t](double z) { return z - std::tanh(beta_t * z); };
    double lo = 1e-16;   // residual < 0: the tanh curve starts above the line
    double hi = kZMax;   // residual > 0 unless the root sits within one ulp of 1
    if (residual(hi) <= 0.0) return hi;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

MinimizerSet minimize_free_energy(const ModelParams& p) {
    p.validate();
    const double beta_t = p.beta * p.coupling();

    // Symmetric supercritical double well: the minimizers are exactly +-z0.
    if (p.effective_field() == 0.0 && beta_t > 1.0) {
        const double z0 = refine_from_seed(p, spontaneous_z(beta_t));
        MinimizerSet set;
        set.minimizers = {-z0, z0};
        set.value = free_energy(p, z0);
        const double c = free_energy_second_deriv(p, z0);
        set.curvature = {c, c};
        return set;
    }

    std::vector<double> grid(kGridPoints);
    std::vector<double> value(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        grid[i] = -1.0 + 2.0 * static_cast<double>(i) / (kGridPoints - 1);
        value[i] = free_energy(p, grid[i]);
    }

    // Derivative signs at the nodes; it diverges to -inf/+inf at the ends.
    std::vector<int> sign(kGridPoints);
    sign.front() = -1;
    sign.back() = +1;
    for (int i = 1; i + 1 < kGridPoints; ++i) {
        const double d = free_energy_deriv(p, grid[i]);
        sign[i] = (d > 0.0) - (d < 0.0);
    }

    std::vector<double> candidates;
    for (int i = 1; i + 1 < kGridPoints; ++i) {
        if (sign[i] == 0) candidates.push_back(grid[i]);
    }
    for (int i = 0; i + 1 < kGridPoints; ++i) {
        if (sign[i] < 0 && sign[i + 1] > 0) {
            candidates.push_back(refine_minimum(p, grid[i], grid[i + 1]));
        }
    }
    // Value-bracketed local minima catch wells that hide between nodes whose
    // derivative signs do not flip.
    for (int i = 1; i + 1 < kGridPoints; ++i) {
        const bool covered = (sign[i - 1] < 0 && sign[i] > 0) || (sign[i] < 0 && sign[i + 1] > 0);
        if (!covered && value[i - 1] > value[i] && value[i] <= value[i + 1]) {
            candidates.push_back(refine_minimum(p, grid[i - 1], grid[i + 1]));
        }
    }
    // Spontaneous-solution seeds cover nearly degenerate wells below the
    // grid resolution.
    if (beta_t > 1.0) {
        const double z0 = spontaneous_z(beta_t);
        candidates.push_back(refine_from_seed(p, z0));
        candidates.push_back(refine_from_seed(p, -z0));
    }

    std::sort(candidates.begin(), candidates.end());

    struct Candidate {
        double z, f, curv;
    };
    std::vector<Candidate> kept;
    for (double z : candidates) {
        if (!kept.empty() && z - kept.back().z < 1e-9) continue;
        if (std::fabs(self_consistency_residual(p, z)) > kResidualTol) continue;
        const double c = free_energy_second_deriv(p, z);
        if (c < -1e-10) continue;  // a maximum, not a minimum
        kept.push_back({z, free_energy(p, z), c});
    }

    if (kept.empty()) {
        throw std::logic_error("minimize_free_energy: no stationary candidate survived");
    }
    double best = kept.front().f;
    for (const Candidate& c : kept) best = std::min(best, c.f);

    MinimizerSet set;
    set.value = best;
    for (const Candidate& c : kept) {
        if (c.f <= best + kTieTol) {
            set.minimizers.push_back(c.z);
            set.curvature.push_back(c.curv);
        }
    }
    return set;
}

double solve_self_consistency(const ModelParams& p, double z_init) {
    p.validate();
    if (!(std::fabs(z_init) <= 1.0)) {
        throw std::invalid_argument("solve_self_consistency: z_init outside [-1, 1]");
    }
    const double t = p.coupling();
    const double h_eff = p.effective_field();
    double z = z_init;
    double res = self_consistency_residual(p, z);
    double lambda = 1.0;
    for (int it = 0; it < 10000; ++it) {
        if (std::fabs(res) < kResidualTol) return z;
        if (std::fabs(res) < 1e-4) {
            // Newton polish; also the only way to land on an unstable root.
            const double th = std::tanh(p.beta * (t * z + h_eff));
            const double slope = 1.0 - p.beta * t * (1.0 - th * th);
            if (slope != 0.0) {
                const double zn = z - res / slope;
                if (std::fabs(zn) <= 1.0) {
                    const double resn = self_consistency_residual(p, zn);
                    if (std::fabs(resn) < std::fabs(res)) {
                        z = zn;
                        res = resn;
                        continue;
                    }
                }
            }
        }
        const double target = std::tanh(p.beta * (t * z + h_eff));
        bool advanced = false;
        while (lambda >= 1e-12) {
            const double zn = (1.0 - lambda) * z + lambda * target;
            const double resn = self_consistency_residual(p, zn);
            if (std::fabs(resn) < std::fabs(res)) {
                z = zn;
                res = resn;
                advanced = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!advanced) throw NonConvergenceError(z, res);
        lambda = std::min(1.0, lambda * 2.0);
    }
    throw NonConvergenceError(z, res);
}

double specific_magnetization(const ModelParams& p) {
    const MinimizerSet set = minimize_free_energy(p);
    if (set.minimizers.size() != 1) throw AmbiguousMagnetizationError(set);
    return magnetization_from_z(p, set.minimizers.front());
}

MagnetizationLimits directional_limits(double beta, double s, double r) {
    ModelParams p{beta, s, r, r - s};
    p.validate();
    const double z0 = spontaneous_z(beta * p.coupling());
    MagnetizationLimits lim;
    lim.z_minus = -z0;
    lim.z_plus = z0;
    lim.m_minus = magnetization_from_z(p, -z0);
    lim.m_plus = magnetization_from_z(p, z0);
    lim.jump = lim.m_plus - lim.m_minus;
    return lim;
}

std::vector<double> directional_limit_deviations(double beta, double s, double r) {
    const MagnetizationLimits lim = directional_limits(beta, s, r);
    const double rs = r - s;
    std::vector<double> devs;
    devs.reserve(6);
    for (int k = 3; k <= 8; ++k) {
        const double delta = std::pow(10.0, -k);
        const double below = specific_magnetization(ModelParams{beta, s, r, rs - delta});
        const double above = specific_magnetization(ModelParams{beta, s, r, rs + delta});
        devs.push_back(
            std::max(std::fabs(below - lim.m_minus), std::fabs(above - lim.m_plus)));
    }
    return devs;
}

}  // namespace ccw
