// Test-only oracles, kept independent of the implementation paths they check.

#ifndef CCW_TEST_ORACLES_HPP
#define CCW_TEST_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ccw/model.hpp"

namespace ccw_test {

// Positive root of z = tanh(bt*z) by plain bisection; 0 when subcritical.
inline double bisect_tanh_root(double bt) {
    if (bt <= 1.0) return 0.0;
    double lo = 1e-12, hi = 1.0 - 1e-12;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid - std::tanh(bt * mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Fixed-point iteration z <- tanh(bt*z + bh), the textbook route.
inline double fixed_point_tanh(double bt, double bh, double z = 0.5) {
    for (int it = 0; it < 100000; ++it) {
        const double zn = std::tanh(bt * z + bh);
        if (std::fabs(zn - z) < 1e-15) return zn;
        z = zn;
    }
    return z;
}

inline double central_difference(const std::function<double(double)>& f, double z,
                                 double step) {
    return (f(z + step) - f(z - step)) / (2.0 * step);
}

// Energy per site from the explicit pairwise sum over unordered pairs of
// distinct sites (weight 1/N each) plus the diagonal completion, which
// reproduces the -1/(2N) additive constant of the closed form exactly.
inline double pairwise_energy_per_site(const std::vector<int>& spins, double h) {
    const std::int64_t n = static_cast<std::int64_t>(spins.size());
    double pair_sum = 0.0;
    for (std::size_t i = 0; i < spins.size(); ++i) {
        for (std::size_t j = i + 1; j < spins.size(); ++j) {
            pair_sum += static_cast<double>(spins[i] * spins[j]);
        }
    }
    double field_sum = 0.0;
    for (int s : spins) field_sum += s;
    const double energy =
        -(pair_sum + static_cast<double>(n)) / static_cast<double>(n) - h * field_sum;
    return energy / static_cast<double>(n);
}

// <m_N> by direct enumeration of all free-spin configurations in extended
// precision; usable for n_free <= ~20.
inline long double brute_mean_magnetization(const ccw::FiniteModel& fm, long double beta,
                                            long double h) {
    const int n = static_cast<int>(fm.n_free);
    const long double nn = static_cast<long double>(fm.n_total);
    const long double pinned =
        static_cast<long double>(fm.n_plus - fm.n_minus) / nn;
    long double wsum = 0.0L, msum = 0.0L;
    // Scale all weights by exp(-shift) for stability; the shift cancels.
    long double shift = -1e30L;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int k = __builtin_popcount(mask);
        const long double m = pinned + static_cast<long double>(2 * k - n) / nn;
        const long double lw = beta * nn * (0.5L * m * m + h * m);
        if (lw > shift) shift = lw;
    }
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int k = __builtin_popcount(mask);
        const long double m = pinned + static_cast<long double>(2 * k - n) / nn;
        const long double w = std::exp(beta * nn * (0.5L * m * m + h * m) - shift);
        wsum += w;
        msum += m * w;
    }
    return msum / wsum;
}

// Magnetization of the plain (unconditioned) Curie-Weiss model: dense grid
// scan of the Theorem-1 functional plus golden-section refinement.
inline double theorem1_magnetization(double beta, double h) {
    const auto f = [beta, h](double z) {
        const auto half_xlogx = [](double x) { return x > 0.0 ? 0.5 * x * std::log(x) : 0.0; };
        return -0.5 * beta * z * z - beta * h * z + half_xlogx(1.0 - z) + half_xlogx(1.0 + z);
    };
    const int n = 200001;
    int best = 0;
    double best_f = f(-1.0);
    for (int i = 1; i < n; ++i) {
        const double z = -1.0 + 2.0 * i / (n - 1);
        const double fz = f(z);
        if (fz < best_f) {
            best_f = fz;
            best = i;
        }
    }
    double a = -1.0 + 2.0 * std::max(0, best - 1) / (n - 1);
    double b = -1.0 + 2.0 * std::min(n - 1, best + 1) / (n - 1);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

struct Rng {
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng);
    }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng);
    }
    std::mt19937_64 eng;
};

}  // namespace ccw_test

#endif  // CCW_TEST_ORACLES_HPP
