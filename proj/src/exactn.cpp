#include "ccw/exactn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "ccw/solver.hpp"

namespace ccw {

namespace {

// Process-wide log-factorial table. Snapshots are immutable; growth copies
// into a fresh vector so concurrent readers keep stable data.
std::shared_ptr<const std::vector<double>> log_factorials(std::int64_t n) {
    static std::mutex mutex;
    static std::shared_ptr<const std::vector<double>> table =
        std::make_shared<const std::vector<double>>(1, 0.0);
    std::lock_guard<std::mutex> lock(mutex);
    if (static_cast<std::int64_t>(table->size()) <= n) {
        std::vector<double> grown(*table);
        grown.reserve(static_cast<std::size_t>(n) + 1);
        while (static_cast<std::int64_t>(grown.size()) <= n) {
            grown.push_back(grown.back() + std::log(static_cast<double>(grown.size())));
        }
        table = std::make_shared<const std::vector<double>>(std::move(grown));
    }
    return table;
}

void check_thermal_args(double beta, double h, const char* who) {
    if (!(beta > 0.0) || !std::isfinite(beta) || !std::isfinite(h)) {
        throw std::invalid_argument(std::string(who) + ": needs finite h and beta > 0");
    }
}

}  // namespace

double log_binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) {
        throw std::invalid_argument("log_binomial: needs 0 <= k <= n");
    }
    const auto lf = log_factorials(n);
    return (*lf)[n] - (*lf)[k] - (*lf)[n - k];
}

ExactResult exact_moments(const FiniteModel& fm, double beta, double h) {
    fm.validate();
    check_thermal_args(beta, h, "exact_moments");
    const std::int64_t n = fm.n_free;
    const double nn = static_cast<double>(fm.n_total);
    const double pinned = fm.s_n() - fm.r_n();
    const auto lf = log_factorials(n);

    const auto log_weight = [&](std::int64_t k, double& m) {
        m = pinned + static_cast<double>(2 * k - n) / nn;
        const double log_choose = (*lf)[n] - (*lf)[k] - (*lf)[n - k];
        return log_choose + beta * nn * (0.5 * m * m + h * m);
    };

    double max_lw = -std::numeric_limits<double>::infinity();
    for (std::int64_t k = 0; k <= n; ++k) {
        double m;
        max_lw = std::max(max_lw, log_weight(k, m));
    }

    double wsum = 0.0;
    double msum = 0.0;
    double fsum = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) {
        double m;
        const double w = std::exp(log_weight(k, m) - max_lw);
        wsum += w;
        msum += m * w;
        if (n > 0) {
            fsum += static_cast<double>(2 * k - n) / static_cast<double>(n) * w;
        }
    }

    ExactResult out;
    out.log_partition = max_lw + std::log(wsum);
    out.mean_magnetization = msum / wsum;
    out.mean_free_spin = n > 0 ? fsum / wsum : 0.0;
    return out;
}

ConditionalMeasureTable enumerate_conditional_measure(const FiniteModel& fm, double beta,
                                                      double h) {
    fm.validate();
    check_thermal_args(beta, h, "enumerate_conditional_measure");
    if (fm.n_free > 20) {
        throw std::length_error("enumerate_conditional_measure: n_free > 20 is too large");
    }
    const int n = static_cast<int>(fm.n_free);
    const std::size_t size = std::size_t{1} << n;
    const double nn = static_cast<double>(fm.n_total);
    const double pinned_plus_h = (fm.s_n() - fm.r_n()) + h;

    // Per-sector log-weights; every configuration in a sector shares them.
    // The additive constants relating the two Hamiltonians drop out after
    // normalization, which is exactly the equivalence this table exhibits.
    std::vector<double> lw_full(n + 1), lw_reduced(n + 1);
    double max_full = -std::numeric_limits<double>::infinity();
    double max_reduced = max_full;
    for (int k = 0; k <= n; ++k) {
        lw_full[k] = -beta * nn * hamiltonian_per_site(fm, h, k);
        const double mf = static_cast<double>(2 * k - n);  // free-spin sum
        lw_reduced[k] = beta * (mf * mf / (2.0 * nn) + pinned_plus_h * mf);
        max_full = std::max(max_full, lw_full[k]);
        max_reduced = std::max(max_reduced, lw_reduced[k]);
    }

    ConditionalMeasureTable table;
    table.full.resize(size);
    table.reduced.resize(size);
    double sum_full = 0.0;
    double sum_reduced = 0.0;
    for (std::size_t mask = 0; mask < size; ++mask) {
        const int k = std::popcount(mask);
        sum_full += table.full[mask] = std::exp(lw_full[k] - max_full);
        sum_reduced += table.reduced[mask] = std::exp(lw_reduced[k] - max_reduced);
    }
    for (std::size_t mask = 0; mask < size; ++mask) {
        table.full[mask] /= sum_full;
        table.reduced[mask] /= sum_reduced;
    }
    return table;
}

std::vector<ConvergenceRow> convergence_study(double s, double r, double beta, double h,
                                              std::span<const std::int64_t> sizes) {
    ModelParams p{beta, s, r, h};
    p.validate();
    const double m_inf = specific_magnetization(p);

    std::vector<ConvergenceRow> rows;
    rows.reserve(sizes.size());
    for (const std::int64_t n : sizes) {
        const FiniteModel fm = FiniteModel::from_fractions(n, s, r);
        if (fm.n_free == 0) {
            throw std::invalid_argument("convergence_study: no free sites at N = " +
                                        std::to_string(n));
        }
        const ExactResult er = exact_moments(fm, beta, h);
        rows.push_back({n, er.mean_magnetization, std::fabs(er.mean_magnetization - m_inf)});
    }
    return rows;
}

}  // namespace ccw
