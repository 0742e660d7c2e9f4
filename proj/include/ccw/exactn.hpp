#ifndef CCW_EXACTN_HPP
#define CCW_EXACTN_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ccw/model.hpp"

namespace ccw {

/// Exact finite-N moments of the conditional measure.
struct ExactResult {
    /// logsumexp over sectors of log C(n_free, k) + beta*N*(m^2/2 + h*m);
    /// the additive constants that cancel in every ratio are omitted.
    double log_partition = 0.0;
    double mean_magnetization = 0.0;  ///< <m_N>
    double mean_free_spin = 0.0;      ///< mean spin over the free sites (0 if none)
};

/// Both normalizations of the conditional measure over the 2^n_free free-spin
/// assignments, indexed by bitmask (bit i set = free site i carries +1):
/// `full` conditions the complete-graph Hamiltonian, `reduced` normalizes the
/// reduced Hamiltonian on the free sites. They agree entrywise up to rounding.
struct ConditionalMeasureTable {
    std::vector<double> full;
    std::vector<double> reduced;
};

/// One row of a finite-size convergence table.
struct ConvergenceRow {
    std::int64_t n = 0;
    double mean_magnetization = 0.0;
    double abs_error = 0.0;  ///< |<m_N> - m_infinity|
};

/// log C(n, k) from a process-wide immutable table of log-factorials.
double log_binomial(std::int64_t n, std::int64_t k);

/// Exact sector-sum moments in O(n_free): weights are kept in log space, so
/// overflow is impossible by construction. Throws std::invalid_argument on
/// bad parameters.
ExactResult exact_moments(const FiniteModel& fm, double beta, double h);

/// Full enumeration of the conditional measure; throws std::length_error
/// when n_free > 20.
ConditionalMeasureTable enumerate_conditional_measure(const FiniteModel& fm, double beta,
                                                      double h);

/// <m_N> against the limiting magnetization for each requested size. Sizes
/// use rounded pin counts (see FiniteModel::from_fractions) and must leave at
/// least one free site; the limit point must be away from the discontinuity.
std::vector<ConvergenceRow> convergence_study(double s, double r, double beta, double h,
                                              std::span<const std::int64_t> sizes);

}  // namespace ccw

#endif  // CCW_EXACTN_HPP
