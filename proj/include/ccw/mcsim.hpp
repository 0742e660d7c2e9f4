#ifndef CCW_MCSIM_HPP
#define CCW_MCSIM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "ccw/model.hpp"

namespace ccw {

enum class Dynamics {
    Metropolis,  ///< accept with min(1, exp(-beta*dH))
    Glauber,     ///< accept with 1/(1 + exp(beta*dH))
};

/// Initial free-spin configuration.
enum class StartMode {
    FieldAligned,  ///< all spins at sign(h_eff); alternating when h_eff = 0
    AllUp,
    AllDown,
    Random,  ///< hot start, drawn from the chain's own generator
};

const char* to_string(Dynamics dynamics);

/// Single-chain run description. One sweep proposes n_free single-spin flips.
struct ChainConfig {
    FiniteModel fm;
    double beta = 1.0;
    double h = 0.0;
    std::uint64_t seed = 0;
    std::int64_t sweeps = 0;
    std::int64_t burn_in_sweeps = 0;
    Dynamics dynamics = Dynamics::Metropolis;
    StartMode start = StartMode::FieldAligned;

    void validate() const;
};

/// Equilibrium estimate with a batch-means error bar (20 batches when the
/// measurement run has at least 20 sweeps).
struct McEstimate {
    double mean_magnetization = 0.0;
    double std_error = 0.0;
    double acceptance_rate = 0.0;  ///< over the post-burn-in proposals
    std::int64_t final_sector = 0;
};

/// Name of the generator recorded in reproducibility metadata.
inline constexpr const char* kRngName = "mt19937_64";

/// Single-spin-flip chain over the free sites. Only the sector statistic k
/// enters the energy, so each proposal costs O(1). The chain owns all of its
/// state; identical configs produce identical trajectories.
class SpinChain {
  public:
    explicit SpinChain(const ChainConfig& cfg);

    /// Proposes n_free flips.
    void sweep();

    double magnetization() const;  ///< per-site m including the pinned spins
    std::int64_t sector() const { return k_; }
    std::int64_t proposals() const { return proposals_; }
    std::int64_t accepted() const { return accepted_; }
    void reset_counters();

  private:
    void propose();

    FiniteModel fm_;
    double beta_;
    double h_;
    Dynamics dynamics_;
    double pinned_m_;  // (n_plus - n_minus)/N
    std::vector<signed char> spins_;
    std::int64_t k_ = 0;         // +1 count among free sites
    std::int64_t sum_free_ = 0;  // = 2k - n_free
    std::mt19937_64 rng_;
    std::int64_t proposals_ = 0;
    std::int64_t accepted_ = 0;
};

/// Runs burn-in plus measurement sweeps and aggregates the estimate.
/// Identical (seed, cfg) pairs yield bit-identical results.
McEstimate run_chain(const ChainConfig& cfg);

/// Builds the explicit single-flip transition matrix over the 2^n_free
/// states and returns the largest detailed-balance violation
/// max |pi(x)P(x,y) - pi(y)P(y,x)| against the exactly enumerated measure.
/// Throws std::length_error when n_free > 12.
double transition_matrix_check(const FiniteModel& fm, double beta, double h,
                               Dynamics dynamics);

}  // namespace ccw

#endif  // CCW_MCSIM_HPP
