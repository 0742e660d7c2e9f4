#include "ccw/mcsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "ccw/exactn.hpp"

namespace ccw {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double acceptance_probability(Dynamics dynamics, double beta_dh) {
    if (dynamics == Dynamics::Metropolis) {
        return beta_dh <= 0.0 ? 1.0 : std::exp(-beta_dh);
    }
    return 1.0 / (1.0 + std::exp(beta_dh));
}

}  // namespace

const char* to_string(Dynamics dynamics) {
    return dynamics == Dynamics::Metropolis ? "metropolis" : "glauber";
}

void ChainConfig::validate() const {
    fm.validate();
    if (!(beta > 0.0) || !std::isfinite(beta) || !std::isfinite(h)) {
        throw std::invalid_argument("ChainConfig: needs finite h and beta > 0");
    }
    if (sweeps <= 0) {
        throw std::invalid_argument("ChainConfig: sweeps must be positive");
    }
    if (burn_in_sweeps < 0) {
        throw std::invalid_argument("ChainConfig: burn_in_sweeps must be >= 0");
    }
}

SpinChain::SpinChain(const ChainConfig& cfg)
    : fm_(cfg.fm), beta_(cfg.beta), h_(cfg.h), dynamics_(cfg.dynamics), rng_(cfg.seed) {
    cfg.validate();
    pinned_m_ =
        static_cast<double>(fm_.n_plus - fm_.n_minus) / static_cast<double>(fm_.n_total);
    spins_.assign(static_cast<std::size_t>(fm_.n_free), 1);
    switch (cfg.start) {
        case StartMode::FieldAligned: {
            const double h_eff = h_ + pinned_m_;
            if (h_eff > 0.0) {
                // all up already
            } else if (h_eff < 0.0) {
                spins_.assign(spins_.size(), static_cast<signed char>(-1));
            } else {
                for (std::size_t i = 1; i < spins_.size(); i += 2) spins_[i] = -1;
            }
            break;
        }
        case StartMode::AllUp:
            break;
        case StartMode::AllDown:
            spins_.assign(spins_.size(), static_cast<signed char>(-1));
            break;
        case StartMode::Random:
            for (auto& s : spins_) s = (rng_() & 1u) ? 1 : -1;
            break;
    }
    k_ = 0;
    for (signed char s : spins_) k_ += s > 0 ? 1 : 0;
    sum_free_ = 2 * k_ - fm_.n_free;
}

double SpinChain::magnetization() const {
    return pinned_m_ + static_cast<double>(sum_free_) / static_cast<double>(fm_.n_total);
}

void SpinChain::reset_counters() {
    proposals_ = 0;
    accepted_ = 0;
}

void SpinChain::propose() {
    const std::size_t i =
        static_cast<std::size_t>(rng_() % static_cast<std::uint64_t>(fm_.n_free));
    ++proposals_;
    const double spin = spins_[i];
    // Flipping one spin moves m by -2*spin/N, so the energy change is O(1):
    //   dH = 2*spin*(m + h) - 2/N.
    const double dh = 2.0 * spin * (magnetization() + h_) -
                      2.0 / static_cast<double>(fm_.n_total);
    const double p = acceptance_probability(dynamics_, beta_ * dh);
    const bool accept = p >= 1.0 || uniform01(rng_) < p;
    if (accept) {
        const signed char flipped = static_cast<signed char>(-spins_[i]);
        spins_[i] = flipped;
        sum_free_ += flipped > 0 ? 2 : -2;
        k_ += flipped > 0 ? 1 : -1;
        ++accepted_;
    }
}

void SpinChain::sweep() {
    for (std::int64_t i = 0; i < fm_.n_free; ++i) propose();
}

McEstimate run_chain(const ChainConfig& cfg) {
    cfg.validate();
    McEstimate est;
    if (cfg.fm.n_free == 0) {
        // Frozen configuration: nothing to sample.
        est.mean_magnetization = static_cast<double>(cfg.fm.n_plus - cfg.fm.n_minus) /
                                 static_cast<double>(cfg.fm.n_total);
        return est;
    }

    SpinChain chain(cfg);
    for (std::int64_t i = 0; i < cfg.burn_in_sweeps; ++i) chain.sweep();
    chain.reset_counters();

    std::vector<double> samples(static_cast<std::size_t>(cfg.sweeps));
    for (auto& sample : samples) {
        chain.sweep();
        sample = chain.magnetization();
    }

    double total = 0.0;
    for (double v : samples) total += v;
    est.mean_magnetization = total / static_cast<double>(samples.size());

    // Batch-means error bar; 20 equal batches for the usual sweep counts.
    const std::int64_t nbatch = std::min<std::int64_t>(20, cfg.sweeps);
    std::vector<double> batch_mean(static_cast<std::size_t>(nbatch));
    const std::int64_t base = cfg.sweeps / nbatch;
    const std::int64_t rem = cfg.sweeps % nbatch;
    std::size_t idx = 0;
    for (std::int64_t b = 0; b < nbatch; ++b) {
        const std::int64_t len = base + (b < rem ? 1 : 0);
        double sum = 0.0;
        for (std::int64_t j = 0; j < len; ++j) sum += samples[idx++];
        batch_mean[static_cast<std::size_t>(b)] = sum / static_cast<double>(len);
    }
    if (nbatch > 1) {
        double bsum = 0.0;
        for (double v : batch_mean) bsum += v;
        const double bmean = bsum / static_cast<double>(nbatch);
        double ss = 0.0;
        for (double v : batch_mean) ss += (v - bmean) * (v - bmean);
        est.std_error = std::sqrt(ss / static_cast<double>(nbatch * (nbatch - 1)));
    }

    est.acceptance_rate = chain.proposals() > 0
                              ? static_cast<double>(chain.accepted()) /
                                    static_cast<double>(chain.proposals())
                              : 0.0;
    est.final_sector = chain.sector();
    return est;
}

double transition_matrix_check(const FiniteModel& fm, double beta, double h,
                               Dynamics dynamics) {
    fm.validate();
    if (fm.n_free > 12) {
        throw std::length_error("transition_matrix_check: n_free > 12 is too large");
    }
    if (fm.n_free == 0) return 0.0;

    const ConditionalMeasureTable table = enumerate_conditional_measure(fm, beta, h);
    const std::vector<double>& pi = table.full;
    const int n = static_cast<int>(fm.n_free);
    const std::size_t size = std::size_t{1} << n;
    const double nn = static_cast<double>(fm.n_total);
    const double pinned = static_cast<double>(fm.n_plus - fm.n_minus) / nn;

    double worst = 0.0;
    for (std::size_t x = 0; x < size; ++x) {
        const int k = std::popcount(x);
        const double m_x = pinned + static_cast<double>(2 * k - n) / nn;
        for (int i = 0; i < n; ++i) {
            if (x & (std::size_t{1} << i)) continue;  // visit each pair once
            const std::size_t y = x | (std::size_t{1} << i);
            const double m_y = pinned + static_cast<double>(2 * (k + 1) - n) / nn;
            // x -> y flips the spin at i from -1 to +1 and vice versa.
            const double dh_xy = 2.0 * -1.0 * (m_x + h) - 2.0 / nn;
            const double dh_yx = 2.0 * +1.0 * (m_y + h) - 2.0 / nn;
            const double pxy = acceptance_probability(dynamics, beta * dh_xy) / n;
            const double pyx = acceptance_probability(dynamics, beta * dh_yx) / n;
            worst = std::max(worst, std::fabs(pi[x] * pxy - pi[y] * pyx));
        }
    }
    return worst;
}

}  // namespace ccw
