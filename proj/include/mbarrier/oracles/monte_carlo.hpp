#pragma once

#include <cstdint>

#include "mbarrier/contract.hpp"

namespace mbarrier::oracles {

struct McEstimate {
    double price = 0.0;
    double std_error = 0.0;
    std::uint64_t n_paths = 0;
    std::uint64_t n_steps = 0;  ///< steps actually simulated, after breakpoint alignment
    double knockout_fraction = 0.0;
};

/// Monte Carlo price with continuous monitoring through the Brownian-bridge
/// crossing probability.
///
/// The log-distance to the barrier is simulated on a grid of `n_steps`
/// uniform steps merged with every curve breakpoint in (t, T). On such a
/// step both the log-price drift and the log-barrier are linear in time, so
/// per-step moments and the crossing probability
///   p = exp(-2 d_i d_{i+1} / var_i)
/// are exact and the estimator is unbiased for the continuous barrier. Each
/// path carries its survival probability instead of sampling the crossing.
///
/// Path i draws from its own Philox substream, so the estimate depends only
/// on (seed, n_paths, n_steps), not on `n_threads` (0 picks the hardware
/// concurrency).
McEstimate mc_price(double S, double t, const BarrierContract& contract, std::uint64_t n_paths,
                    std::uint32_t n_steps, std::uint64_t seed, unsigned n_threads = 0);

}  // namespace mbarrier::oracles
