#include "mbarrier/oracles/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "mbarrier/errors.hpp"
#include "mbarrier/oracles/philox.hpp"

namespace mbarrier::oracles {

namespace {

constexpr std::uint64_t kBlockPaths = 2048;

struct StepTable {
    std::vector<double> drift;    // mean increment of ln(S/h)
    std::vector<double> stdev;    // sqrt of integrated variance
    std::vector<double> inv_var2; // 2 / integrated variance
};

StepTable build_steps(const BarrierContract& contract, double t, std::uint32_t n_steps) {
    const double T = contract.expiry;
    std::vector<double> grid;
    grid.reserve(n_steps + 1);
    for (std::uint32_t i = 0; i <= n_steps; ++i) {
        grid.push_back(i == n_steps ? T : t + (T - t) * i / n_steps);
    }
    const auto extra = contract.curves().breakpoints_between(t, T);
    grid.insert(grid.end(), extra.begin(), extra.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // d(ln S - ln h) = (r - q - sigma^2/2) dt - (r - q + C sigma^2) dt + sigma dW
    //               = -(C + 1/2) sigma^2 dt + sigma dW
    const double a = contract.barrier.C() + 0.5;
    StepTable s;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double var = integral_sigma2(contract.curves(), grid[i], grid[i + 1]);
        s.drift.push_back(-a * var);
        s.stdev.push_back(std::sqrt(var));
        s.inv_var2.push_back(2.0 / var);
    }
    return s;
}

struct BlockSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    double knocked = 0.0;
};

}  // namespace

McEstimate mc_price(double S, double t, const BarrierContract& contract, std::uint64_t n_paths,
                    std::uint32_t n_steps, std::uint64_t seed, unsigned n_threads) {
    if (n_paths < 2) throw DomainError("Monte Carlo needs at least 2 paths");
    if (n_steps < 1) throw DomainError("Monte Carlo needs at least 1 step");
    if (!(t < contract.expiry)) throw DomainError("Monte Carlo needs t < T");
    if (!(S > 0.0)) throw DomainError("spot must be positive");
    const double log_h0 = contract.barrier.log_level(t);
    const double x0 = std::log(S) - log_h0;
    if (!(x0 > 0.0)) throw DomainError("Monte Carlo needs a spot above the barrier");

    const StepTable steps = build_steps(contract, t, n_steps);
    const std::size_t n = steps.drift.size();
    const double discount = std::exp(-integral_r(contract.curves(), t, contract.expiry));
    const double h_T = contract.barrier.terminal_level();
    const double K = contract.strike;
    const bool is_call = contract.side == OptionSide::Call;
    const bool out_style = contract.style == BarrierStyle::DownAndOut;
    const Philox4x32 rng(seed);

    auto simulate_block = [&](std::uint64_t block) {
        BlockSums acc;
        const std::uint64_t first = block * kBlockPaths;
        const std::uint64_t last = std::min(n_paths, first + kBlockPaths);
        for (std::uint64_t path = first; path < last; ++path) {
            double x = x0;
            double survival = 1.0;
            double z[2] = {0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) {
                if ((i & 1u) == 0) {
                    const auto w = rng({static_cast<std::uint32_t>(i >> 1),
                                        static_cast<std::uint32_t>(path),
                                        static_cast<std::uint32_t>(path >> 32), 0u});
                    const double radius = std::sqrt(-2.0 * std::log(to_open_unit(w[0], w[1])));
                    const double angle = 2.0 * std::numbers::pi * to_unit(w[2], w[3]);
                    z[0] = radius * std::cos(angle);
                    z[1] = radius * std::sin(angle);
                }
                const double next = x + steps.drift[i] + steps.stdev[i] * z[i & 1u];
                if (next <= 0.0) {
                    survival = 0.0;
                } else if (survival > 0.0) {
                    survival *= -std::expm1(-x * next * steps.inv_var2[i]);
                }
                x = next;
                if (survival == 0.0 && out_style) break;
            }
            const double terminal = h_T * std::exp(x);
            const double payoff =
                is_call ? std::max(terminal - K, 0.0) : std::max(K - terminal, 0.0);
            const double weight = out_style ? survival : 1.0 - survival;
            const double value = discount * payoff * weight;
            acc.sum += value;
            acc.sum_sq += value * value;
            acc.knocked += 1.0 - survival;
        }
        return acc;
    };

    const std::uint64_t n_blocks = (n_paths + kBlockPaths - 1) / kBlockPaths;
    std::vector<BlockSums> blocks(n_blocks);
    unsigned workers = n_threads ? n_threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_blocks));
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) blocks[b] = simulate_block(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t b = next++; b < n_blocks; b = next++) blocks[b] = simulate_block(b);
            });
        }
    }

    BlockSums total;
    for (const auto& b : blocks) {
        total.sum += b.sum;
        total.sum_sq += b.sum_sq;
        total.knocked += b.knocked;
    }
    const double count = static_cast<double>(n_paths);
    McEstimate est;
    est.price = total.sum / count;
    const double variance =
        std::max(0.0, (total.sum_sq - count * est.price * est.price) / (count - 1.0));
    est.std_error = std::sqrt(variance / count);
    est.n_paths = n_paths;
    est.n_steps = n;
    est.knockout_fraction = std::clamp(total.knocked / count, 0.0, 1.0);
    return est;
}

}  // namespace mbarrier::oracles
