#include "mbarrier/oracles/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>


#include "mbarrier/errors.hpp"
#include "mbarrier/oracles/quadrature.hpp"

namespace mbarrier::oracles {

HeatCoords to_heat_coords(double S, double t, const BarrierContract& contract) {
    if (!(S > 0.0)) throw DomainError("heat coordinates need a positive spot");
    if (t > contract.expiry) throw DomainError("heat coordinates requested after expiry");
    const double log_h = contract.barrier.log_level(t);
    HeatCoords c;
    c.x = std::log(S) - log_h;
    if (c.x < 0.0) throw DomainError("spot below the barrier has no heat coordinates");
    c.tau = integral_sigma2(contract.curves(), t, contract.expiry);
    c.a_T = contract.barrier.C() + 0.5;
    c.b_t = -integral_r(contract.curves(), t, contract.expiry) - 0.5 * c.a_T * c.a_T * c.tau;
    return c;
}

namespace {

// Integral over [lo, hi] of e^{a x + b} K(x, xi; tau) e^{-a xi} payoff(xi),
// where K is the free Gaussian kernel minus (optionally) its reflection.
QuadratureResult transformed_integral(const HeatCoords& c, double h_T, double K, OptionSide side, double lo,
                              double hi, bool with_image, double tolerance) {
    if (!(hi > lo)) return {0.0, 0.0, true};
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * c.tau);
    const double log_h_T = std::log(h_T);
    auto integrand = [&](double xi) {
        const double dx = c.x - xi;
        const double e1 = c.a_T * (c.x - xi) + c.b_t - dx * dx / (2.0 * c.tau);
        // free kernel minus reflected kernel = free * (1 - e^{-2 x xi / tau})
        const double reflect = with_image ? -std::expm1(-2.0 * c.x * xi / c.tau) : 1.0;
        const double asset = std::exp(e1 + xi + log_h_T);
        const double cash = K * std::exp(e1);
        const double payoff = side == OptionSide::Call ? asset - cash : cash - asset;
        return norm * std::max(payoff, 0.0) * reflect;
    };
    const double centre_cash = c.x - c.a_T * c.tau;
    const double centre_asset = c.x + (1.0 - c.a_T) * c.tau;
    std::vector<double> points{lo, hi};
    for (double centre : {centre_cash, centre_asset}) {
        if (centre > lo && centre < hi) points.push_back(centre);
    }
    return adaptive_gauss_kronrod(integrand, std::move(points), tolerance);
}

}  // namespace

double heat_kernel_price(double S, double t, const BarrierContract& contract,
                         const HeatKernelOptions& options) {
    if (!(S > 0.0)) throw DomainError("spot must be positive");
    if (!(t < contract.expiry)) throw DomainError("heat-kernel pricer needs t < T");

    const double h_t = contract.barrier.level(t);
    const bool out_style = contract.style == BarrierStyle::DownAndOut;
    const double K = contract.strike;
    const double h_T = contract.barrier.terminal_level();
    const double kink = std::log(K / h_T);

    HeatCoords c;
    const bool knocked = S <= h_t;
    if (!knocked) {
        c = to_heat_coords(S, t, contract);
    } else {
        c.x = std::log(S / h_t);
        c.tau = integral_sigma2(contract.curves(), t, contract.expiry);
        c.a_T = contract.barrier.C() + 0.5;
        c.b_t = -integral_r(contract.curves(), t, contract.expiry) - 0.5 * c.a_T * c.a_T * c.tau;
    }
    const double sd = std::sqrt(c.tau);
    const double reach = 12.0 * sd + std::max(std::abs(c.a_T), std::abs(1.0 - c.a_T)) * c.tau;
    const double top = std::max({c.x, kink, 0.0}) + reach;
    const double bottom = std::min({c.x, kink, 0.0}) - reach;

    auto support = [&](bool half_line) {
        double lo = half_line ? 0.0 : bottom;
        double hi = top;
        if (contract.side == OptionSide::Call) {
            lo = std::max(lo, kink);
        } else {
            hi = std::min(hi, kink);
        }
        return std::pair{lo, hi};
    };

    // quadrature target well inside the reported tolerance
    const double target = 0.01 * options.abs_tolerance;
    QuadratureResult out;
    out.converged = true;
    if (!knocked) {
        const auto [lo, hi] = support(true);
        out = transformed_integral(c, h_T, K, contract.side, lo, hi, options.include_image, target);
    }
    QuadratureResult result = out;
    if (!out_style) {
        const auto [lo, hi] = support(false);
        const QuadratureResult plain =
            transformed_integral(c, h_T, K, contract.side, lo, hi, false, target);
        result.value = plain.value - out.value;
        result.error = plain.error + out.error;
    }
    if (result.error > options.abs_tolerance) {
        throw ConvergenceError("heat-kernel quadrature error estimate " +
                                   std::to_string(result.error) + " above tolerance " + std::to_string(options.abs_tolerance),
                               result.error);
    }
    return result.value;
}

}  // namespace mbarrier::oracles
