#include "mbarrier/vanilla.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mbarrier/errors.hpp"

namespace mbarrier {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double log_norm_cdf(double x) {
    if (x > -30.0) return std::log(norm_cdf(x));
    // Asymptotic series of the Mills ratio; relative truncation error < 2e-12 here.
    const double z = 1.0 / (x * x);
    const double series = 1.0 - z * (1.0 - 3.0 * z * (1.0 - 5.0 * z * (1.0 - 7.0 * z)));
    return -0.5 * x * x - std::log(-x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

WindowIntegrals WindowIntegrals::over(const CurveSet& curves, double t, double T) {
    return {integral_r(curves, t, T), integral_q(curves, t, T), integral_sigma2(curves, t, T)};
}

VanillaQuote black_quote(OptionSide side, double S, double K, const WindowIntegrals& w) {
    if (!(S > 0.0) || !(K > 0.0)) throw DomainError("vanilla: spot and strike must be positive");
    VanillaQuote q;
    q.discount_r = std::exp(-w.rbar);
    q.discount_q = std::exp(-w.qbar);
    const double fwd_s = q.discount_q * S;
    const double pv_k = q.discount_r * K;
    if (!(w.sigma2bar > 0.0)) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        q.d1 = q.d1_prime = fwd_s > pv_k ? inf : (fwd_s < pv_k ? -inf : 0.0);
        q.price = side == OptionSide::Call ? std::max(0.0, fwd_s - pv_k)
                                           : std::max(0.0, pv_k - fwd_s);
        return q;
    }
    const double sd = std::sqrt(w.sigma2bar);
    q.d1 = (std::log(S / K) + w.rbar - w.qbar + 0.5 * w.sigma2bar) / sd;
    q.d1_prime = q.d1 - sd;
    if (side == OptionSide::Call) {
        q.price = fwd_s * norm_cdf(q.d1) - pv_k * norm_cdf(q.d1_prime);
    } else {
        q.price = pv_k * norm_cdf(-q.d1_prime) - fwd_s * norm_cdf(-q.d1);
    }
    q.price = std::max(q.price, 0.0);
    return q;
}

namespace {

VanillaQuote vanilla_impl(OptionSide side, double S, double t, double K, double T,
                          const CurveSet& curves) {
    if (!(S > 0.0) || !(K > 0.0)) throw DomainError("vanilla: spot and strike must be positive");
    if (t >= T) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        VanillaQuote q;
        q.d1 = q.d1_prime = S > K ? inf : (S < K ? -inf : 0.0);
        q.price = side == OptionSide::Call ? std::max(0.0, S - K) : std::max(0.0, K - S);
        return q;
    }
    return black_quote(side, S, K, WindowIntegrals::over(curves, t, T));
}

}  // namespace

VanillaQuote vanilla_call(double S, double t, double K, double T, const CurveSet& curves) {
    return vanilla_impl(OptionSide::Call, S, t, K, T, curves);
}

VanillaQuote vanilla_put(double S, double t, double K, double T, const CurveSet& curves) {
    return vanilla_impl(OptionSide::Put, S, t, K, T, curves);
}

}  // namespace mbarrier
