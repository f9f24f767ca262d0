#pragma once

#include "mbarrier/contract.hpp"
#include "mbarrier/curves.hpp"

namespace mbarrier {

/// Standard normal CDF via erfc; accurate to ~1e-16 absolute in both tails.
double norm_cdf(double x);

/// log N(x), finite for arbitrarily negative x.
double log_norm_cdf(double x);

struct VanillaQuote {
    double price = 0.0;
    double d1 = 0.0;
    double d1_prime = 0.0;
    double discount_r = 1.0;  ///< exp(-int r)
    double discount_q = 1.0;  ///< exp(-int q)
};

/// Integrated market inputs over a pricing window [t, T].
struct WindowIntegrals {
    double rbar = 0.0;
    double qbar = 0.0;
    double sigma2bar = 0.0;

    static WindowIntegrals over(const CurveSet& curves, double t, double T);
};

/// Black-Scholes with time-dependent parameters, expressed through the
/// window integrals only. Intrinsic value when sigma2bar == 0.
VanillaQuote black_quote(OptionSide side, double S, double K, const WindowIntegrals& w);

VanillaQuote vanilla_call(double S, double t, double K, double T, const CurveSet& curves);
VanillaQuote vanilla_put(double S, double t, double K, double T, const CurveSet& curves);

inline VanillaQuote vanilla(OptionSide side, double S, double t, double K, double T,
                            const CurveSet& curves) {
    return side == OptionSide::Call ? vanilla_call(S, t, K, T, curves)
                                    : vanilla_put(S, t, K, T, curves);
}

}  // namespace mbarrier
