#pragma once

#include <string_view>

#include "mbarrier/contract.hpp"

namespace mbarrier {

enum class PriceStatus {
    Live,        ///< spot above the barrier, closed form evaluated
    KnockedOut,  ///< out-style at or below the barrier: worthless
    KnockedIn,   ///< in-style at or below the barrier: plain vanilla
    Expired,     ///< t == T, intrinsic value
};

std::string_view to_string(PriceStatus status);

/// Closed-form price with its direct-kernel / image-kernel decomposition.
///
/// For out-styles price = vanilla_term - image_term. For calls vanilla_term is
/// V_vanilla(S) and image_term is (S/h)^(2C+1) V_vanilla(h^2/S). For the
/// knockout forward and the put the same split is reported for the combined
/// payoff. For in-styles vanilla_term is the plain vanilla and
/// price = image_term.
struct PriceBreakdown {
    double price = 0.0;
    double vanilla_term = 0.0;
    double image_term = 0.0;
    double d1 = 0.0;
    double d1_prime = 0.0;
    double d2 = 0.0;
    double d2_prime = 0.0;
    double C = 0.0;
    double power_factor = 1.0;  ///< (S/h(t))^(2C+1)
    double rbar = 0.0;
    double qbar = 0.0;
    double sigma2bar = 0.0;
    double barrier_level = 0.0;  ///< h(t)
    PriceStatus status = PriceStatus::Live;
};

struct DValues {
    double d1;
    double d1_prime;
    double d2;
    double d2_prime;
};

/// d-arguments of the closed form: d1 from ln(S/K), d2 from ln(h(t)^2/(S K)).
DValues d_values(double S, double t, const BarrierContract& contract);

PriceBreakdown down_and_out_call(double S, double t, const BarrierContract& contract);
PriceBreakdown down_and_in_call(double S, double t, const BarrierContract& contract);

/// Value of the knockout forward paying S_T - K unless the barrier is
/// touched, i.e. c_do - p_do. Valid for any strike.
PriceBreakdown forward_barrier_value(double S, double t, const BarrierContract& contract);

PriceBreakdown down_and_out_put(double S, double t, const BarrierContract& contract);
PriceBreakdown down_and_in_put(double S, double t, const BarrierContract& contract);

/// Dispatches on the contract's side and style.
PriceBreakdown price_contract(double S, double t, const BarrierContract& contract);

enum class ParityForm {
    Corrected,  ///< e^{-q tau} S N(d1) on the left-hand side
    AsPrinted,  ///< e^{-q tau} S N(d1') on the left-hand side
};

/// Put-call parity gap (left - right) for constant r, q, sigma and the
/// exponential barrier h(t) = S_B exp(-a (T - t)). The barrier prices come
/// from the general pricers; the explicit terms use the constant-parameter
/// d-hat arguments.
double constant_case_parity_gap(double S, double t, double S_B, double a_rate, double K, double T,
                                double r, double q, double sigma,
                                ParityForm form = ParityForm::Corrected);

}  // namespace mbarrier
