#include "mbarrier/barrier.hpp"

#include <array>
#include <cmath>
#include <span>

#include "mbarrier/errors.hpp"
#include "mbarrier/vanilla.hpp"

namespace mbarrier {

std::string_view to_string(PriceStatus status) {
    switch (status) {
        case PriceStatus::Live: return "live";
        case PriceStatus::KnockedOut: return "knocked_out";
        case PriceStatus::KnockedIn: return "knocked_in";
        case PriceStatus::Expired: return "expired";
    }
    return "unknown";
}

namespace {

// Neumaier compensated sum.
double compensated_sum(std::span<const double> terms) {
    double sum = 0.0;
    double carry = 0.0;
    for (double v : terms) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    return sum + carry;
}

// exp(log_scale) * N(d) without overflow in the scale factor.
double scaled_cdf(double log_scale, double d) {
    if (std::abs(log_scale) < 700.0) return std::exp(log_scale) * norm_cdf(d);
    return std::exp(log_scale + log_norm_cdf(d));
}

// Four signed terms of the reflected-kernel solution for the payoff
// (S_T - K) on {S_T > log_strike}:
//   e^{-qbar} S N(d1) - K e^{-rbar} N(d1') - e^{-qbar} h (S/h)^{2C} N(d2)
//   + K e^{-rbar} (S/h)^{2C+1} N(d2')
// with the d-arguments built from ln(S/log_strike).
struct KernelTerms {
    std::array<double, 4> terms{};  // A1, -B1, -A2, +B2
    DValues d{};
    double power_factor = 1.0;

    double direct() const { return terms[0] + terms[1]; }
    double image() const { return -(terms[2] + terms[3]); }
};

struct LiveState {
    double log_h;       // ln h(t)
    double x;           // ln(S / h(t)) > 0
    WindowIntegrals w;
};

KernelTerms kernel_terms(const LiveState& s, double S, double K, double log_strike, double C) {
    const double sd = std::sqrt(s.w.sigma2bar);
    const double y = s.log_h - std::log(log_strike);  // ln(h(t)/log_strike)
    const double mu = s.w.rbar - s.w.qbar;

    KernelTerms k;
    k.d.d1 = (s.x + y + mu + 0.5 * s.w.sigma2bar) / sd;
    k.d.d1_prime = k.d.d1 - sd;
    k.d.d2 = (-s.x + y + mu + 0.5 * s.w.sigma2bar) / sd;
    k.d.d2_prime = k.d.d2 - sd;
    k.power_factor = std::exp((2.0 * C + 1.0) * s.x);

    const double disc_q = std::exp(-s.w.qbar);
    const double disc_r = std::exp(-s.w.rbar);
    k.terms[0] = disc_q * S * norm_cdf(k.d.d1);
    k.terms[1] = -K * disc_r * norm_cdf(k.d.d1_prime);
    k.terms[2] = -disc_q * std::exp(s.log_h) * scaled_cdf(2.0 * C * s.x, k.d.d2);
    k.terms[3] = K * disc_r * scaled_cdf((2.0 * C + 1.0) * s.x, k.d.d2_prime);
    return k;
}

void require_positive_spot(double S) {
    if (!(S > 0.0) || !std::isfinite(S)) throw DomainError("spot must be positive and finite");
}

void require_regime(const BarrierContract& c) {
    if (!c.closed_form_regime()) {
        throw RegimeError("closed form needs strike >= terminal barrier (K = " +
                          std::to_string(c.strike) + ", h(T) = " +
                          std::to_string(c.barrier.terminal_level()) +
                          "); use the heat-kernel quadrature pricer");
    }
}

PriceBreakdown base_breakdown(double t, const BarrierContract& c) {
    PriceBreakdown b;
    b.C = c.barrier.C();
    b.barrier_level = c.barrier.level(t);
    if (t < c.expiry) {
        const auto w = WindowIntegrals::over(c.curves(), t, c.expiry);
        b.rbar = w.rbar;
        b.qbar = w.qbar;
        b.sigma2bar = w.sigma2bar;
    }
    return b;
}

void fill_from_kernel(PriceBreakdown& b, const KernelTerms& k) {
    b.d1 = k.d.d1;
    b.d1_prime = k.d.d1_prime;
    b.d2 = k.d.d2;
    b.d2_prime = k.d.d2_prime;
    b.power_factor = k.power_factor;
    b.vanilla_term = k.direct();
    b.image_term = k.image();
}

LiveState live_state(double S, double t, const BarrierContract& c) {
    LiveState s;
    s.log_h = c.barrier.log_level(t);
    s.x = std::log(S) - s.log_h;
    s.w = WindowIntegrals::over(c.curves(), t, c.expiry);
    if (!(s.w.sigma2bar > 0.0)) throw DomainError("integrated variance over [t, T] is zero");
    return s;
}

enum class Payoff { Call, Forward };

// Shared path for the out-style call and the knockout forward.
PriceBreakdown knockout_value(Payoff payoff, double S, double t, const BarrierContract& c) {
    require_positive_spot(S);
    if (t > c.expiry) throw DomainError("valuation time after expiry");
    PriceBreakdown b = base_breakdown(t, c);
    if (S <= b.barrier_level) {
        b.status = PriceStatus::KnockedOut;
        return b;
    }
    if (t == c.expiry) {
        b.status = PriceStatus::Expired;
        b.price = payoff == Payoff::Call ? std::max(0.0, S - c.strike) : S - c.strike;
        b.vanilla_term = b.price;
        return b;
    }
    const LiveState s = live_state(S, t, c);
    const double log_strike = payoff == Payoff::Call ? c.strike : c.barrier.terminal_level();
    const KernelTerms k = kernel_terms(s, S, c.strike, log_strike, c.barrier.C());
    fill_from_kernel(b, k);
    b.price = compensated_sum(k.terms);
    return b;
}

}  // namespace

DValues d_values(double S, double t, const BarrierContract& contract) {
    require_positive_spot(S);
    if (!(t < contract.expiry)) throw DomainError("d_values needs t < T");
    const LiveState s = live_state(S, t, contract);
    return kernel_terms(s, S, contract.strike, contract.strike, contract.barrier.C()).d;
}

PriceBreakdown down_and_out_call(double S, double t, const BarrierContract& contract) {
    require_regime(contract);
    return knockout_value(Payoff::Call, S, t, contract);
}

PriceBreakdown down_and_in_call(double S, double t, const BarrierContract& contract) {
    require_regime(contract);
    PriceBreakdown out = knockout_value(Payoff::Call, S, t, contract);
    const double plain = vanilla_call(S, t, contract.strike, contract.expiry, contract.curves()).price;
    PriceBreakdown b = out;
    b.vanilla_term = plain;
    switch (out.status) {
        case PriceStatus::KnockedOut:
            b.status = PriceStatus::KnockedIn;
            b.price = plain;
            break;
        case PriceStatus::Expired:
            b.price = 0.0;
            break;
        case PriceStatus::Live:
        case PriceStatus::KnockedIn:
            b.price = out.image_term;
            break;
    }
    b.image_term = b.price;
    return b;
}

PriceBreakdown forward_barrier_value(double S, double t, const BarrierContract& contract) {
    return knockout_value(Payoff::Forward, S, t, contract);
}

PriceBreakdown down_and_out_put(double S, double t, const BarrierContract& contract) {
    require_regime(contract);
    require_positive_spot(S);
    if (t > contract.expiry) throw DomainError("valuation time after expiry");
    PriceBreakdown b = base_breakdown(t, contract);
    if (S <= b.barrier_level) {
        b.status = PriceStatus::KnockedOut;
        return b;
    }
    if (t == contract.expiry) {
        b.status = PriceStatus::Expired;
        b.price = b.vanilla_term = std::max(0.0, contract.strike - S);
        return b;
    }
    // p_do = c_do - (c_do - p_do), summed term by term
    const LiveState s = live_state(S, t, contract);
    const double C = contract.barrier.C();
    const KernelTerms call = kernel_terms(s, S, contract.strike, contract.strike, C);
    const KernelTerms fwd =
        kernel_terms(s, S, contract.strike, contract.barrier.terminal_level(), C);
    fill_from_kernel(b, call);
    b.vanilla_term = call.direct() - fwd.direct();
    b.image_term = call.image() - fwd.image();
    std::array<double, 8> all{};
    for (std::size_t i = 0; i < 4; ++i) {
        all[i] = call.terms[i];
        all[4 + i] = -fwd.terms[i];
    }
    b.price = compensated_sum(all);
    return b;
}

PriceBreakdown down_and_in_put(double S, double t, const BarrierContract& contract) {
    PriceBreakdown out = down_and_out_put(S, t, contract);
    const double plain = vanilla_put(S, t, contract.strike, contract.expiry, contract.curves()).price;
    PriceBreakdown b = out;
    b.vanilla_term = plain;
    switch (out.status) {
        case PriceStatus::KnockedOut:
            b.status = PriceStatus::KnockedIn;
            b.price = plain;
            break;
        case PriceStatus::Expired:
            b.price = 0.0;
            break;
        case PriceStatus::Live:
        case PriceStatus::KnockedIn:
            b.price = plain - out.price;
            break;
    }
    b.image_term = b.price;
    return b;
}

PriceBreakdown price_contract(double S, double t, const BarrierContract& contract) {
    const bool out = contract.style == BarrierStyle::DownAndOut;
    if (contract.side == OptionSide::Call) {
        return out ? down_and_out_call(S, t, contract) : down_and_in_call(S, t, contract);
    }
    return out ? down_and_out_put(S, t, contract) : down_and_in_put(S, t, contract);
}

double constant_case_parity_gap(double S, double t, double S_B, double a_rate, double K, double T,
                                double r, double q, double sigma, ParityForm form) {
    if (!(t < T)) throw DomainError("parity gap needs t < T");
    auto curves = std::make_shared<const CurveSet>(CurveSet::constant(r, q, sigma));
    const double C = (a_rate - (r - q)) / (sigma * sigma);
    const BarrierContract call(K, T, OptionSide::Call, BarrierStyle::DownAndOut,
                               MovingBarrier(S_B, C, curves, T));
    const BarrierContract put(K, T, OptionSide::Put, BarrierStyle::DownAndOut, call.barrier);
    const double c_do = down_and_out_call(S, t, call).price;
    const double p_do = down_and_out_put(S, t, put).price;

    const double tau = T - t;
    const double sd = sigma * std::sqrt(tau);
    const double d1 = (std::log(S / S_B) + (r - q + 0.5 * sigma * sigma) * tau) / sd;
    const double d1p = d1 - sd;
    const double d2 = (std::log(S_B / S) + (r - q - 2.0 * a_rate + 0.5 * sigma * sigma) * tau) / sd;
    const double d2p = d2 - sd;
    const double exponent = 1.0 - 2.0 / (sigma * sigma) * (r - q - a_rate);
    const double prefactor = std::exp(exponent * a_rate * tau) * std::pow(S / S_B, exponent);

    const double lhs_arg = form == ParityForm::Corrected ? d1 : d1p;
    const double lhs = p_do + std::exp(-q * tau) * S * norm_cdf(lhs_arg);
    const double rhs = c_do + K * std::exp(-r * tau) * norm_cdf(d1p) +
                       prefactor * (std::exp(-(q + 2.0 * a_rate) * tau) * S_B * S_B / S * norm_cdf(d2) -
                                    K * std::exp(-r * tau) * norm_cdf(d2p));
    return lhs - rhs;
}

}  // namespace mbarrier
