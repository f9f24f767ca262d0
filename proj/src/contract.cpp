#include "mbarrier/contract.hpp"

#include <cmath>
#include <string>

#include "mbarrier/errors.hpp"

namespace mbarrier {

std::string_view to_string(OptionSide side) { return side == OptionSide::Call ? "call" : "put"; }

std::string_view to_string(BarrierStyle style) {
    return style == BarrierStyle::DownAndOut ? "down_and_out" : "down_and_in";
}

MovingBarrier::MovingBarrier(double h_T, double C, std::shared_ptr<const CurveSet> curves, double T)
    : h_T_(h_T), C_(C), curves_(std::move(curves)), T_(T) {
    if (!curves_) throw DomainError("barrier needs a curve set");
    if (!(h_T_ > 0.0) || !std::isfinite(h_T_)) {
        throw DomainError("terminal barrier level must be positive and finite");
    }
    if (!std::isfinite(C_) || std::abs(C_) > kMaxAbsC) {
        throw DomainError("barrier constant C must satisfy |C| <= 1e6, got " + std::to_string(C_));
    }
    if (!(T_ >= 0.0) || !std::isfinite(T_)) throw DomainError("barrier expiry must be >= 0");
}

double MovingBarrier::log_level(double t) const {
    if (t > T_) {
        throw DomainError("barrier level requested at t = " + std::to_string(t) + " after expiry");
    }
    const double exponent = integral_r(*curves_, t, T_) - integral_q(*curves_, t, T_) +
                            C_ * integral_sigma2(*curves_, t, T_);
    return std::log(h_T_) - exponent;
}

double MovingBarrier::level(double t) const {
    if (t == T_) return h_T_;
    return std::exp(log_level(t));
}

double MovingBarrier::growth_rate(double t) const {
    if (t > T_) throw DomainError("growth rate requested after expiry");
    const double sigma = curves_->sigma().value_at(t);
    return curves_->r().value_at(t) - curves_->q().value_at(t) + C_ * sigma * sigma;
}

MovingBarrier barrier_from_terminal(double h_T, double C, std::shared_ptr<const CurveSet> curves,
                                    double T) {
    return MovingBarrier(h_T, C, std::move(curves), T);
}

double c_from_levels(double h_t0, double t0, double h_T, const CurveSet& curves, double T) {
    if (!(h_t0 > 0.0) || !(h_T > 0.0)) throw DomainError("barrier levels must be positive");
    if (!(t0 < T)) throw DomainError("c_from_levels needs t0 < T");
    const double var = integral_sigma2(curves, t0, T);
    if (!(var > 0.0)) throw DomainError("degenerate window: integrated variance is zero");
    const double drift = integral_r(curves, t0, T) - integral_q(curves, t0, T);
    return -(drift + std::log(h_t0 / h_T)) / var;
}

BarrierContract::BarrierContract(double strike_, double expiry_, OptionSide side_,
                                 BarrierStyle style_, MovingBarrier barrier_)
    : strike(strike_), expiry(expiry_), side(side_), style(style_), barrier(std::move(barrier_)) {
    if (!(strike > 0.0) || !std::isfinite(strike)) throw DomainError("strike must be positive");
    if (barrier.expiry() != expiry) {
        throw DomainError("barrier expiry does not match contract expiry");
    }
}

}  // namespace mbarrier
