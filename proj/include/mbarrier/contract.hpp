#pragma once

#include <memory>
#include <string_view>

#include "mbarrier/curves.hpp"

namespace mbarrier {

enum class OptionSide { Call, Put };
enum class BarrierStyle { DownAndOut, DownAndIn };

std::string_view to_string(OptionSide side);
std::string_view to_string(BarrierStyle style);

/// Down barrier h(t) = h_T * exp(-int_t^T (r - q + C sigma^2) ds).
///
/// Only barriers of this family can be built; the level at any t follows
/// from (h_T, C) and the curves, so the log-barrier is piecewise linear in
/// time with kinks at curve breakpoints.
class MovingBarrier {
public:
    static constexpr double kMaxAbsC = 1e6;

    MovingBarrier(double h_T, double C, std::shared_ptr<const CurveSet> curves, double T);

    double level(double t) const;
    double log_level(double t) const;

    /// h'(t)/h(t) = r(t) - q(t) + C sigma^2(t), right-continuous at breakpoints.
    double growth_rate(double t) const;

    double terminal_level() const noexcept { return h_T_; }
    double C() const noexcept { return C_; }
    double expiry() const noexcept { return T_; }
    const CurveSet& curves() const noexcept { return *curves_; }
    const std::shared_ptr<const CurveSet>& curves_ptr() const noexcept { return curves_; }

private:
    double h_T_;
    double C_;
    std::shared_ptr<const CurveSet> curves_;
    double T_;
};

MovingBarrier barrier_from_terminal(double h_T, double C, std::shared_ptr<const CurveSet> curves,
                                    double T);

/// The drift constant C that makes the barrier pass through h_t0 at t0 and
/// h_T at T.
double c_from_levels(double h_t0, double t0, double h_T, const CurveSet& curves, double T);

inline double level(const MovingBarrier& barrier, double t) { return barrier.level(t); }
inline double growth_rate(const MovingBarrier& barrier, double t) { return barrier.growth_rate(t); }

struct BarrierContract {
    BarrierContract(double strike, double expiry, OptionSide side, BarrierStyle style,
                    MovingBarrier barrier);

    double strike;
    double expiry;
    OptionSide side;
    BarrierStyle style;
    MovingBarrier barrier;

    /// The closed form needs K >= h(T).
    bool closed_form_regime() const noexcept { return strike >= barrier.terminal_level(); }

    const CurveSet& curves() const noexcept { return barrier.curves(); }
};

}  // namespace mbarrier
