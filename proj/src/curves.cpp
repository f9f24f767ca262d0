#include "mbarrier/curves.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mbarrier/errors.hpp"

namespace mbarrier {

TermStructure::TermStructure(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty()) {
        throw DomainError("term structure needs at least one interval");
    }
    if (breakpoints_.size() != values_.size()) {
        throw DomainError("term structure: " + std::to_string(breakpoints_.size()) +
                          " breakpoints but " + std::to_string(values_.size()) + " values");
    }
    if (breakpoints_.front() != 0.0) {
        throw DomainError("term structure: first breakpoint must be 0");
    }
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i]) || !std::isfinite(values_[i])) {
            throw DomainError("term structure: non-finite entry at index " + std::to_string(i));
        }
        if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1])) {
            throw DomainError("term structure: breakpoints must be strictly increasing");
        }
    }
}

TermStructure TermStructure::constant(double value) { return TermStructure({0.0}, {value}); }

std::size_t TermStructure::interval_index(double t) const {
    // right-continuous: t == breakpoints_[i] belongs to interval i
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1;
}

double TermStructure::value_at(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("value_at: time " + std::to_string(t) + " outside [0, inf)");
    }
    return values_[interval_index(t)];
}

template <class F>
double TermStructure::integrate_pieces(double t, double T, F&& level) const {
    if (!(t >= 0.0) || !std::isfinite(T)) {
        throw DomainError("integral: window start must be >= 0 and end finite");
    }
    if (t > T) {
        throw DomainError("integral: window start " + std::to_string(t) + " after end " +
                          std::to_string(T));
    }
    double sum = 0.0;
    std::size_t i = interval_index(t);
    double lo = t;
    while (lo < T) {
        const double hi = (i + 1 < breakpoints_.size()) ? std::min(breakpoints_[i + 1], T) : T;
        sum += level(values_[i]) * (hi - lo);
        lo = hi;
        ++i;
    }
    return sum;
}

double TermStructure::integral(double t, double T) const {
    return integrate_pieces(t, T, [](double v) { return v; });
}

double TermStructure::integral_squared(double t, double T) const {
    return integrate_pieces(t, T, [](double v) { return v * v; });
}

double TermStructure::min_value() const noexcept {
    return *std::min_element(values_.begin(), values_.end());
}

CurveSet::CurveSet(TermStructure r, TermStructure q, TermStructure sigma)
    : r_(std::move(r)), q_(std::move(q)), sigma_(std::move(sigma)) {
    if (!(sigma_.min_value() >= kMinVolatility)) {
        throw DomainError("volatility must be >= 1e-8 everywhere");
    }
}

CurveSet CurveSet::constant(double r, double q, double sigma) {
    return CurveSet(TermStructure::constant(r), TermStructure::constant(q),
                    TermStructure::constant(sigma));
}

std::vector<double> CurveSet::breakpoints_between(double t, double T) const {
    std::vector<double> out;
    for (const TermStructure* s : {&r_, &q_, &sigma_}) {
        for (double b : s->breakpoints()) {
            if (b > t && b < T) out.push_back(b);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double integral_r(const CurveSet& curves, double t, double T) { return curves.r().integral(t, T); }

double integral_q(const CurveSet& curves, double t, double T) { return curves.q().integral(t, T); }

double integral_sigma2(const CurveSet& curves, double t, double T) {
    return curves.sigma().integral_squared(t, T);
}

}  // namespace mbarrier
