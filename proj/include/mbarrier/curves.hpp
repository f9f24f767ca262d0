#pragma once

#include <vector>

namespace mbarrier {

/// Piecewise-constant deterministic curve.
///
/// `breakpoints[i]` is the start of interval i; the first breakpoint must be
/// 0 and the last level is held flat to +infinity. Evaluation is
/// right-continuous at breakpoints. Integrals are exact sums of rectangles.
class TermStructure {
public:
    TermStructure(std::vector<double> breakpoints, std::vector<double> values);

    static TermStructure constant(double value);

    double value_at(double t) const;

    /// Exact integral of the curve over [t, T].
    double integral(double t, double T) const;

    /// Exact integral of the squared curve over [t, T].
    double integral_squared(double t, double T) const;

    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double min_value() const noexcept;

private:
    template <class F>
    double integrate_pieces(double t, double T, F&& level) const;

    std::size_t interval_index(double t) const;

    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

/// The market triple r(t), q(t), sigma(t).
class CurveSet {
public:
    static constexpr double kMinVolatility = 1e-8;

    CurveSet(TermStructure r, TermStructure q, TermStructure sigma);

    static CurveSet constant(double r, double q, double sigma);

    const TermStructure& r() const noexcept { return r_; }
    const TermStructure& q() const noexcept { return q_; }
    const TermStructure& sigma() const noexcept { return sigma_; }

    /// Sorted union of all breakpoints strictly inside (t, T).
    std::vector<double> breakpoints_between(double t, double T) const;

private:
    TermStructure r_;
    TermStructure q_;
    TermStructure sigma_;
};

double integral_r(const CurveSet& curves, double t, double T);
double integral_q(const CurveSet& curves, double t, double T);
double integral_sigma2(const CurveSet& curves, double t, double T);

inline double value_at(const TermStructure& structure, double t) { return structure.value_at(t); }

}  // namespace mbarrier
