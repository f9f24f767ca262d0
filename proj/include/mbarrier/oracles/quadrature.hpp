#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mbarrier::oracles {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  ///< sum of |Kronrod - Gauss| over the final segments
    bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature: the segment with
/// the largest error estimate is bisected until the summed estimate drops
/// below `abs_tol` or `max_segments` is reached. `points` must include both
/// end points; interior points (kinks) become initial segment boundaries.
template <class F>
QuadratureResult adaptive_gauss_kronrod(F&& f, std::vector<double> points, double abs_tol,
                                        std::size_t max_segments = 4000) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using Gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();

    struct Segment {
        double a, b, value, error;
        bool operator<(const Segment& o) const { return error < o.error; }
    };
    auto rule = [&](double a, double b) {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        const double f0 = f(mid);
        double k = f0 * wk[0];
        double g = f0 * wg[0];
        for (std::size_t i = 1; i < x.size(); ++i) {
            const double s = f(mid + half * x[i]) + f(mid - half * x[i]);
            k += s * wk[i];
            if (i % 2 == 0) g += s * wg[i / 2];  // Gauss nodes are the even Kronrod nodes
        }
        return Segment{a, b, half * k, std::abs(half * (k - g))};
    };

    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::priority_queue<Segment> heap;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) heap.push(rule(points[i], points[i + 1]));

    auto totals = [&] {
        QuadratureResult r;
        auto copy = heap;
        while (!copy.empty()) {
            r.value += copy.top().value;
            r.error += copy.top().error;
            copy.pop();
        }
        return r;
    };
    QuadratureResult r = totals();
    while (!heap.empty() && r.error > abs_tol && heap.size() < max_segments) {
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = rule(worst.a, mid);
        const Segment right = rule(mid, worst.b);
        r.error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (r.error <= abs_tol) r = totals();  // running sum drifts; recompute before stopping
    }
    r = totals();
    r.converged = r.error <= abs_tol;
    return r;
}

}  // namespace mbarrier::oracles
