#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "mbarrier/curves.hpp"
#include "mbarrier/errors.hpp"

using namespace mbarrier;

namespace {

CurveSet two_piece() {
    return CurveSet(TermStructure({0.0, 0.5}, {0.02, 0.04}), TermStructure({0.0, 0.5}, {0.01, -0.01}),
                    TermStructure({0.0, 0.5}, {0.1, 0.3}));
}

CurveSet random_curves(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> gap(0.05, 0.7), rate(-0.05, 0.1), vol(0.05, 0.6);
    auto make = [&](bool positive) {
        std::vector<double> b{0.0}, v;
        const int n = 1 + static_cast<int>(gen() % 5);
        for (int i = 1; i < n; ++i) b.push_back(b.back() + gap(gen));
        for (int i = 0; i < n; ++i) v.push_back(positive ? vol(gen) : rate(gen));
        return TermStructure(b, v);
    };
    return CurveSet(make(false), make(false), make(true));
}

}  // namespace

TEST(Curves, ConstantRateIntegral) {
    const auto c = CurveSet::constant(0.05, 0.0, 0.2);
    EXPECT_DOUBLE_EQ(integral_r(c, 0.0, 2.0), 0.10);
    EXPECT_DOUBLE_EQ(integral_q(c, 0.0, 2.0), 0.0);
    EXPECT_DOUBLE_EQ(integral_sigma2(c, 0.0, 1.0), 0.04);
}

TEST(Curves, TwoPieceIntegrals) {
    const auto c = two_piece();
    EXPECT_NEAR(integral_r(c, 0.0, 1.0), 0.03, 1e-16);
    EXPECT_NEAR(integral_q(c, 0.0, 1.0), 0.0, 1e-17);
    EXPECT_NEAR(integral_sigma2(c, 0.0, 1.0), 0.05, 1e-16);
}

TEST(Curves, EmptyWindowIsZero) {
    const auto c = two_piece();
    for (double t : {0.0, 0.3, 0.5, 2.0}) {
        EXPECT_EQ(integral_r(c, t, t), 0.0);
        EXPECT_EQ(integral_q(c, t, t), 0.0);
        EXPECT_EQ(integral_sigma2(c, t, t), 0.0);
    }
}

TEST(Curves, ValueAtIsRightContinuousAndFlatBeyondLastBreakpoint) {
    const TermStructure r({0.0, 0.5}, {0.02, 0.04});
    EXPECT_EQ(value_at(r, 0.5), 0.04);
    EXPECT_EQ(value_at(r, 0.4999), 0.02);
    EXPECT_EQ(value_at(r, 25.0), 0.04);
    EXPECT_EQ(value_at(TermStructure::constant(0.3), 7.0), 0.3);
}

TEST(Curves, RejectsBadShapes) {
    EXPECT_THROW(TermStructure({}, {}), DomainError);
    EXPECT_THROW(TermStructure({0.0, 0.5}, {0.1}), DomainError);
    EXPECT_THROW(TermStructure({0.1}, {0.1}), DomainError);
    EXPECT_THROW(TermStructure({0.0, 0.5, 0.5}, {0.1, 0.2, 0.3}), DomainError);
    EXPECT_THROW(TermStructure({0.0}, {NAN}), DomainError);
    EXPECT_THROW(CurveSet::constant(0.01, 0.0, 0.0), DomainError);
    EXPECT_THROW(CurveSet::constant(0.01, 0.0, 1e-9), DomainError);
    EXPECT_NO_THROW(CurveSet::constant(-0.01, -0.02, 1e-8));
}

TEST(Curves, DomainErrors) {
    const auto c = two_piece();
    EXPECT_THROW(integral_r(c, 0.6, 0.5), DomainError);
    EXPECT_THROW(integral_sigma2(c, -0.1, 0.5), DomainError);
    EXPECT_THROW(value_at(c.r(), -1.0), DomainError);
}

TEST(CurvesProperty, Additivity) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        const auto c = random_curves(gen);
        double a = u(gen), b = u(gen), m = u(gen);
        if (a > b) std::swap(a, b);
        m = a + (b - a) * (m / 3.0);
        for (auto f : {&integral_r, &integral_q, &integral_sigma2}) {
            const double whole = f(c, a, b);
            const double split = f(c, a, m) + f(c, m, b);
            // scale by the sum of |pieces| so sign-changing rates are judged fairly
            const double scale = std::max(1e-300, std::abs(f(c, a, m)) + std::abs(f(c, m, b)));
            EXPECT_LE(std::abs(whole - split) / scale, 1e-14);
        }
    }
}

TEST(CurvesProperty, VarianceStrictlyIncreasing) {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_curves(gen);
        double prev = 0.0;
        for (double T = 0.01; T < 4.0; T += 0.01) {
            const double v = integral_sigma2(c, 0.0, T);
            ASSERT_GT(v, prev);
            prev = v;
        }
    }
}

TEST(CurvesProperty, AgreesWithAdaptiveQuadrature) {
    using boost::math::quadrature::gauss_kronrod;
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_curves(gen);
        double a = u(gen), b = u(gen);
        if (a > b) std::swap(a, b);
        // split at breakpoints so each piece is smooth for the quadrature
        std::vector<double> pts{a, b};
        for (double p : c.breakpoints_between(a, b)) pts.push_back(p);
        std::sort(pts.begin(), pts.end());
        double r_quad = 0.0, s_quad = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            r_quad += gauss_kronrod<double, 15>::integrate(
                [&](double s) { return value_at(c.r(), s); }, pts[i], pts[i + 1]);
            s_quad += gauss_kronrod<double, 15>::integrate(
                [&](double s) { return std::pow(value_at(c.sigma(), s), 2); }, pts[i], pts[i + 1]);
        }
        EXPECT_NEAR(integral_r(c, a, b), r_quad, 1e-12);
        EXPECT_NEAR(integral_sigma2(c, a, b), s_quad, 1e-12);
    }
}
