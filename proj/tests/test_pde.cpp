#include <gtest/gtest.h>

#include <cmath>

#include "mbarrier/barrier.hpp"
#include "mbarrier/errors.hpp"
#include "mbarrier/oracles/heat_kernel.hpp"
#include "mbarrier/oracles/pde.hpp"

using namespace mbarrier;
using oracles::PdeGrid;
using oracles::pde_price;

namespace {

std::shared_ptr<const CurveSet> two_piece() {
    return std::make_shared<const CurveSet>(TermStructure({0.0, 0.5}, {0.02, 0.06}),
                                            TermStructure({0.0, 0.5}, {0.0, 0.02}),
                                            TermStructure({0.0, 0.5}, {0.15, 0.30}));
}

BarrierContract make(double K, double C, OptionSide side = OptionSide::Call,
                     BarrierStyle style = BarrierStyle::DownAndOut) {
    return BarrierContract(K, 1.0, side, style, MovingBarrier(90.0, C, two_piece(), 1.0));
}

PdeGrid square(int n) {
    PdeGrid g;
    g.n_space = n;
    g.n_time = n;
    return g;
}

}  // namespace

TEST(Pde, ConvergesAtSecondOrder) {
    const auto c = make(100.0, 0.0);
    const double exact = down_and_out_call(100.0, 0.0, c).price;
    double prev = std::abs(pde_price(100.0, 0.0, c, square(100)) - exact);
    for (int n : {200, 400}) {
        const double err = std::abs(pde_price(100.0, 0.0, c, square(n)) - exact);
        EXPECT_GT(prev / err, 3.3) << "n = " << n;
        EXPECT_LT(prev / err, 4.8) << "n = " << n;
        prev = err;
    }
}

TEST(Pde, FineGridWithinRelativeTolerance) {
    for (double C : {-1.0, 0.0, 1.0}) {
        const auto c = make(100.0, C);
        const double exact = down_and_out_call(100.0, 0.0, c).price;
        EXPECT_LT(std::abs(pde_price(100.0, 0.0, c, square(800)) - exact), 5e-4 * exact)
            << "C = " << C;
    }
}

TEST(Pde, ZeroOnBarrier) {
    const auto c = make(100.0, 0.5);
    EXPECT_EQ(pde_price(c.barrier.level(0.25), 0.25, c), 0.0);
    EXPECT_EQ(pde_price(60.0, 0.25, c), 0.0);
}

TEST(Pde, OtherSidesAndStyles) {
    for (auto side : {OptionSide::Call, OptionSide::Put}) {
        for (auto style : {BarrierStyle::DownAndOut, BarrierStyle::DownAndIn}) {
            const auto c = make(105.0, 0.5, side, style);
            const double exact = price_contract(110.0, 0.2, c).price;
            EXPECT_NEAR(pde_price(110.0, 0.2, c, square(400)), exact, 2e-3 * std::max(exact, 1.0));
        }
    }
}

TEST(Pde, StrikeBelowTerminalBarrierAgreesWithHeatKernel) {
    const auto c = make(85.0, 0.0);
    const double hk = oracles::heat_kernel_price(100.0, 0.0, c);
    EXPECT_NEAR(pde_price(100.0, 0.0, c, square(400)), hk, 5e-4 * hk);
}

TEST(Pde, RichardsonFlagsCoarseGrid) {
    const auto c = make(100.0, -1.0);
    const auto coarse = oracles::pde_price_checked(100.0, 0.0, c, square(8), 1e-4);
    EXPECT_FALSE(coarse.within_tolerance);
    EXPECT_NEAR(coarse.richardson_error, std::abs(coarse.price - coarse.coarse_price) / 3.0, 1e-15);
    const auto fine = oracles::pde_price_checked(100.0, 0.0, c, square(400), 1e-2);
    EXPECT_TRUE(fine.within_tolerance);
}

TEST(Pde, RejectsDegenerateGrid) {
    const auto c = make(100.0, 0.0);
    EXPECT_THROW(pde_price(100.0, 0.0, c, square(2)), DomainError);
}
