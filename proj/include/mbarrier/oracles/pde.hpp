#pragma once

#include "mbarrier/contract.hpp"

namespace mbarrier::oracles {

/// Crank-Nicolson grid on the fixed half-line x = ln(S/h(t)) in (0, x_max).
struct PdeGrid {
    /// 0 selects x_max = max(ln(S/h(t)), ln(K/h(T))) + 8 sqrt(int sigma^2).
    double x_max = 0.0;
    int n_space = 400;
    int n_time = 400;
    /// Leading Crank-Nicolson steps replaced by two implicit half steps each
    /// to damp the payoff kink.
    int rannacher_steps = 2;
};

/// Finite-difference price of the contract on the transformed problem
///   u_t + sigma^2/2 u_xx - (C + 1/2) sigma^2 u_x - r u = 0,  u(0, t) = 0,
/// with the terminal payoff in x and the discounted forward payoff as far
/// field. In-styles are vanilla minus the out price.
double pde_price(double S, double t, const BarrierContract& contract, const PdeGrid& grid = {});

struct PdeCheck {
    double price = 0.0;
    double coarse_price = 0.0;       ///< same solve on the half-resolution grid
    double richardson_error = 0.0;   ///< |price - coarse| / 3
    double tolerance = 0.0;
    bool within_tolerance = false;
};

/// Solves on `grid` and on the half grid and flags the grid as too coarse
/// when the Richardson error estimate exceeds `tolerance`.
PdeCheck pde_price_checked(double S, double t, const BarrierContract& contract,
                           const PdeGrid& grid, double tolerance);

}  // namespace mbarrier::oracles
