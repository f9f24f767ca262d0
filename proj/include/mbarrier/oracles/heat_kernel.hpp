#pragma once

#include "mbarrier/contract.hpp"

namespace mbarrier::oracles {

/// Heat-equation coordinates of a live contract:
/// x = ln(S/h(t)), tau = int_t^T sigma^2, value = U(x, tau) e^{a x + b}.
struct HeatCoords {
    double x = 0.0;
    double tau = 0.0;
    double a_T = 0.0;  ///< C + 1/2, constant in time for this barrier family
    double b_t = 0.0;  ///< -rbar - (C + 1/2)^2 tau / 2; zero at expiry
};

HeatCoords to_heat_coords(double S, double t, const BarrierContract& contract);

struct HeatKernelOptions {
    double abs_tolerance = 1e-10;
    /// Drop the reflected kernel term. With it gone the integral over the
    /// payoff support is the no-barrier vanilla value.
    bool include_image = true;
};

/// Price by adaptive Gauss-Kronrod quadrature of the half-line heat kernel
/// with its image term. Handles both sides and styles and any strike,
/// including K < h(T). Throws ConvergenceError when the quadrature error
/// estimate exceeds the requested absolute tolerance.
double heat_kernel_price(double S, double t, const BarrierContract& contract,
                         const HeatKernelOptions& options = {});

}  // namespace mbarrier::oracles
