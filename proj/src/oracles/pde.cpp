#include "mbarrier/oracles/pde.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "mbarrier/errors.hpp"
#include "mbarrier/vanilla.hpp"

namespace mbarrier::oracles {

namespace {

struct Tridiagonal {
    std::vector<double> lower, diag, upper;

    explicit Tridiagonal(std::size_t n) : lower(n), diag(n), upper(n) {}

    // Thomas algorithm, overwrites rhs with the solution.
    void solve(std::vector<double>& rhs) const {
        const std::size_t n = diag.size();
        std::vector<double> c(n);
        double denom = diag[0];
        c[0] = upper[0] / denom;
        rhs[0] /= denom;
        for (std::size_t i = 1; i < n; ++i) {
            denom = diag[i] - lower[i] * c[i - 1];
            c[i] = upper[i] / denom;
            rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
        }
        for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
    }
};

// Integral of the payoff over [lo, hi] in x, payoff = (e^x h_T - K)^+ or (K - e^x h_T)^+.
double payoff_integral(OptionSide side, double h_T, double K, double lo, double hi) {
    const double kink = std::log(K / h_T);
    if (side == OptionSide::Call) {
        lo = std::max(lo, kink);
        if (hi <= lo) return 0.0;
        return h_T * (std::exp(hi) - std::exp(lo)) - K * (hi - lo);
    }
    hi = std::min(hi, kink);
    if (hi <= lo) return 0.0;
    return K * (hi - lo) - h_T * (std::exp(hi) - std::exp(lo));
}

double payoff_at(OptionSide side, double h_T, double K, double x) {
    const double s = h_T * std::exp(x);
    return side == OptionSide::Call ? std::max(s - K, 0.0) : std::max(K - s, 0.0);
}

// Four-point Lagrange interpolation on a uniform grid.
double interpolate(const std::vector<double>& u, double dx, double x) {
    const int n = static_cast<int>(u.size()) - 1;
    int i = static_cast<int>(std::floor(x / dx));
    i = std::clamp(i - 1, 0, n - 3);
    const double s = x / dx - i;
    const std::array<double, 4> w{
        -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0,
        s * (s - 2.0) * (s - 3.0) / 2.0,
        -s * (s - 1.0) * (s - 3.0) / 2.0,
        s * (s - 1.0) * (s - 2.0) / 6.0,
    };
    double v = 0.0;
    for (int k = 0; k < 4; ++k) v += w[k] * u[i + k];
    return v;
}

double knockout_pde(double S, double t, const BarrierContract& contract, const PdeGrid& grid) {
    if (grid.n_space < 4 || grid.n_time < 4) throw DomainError("PDE grid needs at least 4 steps");
    const CurveSet& curves = contract.curves();
    const double T = contract.expiry;
    const double K = contract.strike;
    const double h_T = contract.barrier.terminal_level();
    const double C = contract.barrier.C();
    const OptionSide side = contract.side;

    const double x_spot = std::log(S) - contract.barrier.log_level(t);
    const double var = integral_sigma2(curves, t, T);
    double x_max = grid.x_max;
    if (x_max <= 0.0) x_max = std::max(x_spot, std::log(K / h_T)) + 8.0 * std::sqrt(var);
    if (x_spot > x_max) throw DomainError("spot lies beyond the PDE grid");

    const int n = grid.n_space;
    const double dx = x_max / n;
    const double kink = std::log(K / h_T);

    std::vector<double> u(n + 1);
    for (int i = 1; i < n; ++i) {
        const double xi = i * dx;
        const double lo = xi - 0.5 * dx;
        const double hi = xi + 0.5 * dx;
        u[i] = (kink > lo && kink < hi) ? payoff_integral(side, h_T, K, lo, hi) / dx
                                        : payoff_at(side, h_T, K, xi);
    }
    u[0] = 0.0;

    auto far_field = [&](double time) {
        if (side == OptionSide::Put) return 0.0;
        if (time >= T) return payoff_at(side, h_T, K, x_max);
        const double h = contract.barrier.level(time);
        return std::exp(-integral_q(curves, time, T)) * std::exp(x_max) * h -
               K * std::exp(-integral_r(curves, time, T));
    };
    u[n] = payoff_at(side, h_T, K, x_max);

    const std::size_t m = static_cast<std::size_t>(n - 1);
    Tridiagonal lhs(m);
    std::vector<double> rhs(m);

    // One step from t_hi back to t_lo with weight theta on the new level.
    auto step = [&](double t_lo, double t_hi, double theta) {
        const double s = integral_sigma2(curves, t_lo, t_hi);
        const double rho = integral_r(curves, t_lo, t_hi);
        const double adv = -(C + 0.5) * s;
        const double lo_c = 0.5 * s / (dx * dx) - adv / (2.0 * dx);
        const double up_c = 0.5 * s / (dx * dx) + adv / (2.0 * dx);
        const double di_c = -s / (dx * dx) - rho;
        const double g_new = far_field(t_lo);
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t i = k + 1;
            const double explicit_part = lo_c * u[i - 1] + di_c * u[i] + up_c * u[i + 1];
            rhs[k] = u[i] + (1.0 - theta) * explicit_part;
            lhs.lower[k] = -theta * lo_c;
            lhs.diag[k] = 1.0 - theta * di_c;
            lhs.upper[k] = -theta * up_c;
        }
        lhs.lower[0] = 0.0;  // u_0 = 0
        rhs[m - 1] += theta * up_c * g_new;
        lhs.upper[m - 1] = 0.0;
        lhs.solve(rhs);
        for (std::size_t k = 0; k < m; ++k) u[k + 1] = rhs[k];
        u[n] = g_new;
    };

    const int steps = grid.n_time;
    const double dt = (T - t) / steps;
    for (int j = steps; j > 0; --j) {
        const double t_hi = (j == steps) ? T : t + j * dt;
        const double t_lo = (j == 1) ? t : t + (j - 1) * dt;
        if (steps - j < grid.rannacher_steps) {
            const double t_mid = 0.5 * (t_lo + t_hi);
            step(t_mid, t_hi, 1.0);
            step(t_lo, t_mid, 1.0);
        } else {
            step(t_lo, t_hi, 0.5);
        }
    }
    return interpolate(u, dx, x_spot);
}

}  // namespace

double pde_price(double S, double t, const BarrierContract& contract, const PdeGrid& grid) {
    if (!(S > 0.0)) throw DomainError("spot must be positive");
    if (!(t < contract.expiry)) throw DomainError("PDE pricer needs t < T");
    const double h_t = contract.barrier.level(t);
    const double out = S <= h_t ? 0.0 : knockout_pde(S, t, contract, grid);
    if (contract.style == BarrierStyle::DownAndOut) return out;
    return vanilla(contract.side, S, t, contract.strike, contract.expiry, contract.curves()).price -
           out;
}

PdeCheck pde_price_checked(double S, double t, const BarrierContract& contract,
                           const PdeGrid& grid, double tolerance) {
    PdeGrid coarse = grid;
    coarse.n_space = std::max(4, grid.n_space / 2);
    coarse.n_time = std::max(4, grid.n_time / 2);
    PdeCheck check;
    check.price = pde_price(S, t, contract, grid);
    check.coarse_price = pde_price(S, t, contract, coarse);
    check.richardson_error = std::abs(check.price - check.coarse_price) / 3.0;
    check.tolerance = tolerance;
    check.within_tolerance = check.richardson_error <= tolerance;
    return check;
}

}  // namespace mbarrier::oracles
