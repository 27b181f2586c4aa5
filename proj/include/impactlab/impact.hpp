#pragma once

#include "impactlab/kernels.hpp"

#include <cstdint>
#include <vector>

namespace impactlab {

struct Impulse {
    double time;
    double volume;
};

/// Piecewise-constant trading rate on a strictly increasing grid plus point
/// trades. rates[i] applies on [grid[i], grid[i+1]); positive rates sell
/// into cash per the sign convention q = -xdot.
struct RateProfile {
    std::vector<double> grid;
    std::vector<double> rates;
    std::vector<Impulse> impulses;

    RateProfile() = default;
    RateProfile(std::vector<double> grid_, std::vector<double> rates_,
                std::vector<Impulse> impulses_ = {});

    double start() const { return grid.front(); }
    double end() const { return grid.back(); }
    /// Net traded volume, sum of rate * dt plus impulse volumes.
    double net_volume() const;
    /// Gross volume, same with absolute values; the natural profile scale.
    double gross_volume() const;
    /// Pointwise rate q(t) with the half-open [a, b) interval convention.
    double rate_at(double t) const;

    RateProfile scaled(double factor) const;
};

struct ImpactPath {
    std::vector<double> times;
    std::vector<double> h_values;
};

/// Temporary impact h(t) of the profile under the kernel: analytic interval
/// integrals via step_response plus pointwise kernel values for impulses at
/// or before t. Delta kernel: eta * q(t), erroring on an impulse exactly at t.
double temporary_impact(const RateProfile& p, const KernelSpec& k, double t);

ImpactPath impact_path(const RateProfile& p, const KernelSpec& k,
                       const std::vector<double>& times);

/// Cost per share of a list of point trades,
///   dW = 1/(2Q) sum_ij v_i v_j K(|t_i - t_j|),
/// with the diagonal at K(0). Not defined for the Dirac kernel.
double discrete_cost(const std::vector<Impulse>& trades, const KernelSpec& k);

/// Cost per share of a rate profile, dW = (1/Q) int q(t) h(t) dt, computed
/// by panel-doubling quadrature of the analytic h. Impulses contribute the
/// impact accrued before them plus the 1/2 v^2 K(0) self term. For zero-net
/// (round-trip) profiles the unnormalized work is returned instead.
double continuous_cost(const RateProfile& p, const KernelSpec& k);

/// Constant-rate cost q K_{-2}(T)/T via the twice integrated kernel
/// (Laplace route for the finite-boundary diffusion kernel).
double constant_rate_cost(double q, double T, const KernelSpec& k);

/// Price target for rate_for_price_target.
struct ConstantPriceTarget {
    double ds;
};
struct PowerPriceTarget {
    double scale = 1.0;
    double alpha;
};

/// Trading rate sustaining a prescribed price trajectory under the unbounded
/// diffusion kernel. Constant target: impulse c*dS at start plus rate
/// dS sqrt(kappa/(pi t)); power target S = scale * t^alpha: rate
/// scale * (c alpha t^{alpha-1} + sqrt(kappa) t^{alpha-1/2} G(a+1)/G(a+1/2)).
/// Rates are sampled as exact interval averages over the given grid.
RateProfile rate_for_price_target(const ConstantPriceTarget& target, double c, double kappa,
                                  const std::vector<double>& grid);
RateProfile rate_for_price_target(const PowerPriceTarget& target, double c, double kappa,
                                  const std::vector<double>& grid);

/// Pointwise closed-form rates behind rate_for_price_target (t > 0).
double rate_for_constant_price(double ds, double c, double kappa, double t);
double rate_for_power_price(const PowerPriceTarget& target, double c, double kappa, double t);

/// General Laplace route: inverts q_bar = h_bar / K_bar numerically for any
/// kernel (the finite-boundary fallback). A price jump at t=0 appears as a
/// constant component of q_bar; it is split off before inversion and
/// reported through impulse_volume when non-null.
double rate_for_price_laplace(const LaplaceFn& h_bar, const KernelSpec& k, double t,
                              double* impulse_volume = nullptr);

/// Cycle work int h dq of a zero-net profile; nonnegative for the diffusion
/// and exponential kernels (no dynamic arbitrage).
double round_trip_check(const RateProfile& p, const KernelSpec& k);

/// Deterministic zero-net profile generator for property sweeps: uniform
/// grid of `intervals` pieces over [0, horizon], rates iid uniform in
/// [-1, 1], last interval adjusted to zero the net volume.
RateProfile random_zero_net_profile(std::uint64_t seed, int intervals = 16,
                                    double horizon = 2.0);

} // namespace impactlab
