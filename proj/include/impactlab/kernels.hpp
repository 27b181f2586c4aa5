#pragma once

#include "impactlab/laplace.hpp"

#include <complex>
#include <limits>
#include <string>
#include <variant>

namespace impactlab {

/// Positive infinity marks an unbounded outer boundary.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Dirac kernel: instantaneous impact of scale eta, no memory.
struct DeltaKernel {
    double eta;
};

/// Exponential relaxation, normalized so the time integral equals eta:
/// K(t) = eta * beta * exp(-beta t). The beta -> inf limit recovers the
/// Dirac kernel with the same eta.
struct ExponentialKernel {
    double eta;
    double beta;
};

/// Diffusion kernel: response of a diffusion half-space with storage c at
/// the inner boundary and an impenetrable wall at x2 (kUnbounded for an
/// infinite medium). K(0) = 1/c; unbounded decay ~ 1/sqrt(pi kappa t);
/// finite x2 relaxes to the permanent level 1/(c + x2).
struct DiffusionKernel {
    double c;
    double kappa;
    double x2 = kUnbounded;
};

/// Power-law kernel K(t) = c0 + c1 / (t0 + t)^alpha.
struct PowerKernel {
    double c0;
    double c1;
    double t0;
    double alpha;
};

struct KernelSpec {
    std::variant<DeltaKernel, ExponentialKernel, DiffusionKernel, PowerKernel> family;

    static KernelSpec delta(double eta);
    static KernelSpec exponential(double eta, double beta);
    static KernelSpec diffusion(double c, double kappa, double x2 = kUnbounded);
    static KernelSpec power(double c0, double c1, double t0, double alpha);

    bool is_delta() const { return std::holds_alternative<DeltaKernel>(family); }
    std::string name() const;
};

/// Scaling constants that map dimensionless results to price units at the
/// reporting layer. eta_tilde = eta * sigma / (ADV * S0).
struct MarketParams {
    double sigma;
    double s0;
    double adv;
    double eta_tilde;

    MarketParams(double sigma_, double s0_, double adv_, double eta_tilde_);
    static MarketParams from_eta(double sigma, double s0, double adv, double eta);

    double to_price_fraction(double dimensionless_cost) const { return eta_tilde * dimensionless_cost; }
    double to_currency(double dimensionless_cost) const { return s0 * to_price_fraction(dimensionless_cost); }
};

/// K(t). Not defined for the Dirac kernel.
double eval_kernel(const KernelSpec& k, double t);

/// Laplace transform K(s) for Re(s) > 0.
std::complex<double> eval_kernel_laplace(const KernelSpec& k, std::complex<double> s);

struct KernelAsymptotics {
    double initial;
    std::string tail_law;
    double permanent;
};

/// Initial value, tail decay law and permanent level. Diffusion and Power only.
KernelAsymptotics kernel_asymptotics(const KernelSpec& k);

/// Integrated kernel K_{-1}(t) = int_0^t K; the impact of a unit constant rate.
double step_response(const KernelSpec& k, double t);

/// Twice integrated kernel K_{-2}(T) = int_0^T K_{-1}.
double twice_integrated_kernel(const KernelSpec& k, double t);

/// Constant-rate impact trend for diffusion in D spatial dimensions, up to a
/// constant factor: q t^{1-D/2} for D = 1, q ln t for D = 2, flat for D = 3.
double dimension_asymptote(int dim, double q, double t);

namespace detail {
/// Same formulas as eval_kernel_laplace without the Re(s) > 0 precondition;
/// used on inversion contours that dip into the left half-plane.
std::complex<double> kernel_laplace_raw(const KernelSpec& k, std::complex<double> s);
} // namespace detail

} // namespace impactlab
