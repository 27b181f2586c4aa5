#include "impactlab/kernels.hpp"

#include <cmath>
#include <numbers>

namespace impactlab {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be strictly positive");
}

// Complex quadrature of int_0^inf e^{-st} g(t) dt for Re(s) > 0 with
// g(t) = (t0 + t)^{-alpha}: composite Simpson with panel doubling, truncated
// where the exponential factor is negligible.
std::complex<double> laplace_of_power_tail(double c1, double t0, double alpha,
                                           std::complex<double> s) {
    const double upper = 42.0 / s.real();
    auto integrand = [&](double t) {
        return std::exp(-s * t) * std::pow(t0 + t, -alpha);
    };
    auto simpson = [&](int n) {
        const double h = upper / n;
        std::complex<double> acc = integrand(0.0) + integrand(upper);
        for (int i = 1; i < n; ++i)
            acc += integrand(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
        return acc * (h / 3.0);
    };
    std::complex<double> prev = simpson(256);
    for (int n = 512; n <= 1 << 18; n *= 2) {
        const std::complex<double> cur = simpson(n);
        if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) return c1 * cur;
        prev = cur;
    }
    return c1 * prev;
}

double diffusion_scaled_time(const DiffusionKernel& d, double t) {
    return d.kappa * t / (d.c * d.c);
}

} // namespace

KernelSpec KernelSpec::delta(double eta) {
    require_positive(eta, "eta");
    return {DeltaKernel{eta}};
}

KernelSpec KernelSpec::exponential(double eta, double beta) {
    require_positive(eta, "eta");
    require_positive(beta, "beta");
    return {ExponentialKernel{eta, beta}};
}

KernelSpec KernelSpec::diffusion(double c, double kappa, double x2) {
    require_positive(c, "c");
    require_positive(kappa, "kappa");
    if (!(x2 > 0.0)) throw std::invalid_argument("x2 must be positive or kUnbounded");
    return {DiffusionKernel{c, kappa, x2}};
}

KernelSpec KernelSpec::power(double c0, double c1, double t0, double alpha) {
    if (c0 < 0.0) throw std::invalid_argument("c0 must be nonnegative");
    require_positive(c1, "c1");
    require_positive(t0, "t0");
    require_positive(alpha, "alpha");
    return {PowerKernel{c0, c1, t0, alpha}};
}

std::string KernelSpec::name() const {
    return std::visit(
        [](const auto& k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, DeltaKernel>) return "delta";
            else if constexpr (std::is_same_v<T, ExponentialKernel>) return "exponential";
            else if constexpr (std::is_same_v<T, DiffusionKernel>) return "diffusion";
            else return "power";
        },
        family);
}

MarketParams::MarketParams(double sigma_, double s0_, double adv_, double eta_tilde_)
    : sigma(sigma_), s0(s0_), adv(adv_), eta_tilde(eta_tilde_) {
    require_positive(sigma, "sigma");
    require_positive(s0, "s0");
    require_positive(adv, "adv");
    require_positive(eta_tilde, "eta_tilde");
}

MarketParams MarketParams::from_eta(double sigma, double s0, double adv, double eta) {
    require_positive(eta, "eta");
    return MarketParams(sigma, s0, adv, eta * sigma / (adv * s0));
}

double eval_kernel(const KernelSpec& k, double t) {
    if (t < 0.0) throw std::domain_error("eval_kernel requires t >= 0");
    return std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, DeltaKernel>) {
                throw std::domain_error("Dirac kernel has no pointwise evaluation");
            } else if constexpr (std::is_same_v<T, ExponentialKernel>) {
                return fam.eta * fam.beta * std::exp(-fam.beta * t);
            } else if constexpr (std::is_same_v<T, DiffusionKernel>) {
                if (t == 0.0) return 1.0 / fam.c;
                if (fam.x2 == kUnbounded)
                    return erfcx(std::sqrt(diffusion_scaled_time(fam, t))) / fam.c;
                const KernelSpec spec{fam};
                return invert_laplace(
                    [&](std::complex<double> s) { return detail::kernel_laplace_raw(spec, s); }, t);
            } else {
                return fam.c0 + fam.c1 * std::pow(fam.t0 + t, -fam.alpha);
            }
        },
        k.family);
}

std::complex<double> detail::kernel_laplace_raw(const KernelSpec& k, std::complex<double> s) {
    return std::visit(
        [&](const auto& fam) -> std::complex<double> {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, DeltaKernel>) {
                return {fam.eta, 0.0};
            } else if constexpr (std::is_same_v<T, ExponentialKernel>) {
                return fam.eta * fam.beta / (s + fam.beta);
            } else if constexpr (std::is_same_v<T, DiffusionKernel>) {
                if (fam.x2 == kUnbounded)
                    return 1.0 / (fam.c * s + std::sqrt(s * fam.kappa));
                const std::complex<double> root = std::sqrt(s / fam.kappa);
                return 1.0 / (fam.c * s + std::sqrt(s * fam.kappa) * std::tanh(root * fam.x2));
            } else {
                return fam.c0 / s + laplace_of_power_tail(fam.c1, fam.t0, fam.alpha, s);
            }
        },
        k.family);
}

std::complex<double> eval_kernel_laplace(const KernelSpec& k, std::complex<double> s) {
    if (!(s.real() > 0.0)) throw std::domain_error("eval_kernel_laplace requires Re(s) > 0");
    return detail::kernel_laplace_raw(k, s);
}

KernelAsymptotics kernel_asymptotics(const KernelSpec& k) {
    return std::visit(
        [&](const auto& fam) -> KernelAsymptotics {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, DiffusionKernel>) {
                const double permanent = fam.x2 == kUnbounded ? 0.0 : 1.0 / (fam.c + fam.x2);
                return {1.0 / fam.c, "1/sqrt(pi*kappa*t)", permanent};
            } else if constexpr (std::is_same_v<T, PowerKernel>) {
                return {fam.c0 + fam.c1 * std::pow(fam.t0, -fam.alpha), "c1/t^alpha", fam.c0};
            } else {
                throw std::domain_error("asymptotics trivial for delta/exponential kernels");
            }
        },
        k.family);
}

double step_response(const KernelSpec& k, double t) {
    if (t < 0.0) throw std::domain_error("step_response requires t >= 0");
    return std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, DeltaKernel>) {
                return fam.eta;
            } else if constexpr (std::is_same_v<T, ExponentialKernel>) {
                return fam.eta * -std::expm1(-fam.beta * t);
            } else if constexpr (std::is_same_v<T, DiffusionKernel>) {
                if (t == 0.0) return 0.0;
                if (fam.x2 == kUnbounded) {
                    const double tt = diffusion_scaled_time(fam, t);
                    double g;
                    if (tt < 1e-6) {
                        // series of erfcx(sqrt(tt)) - 1 + 2 sqrt(tt/pi)
                        g = tt - 4.0 / (3.0 * std::sqrt(std::numbers::pi)) * std::pow(tt, 1.5) +
                            tt * tt / 2.0;
                    } else {
                        g = erfcx(std::sqrt(tt)) - 1.0 + 2.0 * std::sqrt(tt / std::numbers::pi);
                    }
                    return fam.c / fam.kappa * g;
                }
                const KernelSpec spec{fam};
                return invert_laplace(
                    [&](std::complex<double> s) { return detail::kernel_laplace_raw(spec, s) / s; },
                    t);
            } else {
                const double tail =
                    fam.alpha == 1.0
                        ? fam.c1 * std::log1p(t / fam.t0)
                        : fam.c1 *
                              (std::pow(fam.t0 + t, 1.0 - fam.alpha) - std::pow(fam.t0, 1.0 - fam.alpha)) /
                              (1.0 - fam.alpha);
                return fam.c0 * t + tail;
            }
        },
        k.family);
}

double twice_integrated_kernel(const KernelSpec& k, double t) {
    if (t < 0.0) throw std::domain_error("twice_integrated_kernel requires t >= 0");
    if (t == 0.0) return 0.0;
    return std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, DeltaKernel>) {
                return fam.eta * t;
            } else if constexpr (std::is_same_v<T, ExponentialKernel>) {
                return fam.eta * (t + std::expm1(-fam.beta * t) / fam.beta);
            } else if constexpr (std::is_same_v<T, DiffusionKernel>) {
                if (fam.x2 == kUnbounded) {
                    const double tt = diffusion_scaled_time(fam, t);
                    const double scale = fam.c * fam.c * fam.c / (fam.kappa * fam.kappa);
                    if (tt < 1e-6)
                        return scale * (tt * tt / 2.0 -
                                        8.0 / (15.0 * std::sqrt(std::numbers::pi)) * std::pow(tt, 2.5) +
                                        tt * tt * tt / 6.0);
                    const double g = erfcx(std::sqrt(tt)) - 1.0 + 2.0 * std::sqrt(tt / std::numbers::pi) -
                                     tt + 4.0 / (3.0 * std::sqrt(std::numbers::pi)) * std::pow(tt, 1.5);
                    return scale * g;
                }
                const KernelSpec spec{fam};
                return invert_laplace(
                    [&](std::complex<double> s) {
                        return detail::kernel_laplace_raw(spec, s) / (s * s);
                    },
                    t);
            } else {
                // int_0^t of the analytic step response
                double tail;
                if (fam.alpha == 1.0) {
                    tail = fam.c1 * ((fam.t0 + t) * std::log1p(t / fam.t0) - t);
                } else if (fam.alpha == 2.0) {
                    tail = fam.c1 * (std::log1p(t / fam.t0) - t / (fam.t0 + t));
                } else {
                    const double a = fam.alpha;
                    tail = fam.c1 / (1.0 - a) *
                           ((std::pow(fam.t0 + t, 2.0 - a) - std::pow(fam.t0, 2.0 - a)) / (2.0 - a) -
                            std::pow(fam.t0, 1.0 - a) * t);
                }
                return fam.c0 * t * t / 2.0 + tail;
            }
        },
        k.family);
}

double dimension_asymptote(int dim, double q, double t) {
    if (dim < 1 || dim > 3) throw std::domain_error("dimension must be 1, 2 or 3");
    if (!(t > 1.0)) throw std::domain_error("dimension_asymptote is the t > 1 asymptotic regime");
    switch (dim) {
        case 1: return q * std::sqrt(t);
        case 2: return q * std::log(t);
        default: return q; // 1 - D/2 < 0: the trend saturates
    }
}

} // namespace impactlab
