#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace impactlab {

using LaplaceFn = std::function<std::complex<double>(std::complex<double>)>;

enum class InversionMethod { talbot, gaver_stehfest };

/// Configuration of the numerical inverse Laplace transform.
/// Talbot runs the fixed-contour variant; `scale` multiplies the contour
/// radius r = scale * order / (5 t). Gaver-Stehfest ignores `scale`, needs
/// an even order and is capped at 16 in double precision.
struct InversionConfig {
    InversionMethod method = InversionMethod::talbot;
    int order = 32;
    double scale = 2.0;
};

/// Thrown when the cross-checked inversion disagrees between methods.
class InversionUnreliable : public std::runtime_error {
  public:
    InversionUnreliable(double talbot, double stehfest, std::string what)
        : std::runtime_error(std::move(what)), talbot_value(talbot), stehfest_value(stehfest) {}
    double talbot_value;
    double stehfest_value;
};

/// Inverse Laplace transform of F at time t > 0 with the configured method.
/// F must be analytic in a right half-plane; Talbot additionally evaluates F
/// on its contour in the left half-plane (the analytic continuation).
double invert_laplace(const LaplaceFn& F, double t, const InversionConfig& cfg = {});

/// Runs Talbot and Gaver-Stehfest and returns the Talbot value if the two
/// agree within rel_tol; otherwise throws InversionUnreliable carrying both.
double invert_laplace_checked(const LaplaceFn& F, double t, double rel_tol = 1e-4,
                              int talbot_order = 32, int stehfest_order = 16);

/// Scaled complementary error function e^{x^2} erfc(x), x >= 0.
double erfcx(double x);

/// Euler gamma for x > 0.
double gamma_fn(double x);

} // namespace impactlab
