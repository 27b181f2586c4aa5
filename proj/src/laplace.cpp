#include "impactlab/laplace.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace impactlab {

namespace {

// Fixed-contour Talbot rule (Abate & Valko). The contour s(theta) =
// r theta (cot theta + i) wraps around the negative real axis, so F is
// evaluated at Re(s) < 0 for the outer nodes.
double talbot_invert(const LaplaceFn& F, double t, int order, double scale) {
    const int M = order;
    const double r = scale * M / (5.0 * t);
    double acc = 0.5 * std::exp(r * t) * F(std::complex<double>(r, 0.0)).real();
    for (int k = 1; k < M; ++k) {
        const double theta = k * std::numbers::pi / M;
        const double cot = std::cos(theta) / std::sin(theta);
        const std::complex<double> s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const std::complex<double> term =
            std::exp(s * t) * F(s) * std::complex<double>(1.0, sigma);
        acc += term.real();
    }
    return acc * r / M;
}

std::vector<double> stehfest_weights(int n) {
    std::vector<double> v(n + 1, 0.0);
    const int half = n / 2;
    auto fact = [](int m) {
        double f = 1.0;
        for (int i = 2; i <= m; ++i) f *= i;
        return f;
    };
    for (int k = 1; k <= n; ++k) {
        double sum = 0.0;
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
            sum += std::pow(double(j), half) * fact(2 * j) /
                   (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
        }
        v[k] = ((half + k) % 2 == 0 ? 1.0 : -1.0) * sum;
    }
    return v;
}

double stehfest_invert(const LaplaceFn& F, double t, int order) {
    const auto v = stehfest_weights(order);
    const double a = std::numbers::ln2 / t;
    double acc = 0.0;
    for (int k = 1; k <= order; ++k)
        acc += v[k] * F(std::complex<double>(k * a, 0.0)).real();
    return acc * a;
}

void validate(const InversionConfig& cfg) {
    if (cfg.order < 6) throw std::invalid_argument("inversion order must be >= 6");
    if (cfg.method == InversionMethod::gaver_stehfest) {
        if (cfg.order % 2 != 0)
            throw std::invalid_argument("gaver_stehfest order must be even");
        if (cfg.order > 16)
            throw std::invalid_argument("gaver_stehfest order capped at 16 in double precision");
    }
    if (!(cfg.scale > 0.0)) throw std::invalid_argument("inversion scale must be positive");
}

} // namespace

double invert_laplace(const LaplaceFn& F, double t, const InversionConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("invert_laplace requires t > 0");
    validate(cfg);
    if (cfg.method == InversionMethod::talbot)
        return talbot_invert(F, t, cfg.order, cfg.scale);
    return stehfest_invert(F, t, cfg.order);
}

double invert_laplace_checked(const LaplaceFn& F, double t, double rel_tol,
                              int talbot_order, int stehfest_order) {
    const double ft = invert_laplace(F, t, {InversionMethod::talbot, talbot_order, 2.0});
    const double fs = invert_laplace(F, t, {InversionMethod::gaver_stehfest, stehfest_order, 2.0});
    const double denom = std::max({std::abs(ft), std::abs(fs), 1e-300});
    if (std::abs(ft - fs) / denom > rel_tol)
        throw InversionUnreliable(ft, fs,
                                  "inversion unreliable: talbot=" + std::to_string(ft) +
                                      " gaver_stehfest=" + std::to_string(fs));
    return ft;
}

double erfcx(double x) {
    if (x < 0.0) throw std::domain_error("erfcx requires x >= 0");
    if (x < 4.2) return std::exp(x * x) * std::erfc(x);
    // Laplace continued fraction
    //   sqrt(pi) erfcx(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    // evaluated with modified Lentz; converges fast for x >= 4.
    const double tiny = 1e-300;
    double f = tiny, C = f, D = 0.0;
    for (int j = 1; j < 200; ++j) {
        const double a = j == 1 ? 1.0 : (j - 1) / 2.0;
        D = x + a * D;
        if (D == 0.0) D = tiny;
        C = x + a / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        const double delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return f / std::sqrt(std::numbers::pi);
}

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn requires x > 0");
    return std::tgamma(x);
}

} // namespace impactlab
