#include <doctest.h>

#include "impactlab/laplace.hpp"

#include <cmath>
#include <numbers>

using namespace impactlab;

namespace {

// Known transform pairs; the analytic values are exact or frozen from a
// high-precision evaluation of the closed forms.
struct Pair {
    const char* name;
    LaplaceFn transform;
    double (*exact)(double);
    double t_hi_acc;   // Talbot accuracy asserted on [1e-3, t_hi_acc]
    double t_hi_cross; // Talbot/Gaver-Stehfest agreement asserted up to here
};

// e^{-2t}: the target underflows past t ~ 350, the Talbot roundoff floor
// (~1e-11 absolute) dominates past t ~ 6, and Gaver-Stehfest truncation at
// order 16 loses 1e-4 relative once the value decays below ~3% of its
// initial scale (t ~ 1.8). The other pairs decay algebraically and hold over
// the full range.
const Pair kPairs[] = {
    {"step", [](std::complex<double> s) { return 1.0 / s; }, [](double) { return 1.0; }, 1e3,
     1e3},
    {"ramp", [](std::complex<double> s) { return 1.0 / (s * s); }, [](double t) { return t; },
     1e3, 1e3},
    {"exponential", [](std::complex<double> s) { return 1.0 / (s + 2.0); },
     [](double t) { return std::exp(-2.0 * t); }, 5.0, 1.75},
    {"sqrt_kernel", [](std::complex<double> s) { return 1.0 / (s + std::sqrt(s)); },
     [](double t) { return erfcx(std::sqrt(t)); }, 1e3, 1e3},
    {"inv_sqrt", [](std::complex<double> s) { return 1.0 / std::sqrt(s); },
     [](double t) { return 1.0 / std::sqrt(std::numbers::pi * t); }, 1e3, 1e3},
};

} // namespace

TEST_CASE("talbot reproduces the pair library to 1e-6 relative") {
    for (const auto& pc : kPairs) {
        for (int i = 0; i < 50; ++i) {
            const double t = std::exp(std::log(1e-3) +
                                      (std::log(pc.t_hi_acc) - std::log(1e-3)) * i / 49.0);
            const double exact = pc.exact(t);
            const double got = invert_laplace(pc.transform, t);
            INFO(pc.name << " at t=" << t);
            CHECK(std::abs(got - exact) <= 1e-6 * std::abs(exact));
        }
    }
}

TEST_CASE("talbot and gaver-stehfest agree within 1e-4") {
    const InversionConfig gs{InversionMethod::gaver_stehfest, 16, 2.0};
    for (const auto& pc : kPairs) {
        for (int i = 0; i < 20; ++i) {
            const double t = std::exp(std::log(1e-3) +
                                      (std::log(pc.t_hi_cross) - std::log(1e-3)) * i / 19.0);
            const double a = invert_laplace(pc.transform, t);
            const double b = invert_laplace(pc.transform, t, gs);
            INFO(pc.name << " at t=" << t);
            CHECK(std::abs(a - b) <= 1e-4 * std::max(std::abs(a), std::abs(b)));
        }
    }
}

TEST_CASE("inversion point examples") {
    CHECK(invert_laplace([](std::complex<double> s) { return 1.0 / s; }, 5.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(invert_laplace([](std::complex<double> s) { return 1.0 / (s * s); }, 3.0) ==
          doctest::Approx(3.0).epsilon(1e-9));
    CHECK(invert_laplace([](std::complex<double> s) { return 1.0 / (s + 2.0); }, 1.0) ==
          doctest::Approx(0.13533528323661269).epsilon(1e-9));
    CHECK(invert_laplace([](std::complex<double> s) { return 1.0 / (s + std::sqrt(s)); }, 1.0) ==
          doctest::Approx(0.42758357615580700).epsilon(1e-9));
}

TEST_CASE("inversion is linear") {
    auto F = [](std::complex<double> s) { return 1.0 / s; };
    auto G = [](std::complex<double> s) { return 1.0 / (s * s); };
    auto FG = [&](std::complex<double> s) { return 2.5 * F(s) - 0.75 * G(s); };
    for (double t : {0.2, 1.0, 7.0}) {
        const double lhs = invert_laplace(FG, t);
        const double rhs = 2.5 * invert_laplace(F, t) - 0.75 * invert_laplace(G, t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("inversion domain and config validation") {
    auto F = [](std::complex<double> s) { return 1.0 / s; };
    CHECK_THROWS_AS(invert_laplace(F, 0.0), std::domain_error);
    CHECK_THROWS_AS(invert_laplace(F, -1.0), std::domain_error);
    CHECK_THROWS_AS(invert_laplace(F, 1.0, {InversionMethod::talbot, 4, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(invert_laplace(F, 1.0, {InversionMethod::gaver_stehfest, 15, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(invert_laplace(F, 1.0, {InversionMethod::gaver_stehfest, 18, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("cross-checked inversion flags disagreement") {
    CHECK(invert_laplace_checked([](std::complex<double> s) { return 1.0 / s; }, 2.0) ==
          doctest::Approx(1.0));
    // Talbot and Gaver-Stehfest see different points of this discontinuous
    // fake transform, so the cross-check must fire.
    auto broken = [](std::complex<double> s) {
        return s.imag() == 0.0 ? 1.0 / s : 2.0 / s;
    };
    CHECK_THROWS_AS(invert_laplace_checked(broken, 1.0), InversionUnreliable);
    try {
        invert_laplace_checked(broken, 1.0);
    } catch (const InversionUnreliable& e) {
        CHECK(e.talbot_value != e.stehfest_value);
    }
}

TEST_CASE("erfcx matches high-precision table") {
    const struct {
        double x, value;
    } table[] = {
        {0.0, 1.0},
        {0.1, 0.89645697996912663666},
        {0.25, 0.77034654773099674392},
        {0.5, 0.61569034419292587487},
        {1.0, 0.42758357615580700441},
        {2.0, 0.25539567631050574387},
        {4.0, 0.13699945762506138989},
        {4.2, 0.13080849231114205025},  // continued-fraction crossover
        {4.5, 0.12248480427384141755},
        {5.0, 0.11070463773306862637},
        {8.0, 0.069985166200880927723},
        {10.0, 0.056140992743822585858},
        {26.0, 0.021683584850562906616},
        {100.0, 0.0056416137829894329036},
        {1000.0, 0.0005641893014533876542},
    };
    for (const auto& row : table) {
        INFO("x=" << row.x);
        CHECK(std::abs(erfcx(row.x) - row.value) <= 1e-12);
    }
}

TEST_CASE("erfcx asymptote and domain") {
    const double x = 100.0;
    CHECK(erfcx(x) == doctest::Approx(1.0 / (x * std::sqrt(std::numbers::pi))).epsilon(1e-4));
    CHECK_THROWS_AS(erfcx(-0.1), std::domain_error);
}

TEST_CASE("gamma function") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma_fn(0.5) == doctest::Approx(1.7724538509055160273).epsilon(1e-12));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(gamma_fn(7.3) == doctest::Approx(1271.4236336639088399).epsilon(1e-12));
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-2.0), std::domain_error);
}
