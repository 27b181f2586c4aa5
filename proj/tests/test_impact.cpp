#include <doctest.h>

#include "impactlab/impact.hpp"

#include <cmath>
#include <numbers>

using namespace impactlab;

namespace {

// Independent cost oracle: both integrals of the double convolution done in
// closed form through the twice-integrated kernel, rectangle by rectangle.
// The implementation integrates the impact path numerically instead, so the
// two routes share no quadrature.
double exact_work_oracle(const RateProfile& p, const KernelSpec& k) {
    auto k2 = [&](double u) { return u <= 0.0 ? 0.0 : twice_integrated_kernel(k, u); };
    const auto& g = p.grid;
    double w = 0.0;
    for (std::size_t i = 0; i < p.rates.size(); ++i) {
        w += p.rates[i] * p.rates[i] * k2(g[i + 1] - g[i]);
        for (std::size_t j = 0; j < i; ++j)
            w += p.rates[i] * p.rates[j] *
                 (k2(g[i + 1] - g[j]) - k2(g[i + 1] - g[j + 1]) - k2(g[i] - g[j]) +
                  k2(g[i] - g[j + 1]));
    }
    return w;
}

} // namespace

TEST_CASE("rate profile validation and volume accounting") {
    CHECK_THROWS_AS(RateProfile({0.0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(RateProfile({0.0, 1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(RateProfile({0.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(RateProfile({0.0, 1.0}, {1.0}, {{2.5, 1.0}}), std::invalid_argument);
    const RateProfile p({0.0, 1.0, 3.0}, {0.5, -0.25}, {{0.5, 0.1}});
    CHECK(p.net_volume() == doctest::Approx(0.5 - 0.5 + 0.1));
    CHECK(p.gross_volume() == doctest::Approx(0.5 + 0.5 + 0.1));
    CHECK(p.rate_at(0.2) == doctest::Approx(0.5));
    CHECK(p.rate_at(1.0) == doctest::Approx(-0.25)); // half-open [a, b)
    CHECK(p.rate_at(3.0) == doctest::Approx(0.0));
}

TEST_CASE("temporary impact of an impulse is the kernel itself") {
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    const RateProfile p({0.0, 2.0}, {0.0}, {{0.0, 1.0}});
    CHECK(temporary_impact(p, dif, 1.0) == doctest::Approx(0.42758357615580700).epsilon(1e-12));
    CHECK(temporary_impact(p, dif, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("temporary impact of a constant unit rate grows like sqrt(t)") {
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    const RateProfile p({0.0, 1e5}, {1.0});
    const double h1 = temporary_impact(p, dif, 2e4);
    const double h2 = temporary_impact(p, dif, 8e4);
    CHECK(h2 / h1 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("zero profile has zero impact") {
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    const RateProfile p({0.0, 1.0, 2.0}, {0.0, 0.0});
    for (double t : {0.0, 0.7, 2.0, 5.0}) CHECK(temporary_impact(p, dif, t) == 0.0);
}

TEST_CASE("dirac kernel impact is pointwise in the rate") {
    const auto del = KernelSpec::delta(0.7);
    const RateProfile p({0.0, 1.0, 2.0}, {0.5, 0.25});
    CHECK(temporary_impact(p, del, 0.5) == doctest::Approx(0.35));
    CHECK(temporary_impact(p, del, 1.5) == doctest::Approx(0.175));
    CHECK(temporary_impact(p, del, 2.0) == doctest::Approx(0.0));
    const RateProfile imp({0.0, 2.0}, {0.0}, {{1.0, 1.0}});
    CHECK_THROWS_AS(temporary_impact(imp, del, 1.0), std::domain_error);
    CHECK(temporary_impact(imp, del, 1.5) == doctest::Approx(0.0));
    CHECK_THROWS_AS(temporary_impact(p, del, -1.0), std::domain_error);
}

TEST_CASE("impact is linear and superposes") {
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    const RateProfile p1({0.0, 0.4, 1.0}, {0.8, -0.3}, {{0.2, 0.05}});
    const RateProfile p2({0.0, 0.5, 1.0}, {0.1, 0.6});
    RateProfile sum({0.0, 0.4, 0.5, 1.0},
                    {0.8 + 0.1, -0.3 + 0.1, -0.3 + 0.6}, {{0.2, 0.05}});
    for (double t : {0.3, 0.45, 0.9, 1.7}) {
        CHECK(temporary_impact(p1.scaled(3.0), dif, t) ==
              doctest::Approx(3.0 * temporary_impact(p1, dif, t)).epsilon(1e-12));
        CHECK(temporary_impact(sum, dif, t) ==
              doctest::Approx(temporary_impact(p1, dif, t) + temporary_impact(p2, dif, t))
                  .epsilon(1e-10));
    }
}

TEST_CASE("discrete cost basics") {
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    // one trade: half the instantaneous kernel
    CHECK(discrete_cost({{0.0, 2e-4}}, dif) == doctest::Approx(0.5 * 2e-4).epsilon(1e-12));
    // two well-separated trades of v each: cost/share -> v K(0) / 2
    CHECK(discrete_cost({{0.0, 1e-4}, {1e8, 1e-4}}, dif) ==
          doctest::Approx(0.5 * 1e-4).epsilon(1e-3));
    CHECK_THROWS_AS(discrete_cost({}, dif), std::invalid_argument);
    CHECK_THROWS_AS(discrete_cost({{0.0, 1.0}}, KernelSpec::delta(1.0)), std::domain_error);
}

TEST_CASE("discrete cost equals the brute-force double sum") {
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    const std::vector<Impulse> trades{{0.1, 2e-4}, {0.4, 1e-4}, {1.1, 3e-4}};
    double q = 0.0;
    for (const auto& tr : trades) q += tr.volume;
    double brute = 0.0;
    for (const auto& a : trades)
        for (const auto& b : trades)
            brute += a.volume * b.volume * eval_kernel(dif, std::abs(a.time - b.time));
    brute /= 2.0 * q;
    CHECK(discrete_cost(trades, dif) == doctest::Approx(brute).epsilon(1e-14));
}

TEST_CASE("discrete cost is invariant under permutation and translation") {
    const auto ex = KernelSpec::exponential(1.0, 2.0);
    const std::vector<Impulse> trades{{0.1, 2e-4}, {0.4, 1e-4}, {1.1, 3e-4}, {2.0, 5e-5}};
    std::vector<Impulse> shuffled{trades[2], trades[0], trades[3], trades[1]};
    std::vector<Impulse> shifted;
    for (const auto& tr : trades) shifted.push_back({tr.time + 17.0, tr.volume});
    const double base = discrete_cost(trades, ex);
    CHECK(discrete_cost(shuffled, ex) == doctest::Approx(base).epsilon(1e-14));
    CHECK(discrete_cost(shifted, ex) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("continuous cost: constant-rate closed forms") {
    // Dirac kernel: cost = eta q
    CHECK(continuous_cost(RateProfile({0.0, 2.0}, {0.4}), KernelSpec::delta(0.7)) ==
          doctest::Approx(0.7 * 0.4).epsilon(1e-12));
    CHECK(constant_rate_cost(0.4, 2.0, KernelSpec::delta(0.7)) ==
          doctest::Approx(0.7 * 0.4).epsilon(1e-12));
    // exponential kernel saturates at eta q once beta T >> 1
    CHECK(continuous_cost(RateProfile({0.0, 500.0}, {0.3}), KernelSpec::exponential(1.0, 2.0)) ==
          doctest::Approx(0.3).epsilon(1e-2));
    // diffusion: cost ~ q sqrt(T / kappa) * 4/(3 sqrt(pi)) deep in the tail
    const double q = 0.01, T = 1e6;
    const double expect = q * std::sqrt(T) * 4.0 / (3.0 * std::sqrt(std::numbers::pi));
    CHECK(constant_rate_cost(q, T, KernelSpec::diffusion(1.0, 1.0)) ==
          doctest::Approx(expect).epsilon(2e-3));
}

TEST_CASE("continuous cost agrees with constant_rate_cost on a constant profile") {
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    const double got = continuous_cost(RateProfile({0.0, 0.5}, {0.2048}), dif);
    CHECK(got == doctest::Approx(constant_rate_cost(0.2048, 0.5, dif)).epsilon(1e-8));
}

TEST_CASE("continuous cost agrees with the exact double-integral oracle") {
    const RateProfile p({0.0, 0.3, 0.7, 1.0, 1.6}, {0.5, -0.2, 0.8, 0.1});
    const KernelSpec kernels[] = {
        KernelSpec::diffusion(1.0, 1.0),
        KernelSpec::diffusion(0.5, 2.0, 4.0),
        KernelSpec::exponential(1.3, 2.0),
        KernelSpec::power(0.1, 1.0, 0.5, 0.7),
    };
    for (const auto& k : kernels) {
        INFO(k.name());
        const double oracle = exact_work_oracle(p, k) / p.net_volume();
        CHECK(continuous_cost(p, k) == doctest::Approx(oracle).epsilon(1e-7));
    }
}

TEST_CASE("continuous cost handles impulses like point trades") {
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    const std::vector<Impulse> trades{{0.0, 2e-4}, {0.25, 1e-4}, {0.5, 3e-4}};
    const RateProfile p({0.0, 0.5}, {0.0}, trades);
    CHECK(continuous_cost(p, dif) == doctest::Approx(discrete_cost(trades, dif)).epsilon(1e-12));
    CHECK_THROWS_AS(continuous_cost(p, KernelSpec::delta(1.0)), std::domain_error);
}

TEST_CASE("constant rate cost validation") {
    CHECK_THROWS_AS(constant_rate_cost(0.0, 1.0, KernelSpec::delta(1.0)), std::domain_error);
    CHECK_THROWS_AS(constant_rate_cost(1.0, -1.0, KernelSpec::delta(1.0)), std::domain_error);
}

TEST_CASE("round trip work is positive for buy-then-sell") {
    const RateProfile rect({0.0, 1.0, 2.0}, {1.0, -1.0});
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    const auto ex = KernelSpec::exponential(1.0, 2.0);
    const double wd = round_trip_check(rect, dif);
    const double we = round_trip_check(rect, ex);
    CHECK(wd > 0.0);
    CHECK(we > 0.0);
    CHECK(wd == doctest::Approx(exact_work_oracle(rect, dif)).epsilon(1e-7));
    CHECK(we == doctest::Approx(exact_work_oracle(rect, ex)).epsilon(1e-7));
    // continuous_cost reports the signed work for zero-net profiles
    CHECK(continuous_cost(rect, dif) == doctest::Approx(wd).epsilon(1e-9));
}

TEST_CASE("round trip requires zero net volume") {
    const RateProfile p({0.0, 1.0}, {1.0});
    CHECK_THROWS_AS(round_trip_check(p, KernelSpec::diffusion(1.0, 1.0)),
                    std::invalid_argument);
    const RateProfile zero({0.0, 1.0, 2.0}, {0.0, 0.0});
    CHECK(round_trip_check(zero, KernelSpec::diffusion(1.0, 1.0)) == doctest::Approx(0.0));
}

TEST_CASE("no dynamic arbitrage across seeded random round trips") {
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    const auto ex = KernelSpec::exponential(1.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_zero_net_profile(90210 + i);
        const double gross = p.gross_volume();
        const double scale = std::max(1e-30, gross * gross);
        INFO("seed " << 90210 + i);
        CHECK(round_trip_check(p, dif) >= -1e-9 * scale);
        CHECK(round_trip_check(p, ex) >= -1e-9 * scale * eval_kernel(ex, 0.0));
    }
}

TEST_CASE("random zero-net profiles are reproducible and zero-net") {
    const auto a = random_zero_net_profile(42);
    const auto b = random_zero_net_profile(42);
    CHECK(a.rates == b.rates);
    CHECK(std::abs(a.net_volume()) <= 1e-12 * a.gross_volume());
    const auto c = random_zero_net_profile(43);
    CHECK(a.rates != c.rates);
}

TEST_CASE("rate for constant price reproduces the flat impact") {
    std::vector<double> grid{0.0};
    for (double t = 1e-3; t < 130.0; t *= 1.07) grid.push_back(t);
    const auto profile = rate_for_price_target(ConstantPriceTarget{2.0}, 1.0, 1.0, grid);
    REQUIRE(profile.impulses.size() == 1);
    CHECK(profile.impulses[0].volume == doctest::Approx(2.0)); // c * dS
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    for (double t = 1.0; t <= 100.0; t *= 1.6) {
        INFO("t=" << t);
        CHECK(temporary_impact(profile, dif, t) == doctest::Approx(2.0).epsilon(0.01));
    }
}

TEST_CASE("rate for power price at alpha = 1/2 with no storage is constant") {
    const double kappa = 1.7;
    const double expect = std::sqrt(kappa) * gamma_fn(1.5) / gamma_fn(1.0);
    for (double t : {0.2, 1.0, 42.0})
        CHECK(rate_for_power_price(PowerPriceTarget{1.0, 0.5}, 0.0, kappa, t) ==
              doctest::Approx(expect).epsilon(1e-13));
    CHECK_THROWS_AS(rate_for_power_price(PowerPriceTarget{1.0, -0.5}, 0.0, 1.0, 1.0),
                    std::domain_error);
}

TEST_CASE("zero price offset gives the zero profile") {
    std::vector<double> grid{0.0, 0.5, 1.0};
    const auto profile = rate_for_price_target(ConstantPriceTarget{0.0}, 1.0, 1.0, grid);
    CHECK(profile.impulses.empty());
    for (double r : profile.rates) CHECK(r == 0.0);
}

TEST_CASE("laplace route recovers the closed-form rate") {
    const auto dif = KernelSpec::diffusion(1.0, 1.0);
    double impulse = 0.0;
    const double got = rate_for_price_laplace(
        [](std::complex<double> s) { return 2.0 / s; }, dif, 0.25, &impulse);
    CHECK(impulse == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(got == doctest::Approx(rate_for_constant_price(2.0, 1.0, 1.0, 0.25)).epsilon(1e-6));
    // finite boundary: early times must still follow the unbounded solution
    const auto fin = KernelSpec::diffusion(1.0, 1.0, 8.0);
    const double got_fin = rate_for_price_laplace(
        [](std::complex<double> s) { return 1.0 / s; }, fin, 0.25, &impulse);
    CHECK(impulse == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(got_fin == doctest::Approx(rate_for_constant_price(1.0, 1.0, 1.0, 0.25)).epsilon(1e-3));
}

TEST_CASE("price target grid validation") {
    CHECK_THROWS_AS(
        rate_for_price_target(ConstantPriceTarget{1.0}, 1.0, 1.0, {0.5, 1.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(rate_for_price_target(ConstantPriceTarget{1.0}, 1.0, -1.0, {0.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        rate_for_price_target(PowerPriceTarget{1.0, 0.0}, 1.0, 1.0, {0.0, 1.0}),
        std::domain_error);
}
