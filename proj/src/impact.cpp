#include "impactlab/impact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace impactlab {

namespace {

constexpr double kQuadRelTol = 1e-8;
constexpr double kQuadAbsTol = 1e-9;

// Double-exponential (tanh-sinh) quadrature on [a, b] with level doubling;
// robust against the t^{3/2} corners the step response has at cell edges.
double integrate_cell(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    if (half <= 0.0) return 0.0;
    auto node_sum = [&](double h, int stride_from, int max_k) {
        // stride_from = 1: every node k*h; 2: odd k only (new nodes of a level)
        double acc = 0.0;
        for (int k = (stride_from == 2 ? 1 : 0); k <= max_k; k += stride_from) {
            const double t = k * h;
            const double sh = std::numbers::pi / 2.0 * std::sinh(t);
            const double x = std::tanh(sh);
            const double w = std::numbers::pi / 2.0 * std::cosh(t) / std::pow(std::cosh(sh), 2);
            if (w < 1e-40) break;
            if (k == 0) {
                acc += w * f(mid);
            } else {
                acc += w * (f(mid + half * x) + f(mid - half * x));
            }
        }
        return acc;
    };
    double h = 1.0;
    double sum = node_sum(h, 1, 6);
    double prev = half * h * sum;
    for (int level = 1; level <= 11; ++level) {
        h *= 0.5;
        sum += node_sum(h, 2, 6 << level);
        const double cur = half * h * sum;
        if (std::abs(cur - prev) <= std::max(kQuadAbsTol, kQuadRelTol * std::abs(cur)) &&
            level >= 3)
            return cur;
        prev = cur;
    }
    return prev;
}

double impact_at(const RateProfile& p, const KernelSpec& k, double t, bool include_at_t) {
    double h = 0.0;
    for (std::size_t i = 0; i < p.rates.size(); ++i) {
        const double a = p.grid[i];
        const double b = p.grid[i + 1];
        if (a >= t || p.rates[i] == 0.0) continue;
        h += p.rates[i] * (step_response(k, t - a) - step_response(k, std::max(t - b, 0.0)));
    }
    for (const auto& imp : p.impulses) {
        if (imp.time > t || (!include_at_t && imp.time == t)) continue;
        h += imp.volume * eval_kernel(k, t - imp.time);
    }
    return h;
}

// Cycle work int h dq over the whole profile; shared by continuous_cost and
// round_trip_check. Impulses contribute the impact accrued strictly before
// them plus the 1/2 v^2 K(0) self-interaction (equal-time impulses merge).
double profile_work(const RateProfile& p, const KernelSpec& k) {
    double work = 0.0;
    std::vector<double> events = p.grid;
    for (const auto& imp : p.impulses) events.push_back(imp.time);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    for (std::size_t e = 0; e + 1 < events.size(); ++e) {
        const double u = events[e];
        const double v = events[e + 1];
        const double q = p.rate_at(0.5 * (u + v));
        if (q == 0.0) continue;
        work += q * integrate_cell([&](double t) { return impact_at(p, k, t, true); }, u, v);
    }
    if (!p.impulses.empty()) {
        const double k0 = eval_kernel(k, 0.0);
        auto sorted = p.impulses;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Impulse& a, const Impulse& b) { return a.time < b.time; });
        std::size_t i = 0;
        while (i < sorted.size()) {
            double volume = sorted[i].volume;
            std::size_t j = i + 1;
            while (j < sorted.size() && sorted[j].time == sorted[i].time)
                volume += sorted[j++].volume;
            work += volume * impact_at(p, k, sorted[i].time, false) + 0.5 * volume * volume * k0;
            i = j;
        }
    }
    return work;
}

} // namespace

RateProfile::RateProfile(std::vector<double> grid_, std::vector<double> rates_,
                         std::vector<Impulse> impulses_)
    : grid(std::move(grid_)), rates(std::move(rates_)), impulses(std::move(impulses_)) {
    if (grid.size() < 2) throw std::invalid_argument("profile grid needs at least 2 points");
    if (rates.size() != grid.size() - 1)
        throw std::invalid_argument("rates must have one entry per grid interval");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("profile grid must be strictly increasing");
    for (const auto& imp : impulses)
        if (imp.time < grid.front() || imp.time > grid.back())
            throw std::invalid_argument("impulse outside the profile grid span");
}

double RateProfile::net_volume() const {
    double q = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i) q += rates[i] * (grid[i + 1] - grid[i]);
    for (const auto& imp : impulses) q += imp.volume;
    return q;
}

double RateProfile::gross_volume() const {
    double q = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i)
        q += std::abs(rates[i]) * (grid[i + 1] - grid[i]);
    for (const auto& imp : impulses) q += std::abs(imp.volume);
    return q;
}

double RateProfile::rate_at(double t) const {
    if (t < grid.front() || t >= grid.back()) return 0.0;
    const auto it = std::upper_bound(grid.begin(), grid.end(), t);
    const auto idx = static_cast<std::size_t>(it - grid.begin()) - 1;
    return rates[idx];
}

RateProfile RateProfile::scaled(double factor) const {
    RateProfile out = *this;
    for (auto& r : out.rates) r *= factor;
    for (auto& imp : out.impulses) imp.volume *= factor;
    return out;
}

double temporary_impact(const RateProfile& p, const KernelSpec& k, double t) {
    if (t < p.start()) throw std::domain_error("t before the profile start");
    if (k.is_delta()) {
        for (const auto& imp : p.impulses)
            if (imp.time == t && imp.volume != 0.0)
                throw std::domain_error("Dirac kernel impact undefined pointwise at an impulse");
        return std::get<DeltaKernel>(k.family).eta * p.rate_at(t);
    }
    return impact_at(p, k, t, true);
}

ImpactPath impact_path(const RateProfile& p, const KernelSpec& k,
                       const std::vector<double>& times) {
    ImpactPath path;
    path.times = times;
    path.h_values.reserve(times.size());
    for (double t : times) path.h_values.push_back(temporary_impact(p, k, t));
    return path;
}

double discrete_cost(const std::vector<Impulse>& trades, const KernelSpec& k) {
    if (trades.empty()) throw std::invalid_argument("discrete_cost needs at least one trade");
    if (k.is_delta())
        throw std::domain_error(
            "Dirac kernel has no finite K(0); use constant_rate_cost for continuous trading");
    double total = 0.0;
    for (const auto& tr : trades) total += tr.volume;
    if (total == 0.0)
        throw std::invalid_argument("zero net volume; use round_trip_check for round trips");
    const double k0 = eval_kernel(k, 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < trades.size(); ++i) {
        acc += trades[i].volume * trades[i].volume * k0;
        for (std::size_t j = i + 1; j < trades.size(); ++j)
            acc += 2.0 * trades[i].volume * trades[j].volume *
                   eval_kernel(k, std::abs(trades[i].time - trades[j].time));
    }
    return acc / (2.0 * total);
}

double continuous_cost(const RateProfile& p, const KernelSpec& k) {
    double work;
    if (k.is_delta()) {
        if (!p.impulses.empty())
            throw std::domain_error("Dirac kernel cost of an impulse is unbounded");
        const double eta = std::get<DeltaKernel>(k.family).eta;
        work = 0.0;
        for (std::size_t i = 0; i < p.rates.size(); ++i)
            work += eta * p.rates[i] * p.rates[i] * (p.grid[i + 1] - p.grid[i]);
    } else {
        work = profile_work(p, k);
    }
    const double net = p.net_volume();
    if (std::abs(net) <= 1e-12 * std::max(1.0, p.gross_volume())) return work;
    return work / net;
}

double constant_rate_cost(double q, double T, const KernelSpec& k) {
    if (!(q > 0.0) || !(T > 0.0)) throw std::domain_error("constant_rate_cost requires q, T > 0");
    return q * twice_integrated_kernel(k, T) / T;
}

double rate_for_constant_price(double ds, double c, double kappa, double t) {
    (void)c;
    if (!(t > 0.0)) throw std::domain_error("rate defined for t > 0");
    return ds * std::sqrt(kappa / (std::numbers::pi * t));
}

double rate_for_power_price(const PowerPriceTarget& target, double c, double kappa, double t) {
    if (!(target.alpha > 0.0)) throw std::domain_error("alpha must be positive");
    if (!(t > 0.0)) throw std::domain_error("rate defined for t > 0");
    const double a = target.alpha;
    const double ratio = gamma_fn(a + 1.0) / gamma_fn(a + 0.5);
    return target.scale *
           (c * a * std::pow(t, a - 1.0) + std::sqrt(kappa) * std::pow(t, a - 0.5) * ratio);
}

namespace {

void check_price_grid(const std::vector<double>& grid, double c, double kappa) {
    if (grid.size() < 2) throw std::invalid_argument("price-target grid needs >= 2 points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("price-target grid must be strictly increasing");
    if (c < 0.0) throw std::invalid_argument("c must be nonnegative");
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
}

} // namespace

RateProfile rate_for_price_target(const ConstantPriceTarget& target, double c, double kappa,
                                  const std::vector<double>& grid) {
    check_price_grid(grid, c, kappa);
    if (grid.front() != 0.0)
        throw std::invalid_argument("constant price target needs a grid starting at 0");
    std::vector<double> rates(grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double a = grid[i], b = grid[i + 1];
        // exact interval average of dS sqrt(kappa/(pi t))
        rates[i] = target.ds * std::sqrt(kappa / std::numbers::pi) * 2.0 *
                   (std::sqrt(b) - std::sqrt(a)) / (b - a);
    }
    std::vector<Impulse> impulses;
    if (c * target.ds != 0.0) impulses.push_back({0.0, c * target.ds});
    return RateProfile(grid, std::move(rates), std::move(impulses));
}

RateProfile rate_for_price_target(const PowerPriceTarget& target, double c, double kappa,
                                  const std::vector<double>& grid) {
    check_price_grid(grid, c, kappa);
    if (!(target.alpha > 0.0)) throw std::domain_error("alpha must be positive");
    if (grid.front() < 0.0) throw std::invalid_argument("grid must start at t >= 0");
    const double a = target.alpha;
    const double ratio = gamma_fn(a + 1.0) / gamma_fn(a + 0.5);
    std::vector<double> rates(grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double lo = grid[i], hi = grid[i + 1];
        const double drift = c * (std::pow(hi, a) - std::pow(lo, a));
        const double flow = std::sqrt(kappa) * ratio *
                            (std::pow(hi, a + 0.5) - std::pow(lo, a + 0.5)) / (a + 0.5);
        rates[i] = target.scale * (drift + flow) / (hi - lo);
    }
    return RateProfile(grid, std::move(rates));
}

double rate_for_price_laplace(const LaplaceFn& h_bar, const KernelSpec& k, double t,
                              double* impulse_volume) {
    // q_bar = h_bar / K_bar; any price jump at t=0 shows up as a constant
    // (Dirac) component q_inf = lim_{s->inf} q_bar, split off before inverting.
    const std::complex<double> big(1e12, 0.0);
    const double q_inf = (h_bar(big) / detail::kernel_laplace_raw(k, big)).real();
    if (impulse_volume) *impulse_volume = q_inf;
    return invert_laplace(
        [&](std::complex<double> s) {
            return h_bar(s) / detail::kernel_laplace_raw(k, s) - q_inf;
        },
        t);
}

double round_trip_check(const RateProfile& p, const KernelSpec& k) {
    if (std::abs(p.net_volume()) > 1e-12 * std::max(1.0, p.gross_volume()))
        throw std::invalid_argument("round_trip_check requires zero net volume");
    if (k.is_delta()) {
        const double eta = std::get<DeltaKernel>(k.family).eta;
        double work = 0.0;
        for (std::size_t i = 0; i < p.rates.size(); ++i)
            work += eta * p.rates[i] * p.rates[i] * (p.grid[i + 1] - p.grid[i]);
        return work;
    }
    return profile_work(p, k);
}

RateProfile random_zero_net_profile(std::uint64_t seed, int intervals, double horizon) {
    if (intervals < 2) throw std::invalid_argument("need at least 2 intervals");
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    std::mt19937_64 rng(seed);
    // explicit 53-bit mapping keeps the stream identical across platforms
    auto uniform = [&rng]() { return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0; };
    std::vector<double> grid(intervals + 1);
    for (int i = 0; i <= intervals; ++i) grid[i] = horizon * i / intervals;
    std::vector<double> rates(intervals);
    double acc = 0.0;
    const double dt = horizon / intervals;
    for (int i = 0; i < intervals - 1; ++i) {
        rates[i] = uniform();
        acc += rates[i] * dt;
    }
    rates[intervals - 1] = -acc / dt;
    return RateProfile(std::move(grid), std::move(rates));
}

} // namespace impactlab
