#include "impactlab/regimes.hpp"

#include <cmath>

namespace impactlab {

namespace {

std::vector<Impulse> midpoint_children(int n, double child, double horizon) {
    std::vector<Impulse> trades(n);
    for (int i = 0; i < n; ++i) trades[i] = {(i + 0.5) * horizon / n, child};
    return trades;
}

SweepRow make_row(const SweepConfig& cfg, int n, double child, double horizon) {
    SweepRow row;
    row.n_trades = n;
    row.horizon = horizon;
    row.volume = n * child;
    row.rate = row.volume / horizon;
    row.capped = row.rate > cfg.participation_cap;
    if (cfg.mode != SweepMode::continuous)
        row.cost_discrete = discrete_cost(midpoint_children(n, child, horizon), cfg.kernel);
    if (cfg.mode != SweepMode::discrete)
        row.cost_continuous = constant_rate_cost(row.rate, horizon, cfg.kernel);
    return row;
}

} // namespace

void SweepConfig::validate() const {
    if (steps.empty()) throw std::invalid_argument("sweep steps must be nonempty");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!(steps[i] > 0.0)) throw std::invalid_argument("sweep steps must be positive");
        if (i > 0 && steps[i] == steps[i - 1])
            throw std::invalid_argument("sweep steps must be strictly monotone");
        if (i > 1 && (steps[i] > steps[i - 1]) != (steps[i - 1] > steps[i - 2]))
            throw std::invalid_argument("sweep steps must be strictly monotone");
    }
    if (!(fixed_quantity > 0.0)) throw std::invalid_argument("fixed quantity must be positive");
    if (!(child_size > 0.0)) throw std::invalid_argument("child size must be positive");
}

SweepResult isochronic_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const double T = cfg.fixed_quantity;
    SweepResult out{Regime::isochronic, cfg.kernel.name(), cfg, {}};
    for (double step : cfg.steps) {
        const int n = static_cast<int>(std::lround(step));
        if (n < 1) throw std::invalid_argument("isochronic steps are trade counts >= 1");
        out.rows.push_back(make_row(cfg, n, cfg.child_size, T));
    }
    return out;
}

SweepResult isochoric_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const double Q = cfg.fixed_quantity;
    const int n = std::max(1, static_cast<int>(std::lround(Q / cfg.child_size)));
    SweepResult out{Regime::isochoric, cfg.kernel.name(), cfg, {}};
    for (double T : cfg.steps) out.rows.push_back(make_row(cfg, n, Q / n, T));
    return out;
}

SweepResult isotachic_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const double q = cfg.fixed_quantity;
    SweepResult out{Regime::isotachic, cfg.kernel.name(), cfg, {}};
    for (double T : cfg.steps) {
        const double Q = q * T;
        const int n = std::max(1, static_cast<int>(std::lround(Q / cfg.child_size)));
        out.rows.push_back(make_row(cfg, n, Q / n, T));
    }
    return out;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    switch (cfg.regime) {
        case Regime::isochronic: return isochronic_sweep(cfg);
        case Regime::isochoric: return isochoric_sweep(cfg);
        default: return isotachic_sweep(cfg);
    }
}

namespace {

double column_value(const SweepRow& row, SweepColumn col) {
    switch (col) {
        case SweepColumn::rate: return row.rate;
        case SweepColumn::volume: return row.volume;
        case SweepColumn::time: return row.horizon;
        case SweepColumn::cost_discrete:
            if (!row.cost_discrete) throw std::invalid_argument("no discrete cost in this sweep");
            return *row.cost_discrete;
        default:
            if (!row.cost_continuous)
                throw std::invalid_argument("no continuous cost in this sweep");
            return *row.cost_continuous;
    }
}

} // namespace

SlopeFit fit_loglog_slope(const SweepResult& result, SweepColumn x, SweepColumn y,
                          std::size_t first, std::size_t last) {
    last = std::min(last, result.rows.size());
    if (last < first || last - first < 3)
        throw std::invalid_argument("slope fit needs at least 3 rows");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::size_t n = last - first;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = first; i < last; ++i) {
        const double xv = column_value(result.rows[i], x);
        const double yv = column_value(result.rows[i], y);
        if (!(xv > 0.0) || !(yv > 0.0))
            throw std::domain_error("slope fit requires positive values");
        lx[i - first] = std::log(xv);
        ly[i - first] = std::log(yv);
        sx += lx[i - first];
        sy += ly[i - first];
        sxx += lx[i - first] * lx[i - first];
        sxy += lx[i - first] * ly[i - first];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::domain_error("degenerate abscissa in slope fit");
    SlopeFit fit;
    fit.points = static_cast<int>(n);
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.max_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        fit.max_residual =
            std::max(fit.max_residual, std::abs(ly[i] - fit.slope * lx[i] - fit.intercept));
    return fit;
}

LawCheckResult regime_law_check(const DiffusionKernel& kernel,
                                const std::vector<LawConfig>& configs, double sigma,
                                double tilde_t_min) {
    if (configs.empty()) throw std::invalid_argument("law check needs configurations");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const KernelSpec spec{kernel};
    LawCheckResult out{{}, 0.0};
    double cmin = 0.0, cmax = 0.0;
    bool any = false;
    for (const auto& cfg : configs) {
        if (!(cfg.rate > 0.0) || !(cfg.horizon > 0.0))
            throw std::invalid_argument("law configurations must be positive");
        LawRow row;
        row.rate = cfg.rate;
        row.horizon = cfg.horizon;
        row.volume = cfg.rate * cfg.horizon;
        row.scaled_time = kernel.kappa * cfg.horizon / (kernel.c * kernel.c);
        row.cost = constant_rate_cost(cfg.rate, cfg.horizon, spec);
        row.c_value = row.cost / (sigma * std::sqrt(cfg.horizon) * cfg.rate);
        row.asymptotic = row.scaled_time >= tilde_t_min;
        if (row.asymptotic) {
            cmin = any ? std::min(cmin, row.c_value) : row.c_value;
            cmax = any ? std::max(cmax, row.c_value) : row.c_value;
            any = true;
        }
        out.rows.push_back(row);
    }
    out.max_over_min = any ? cmax / cmin : std::numeric_limits<double>::quiet_NaN();
    return out;
}

double binary_tree_shortfall(OrderPolicy policy, double p_up) {
    if (!(p_up > 0.0) || p_up >= 1.0) {
        if (p_up == 1.0) throw std::domain_error("limit-order recursion diverges at p_up = 1");
        throw std::domain_error("p_up must lie in (0, 1)");
    }
    if (policy == OrderPolicy::market) return -0.5;
    // dW = p_down * 1/2 + p_up * (dW - 1)
    return ((1.0 - p_up) * 0.5 - p_up) / (1.0 - p_up);
}

} // namespace impactlab
