#pragma once

#include "impactlab/impact.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace impactlab {

enum class Regime { isochronic, isochoric, isotachic };
enum class SweepMode { discrete, continuous, both };

/// One regime experiment: hold one of T / Q / q fixed (fixed_quantity, per
/// regime) and sweep the `steps` list: trade counts for isochronic,
/// horizons for isochoric and isotachic. Discrete runs place equal child
/// orders of child_size at bin midpoints of the uniform partition.
struct SweepConfig {
    Regime regime = Regime::isochronic;
    KernelSpec kernel = KernelSpec::diffusion(1.0, 1.0);
    double fixed_quantity = 0.5;
    std::vector<double> steps;
    double child_size = 1e-4;
    SweepMode mode = SweepMode::both;
    double participation_cap = 0.5; // ADV/day; rows above it carry a warning flag
    std::uint64_t seed = 0;

    void validate() const;
};

struct SweepRow {
    int n_trades = 0;
    double rate = 0.0;
    double volume = 0.0;
    double horizon = 0.0;
    std::optional<double> cost_discrete;
    std::optional<double> cost_continuous;
    bool capped = false;
};

struct SweepResult {
    Regime regime;
    std::string kernel_name;
    SweepConfig config;
    std::vector<SweepRow> rows;
};

SweepResult isochronic_sweep(const SweepConfig& cfg);
SweepResult isochoric_sweep(const SweepConfig& cfg);
SweepResult isotachic_sweep(const SweepConfig& cfg);
/// Dispatch on cfg.regime.
SweepResult run_sweep(const SweepConfig& cfg);

enum class SweepColumn { rate, volume, time, cost_discrete, cost_continuous };

struct SlopeFit {
    double slope;
    double intercept;
    double max_residual;
    int points;
};

/// Least-squares slope of log(y) vs log(x) over rows [first, last) of the
/// sweep table; throws on nonpositive data or fewer than 3 rows.
SlopeFit fit_loglog_slope(const SweepResult& result, SweepColumn x, SweepColumn y,
                          std::size_t first = 0, std::size_t last = SIZE_MAX);

struct LawConfig {
    double rate;
    double horizon;
};

struct LawRow {
    double rate;
    double horizon;
    double volume;
    double scaled_time; // kappa T / c^2
    double cost;
    double c_value; // dW / (sigma sqrt(T) q)
    bool asymptotic;
};

struct LawCheckResult {
    std::vector<LawRow> rows;
    double max_over_min; // over asymptotic rows only
};

/// Evaluates C = dW / (sigma sqrt(T) q) for each configuration under the
/// diffusion kernel; rows with kappa T / c^2 below tilde_t_min are flagged
/// non-asymptotic and excluded from the spread.
LawCheckResult regime_law_check(const DiffusionKernel& kernel,
                                const std::vector<LawConfig>& configs, double sigma = 1.0,
                                double tilde_t_min = 100.0);

enum class OrderPolicy { market, limit };

/// Expected shortfall (ticks) of a single order in the binary-tree market:
/// market orders lose the half spread; a limit order gains 1/2 on a down
/// move and reprices one tick up otherwise.
double binary_tree_shortfall(OrderPolicy policy, double p_up);

} // namespace impactlab
