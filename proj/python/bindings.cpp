#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "impactlab/cli.hpp"
#include "impactlab/laplace.hpp"
#include "impactlab/regimes.hpp"
#include "impactlab/trajectories.hpp"
#include "impactlab/version.hpp"

namespace py = pybind11;
using namespace impactlab;

namespace {

InversionConfig make_config(const std::string& method, int order, double scale) {
    InversionConfig cfg;
    if (method == "talbot") cfg.method = InversionMethod::talbot;
    else if (method == "gaver_stehfest") cfg.method = InversionMethod::gaver_stehfest;
    else throw std::invalid_argument("method must be 'talbot' or 'gaver_stehfest'");
    if (order > 0) cfg.order = order;
    else cfg.order = cfg.method == InversionMethod::talbot ? 32 : 16;
    cfg.scale = scale;
    return cfg;
}

std::vector<Impulse> to_impulses(const std::vector<std::pair<double, double>>& pairs) {
    std::vector<Impulse> out;
    out.reserve(pairs.size());
    for (const auto& [t, v] : pairs) out.push_back({t, v});
    return out;
}

SweepColumn column_from(const std::string& name) {
    if (name == "rate") return SweepColumn::rate;
    if (name == "volume") return SweepColumn::volume;
    if (name == "time") return SweepColumn::time;
    if (name == "cost_discrete") return SweepColumn::cost_discrete;
    if (name == "cost_continuous") return SweepColumn::cost_continuous;
    throw std::invalid_argument("unknown column: " + name);
}

} // namespace

PYBIND11_MODULE(_impactlab, m) {
    m.doc() = "market-impact kernels, optimal execution trajectories and cost functionals";
    m.attr("__version__") = kToolVersion;
    m.attr("UNBOUNDED") = kUnbounded;

    // special functions and inversion
    m.def("erfcx", &erfcx, py::arg("x"), "scaled complementary error function exp(x^2) erfc(x)");
    m.def("gamma_fn", &gamma_fn, py::arg("x"), "Euler gamma for x > 0");
    m.def(
        "invert_laplace",
        [](const LaplaceFn& F, double t, const std::string& method, int order, double scale) {
            return invert_laplace(F, t, make_config(method, order, scale));
        },
        py::arg("transform"), py::arg("t"), py::arg("method") = "talbot", py::arg("order") = 0,
        py::arg("scale") = 2.0, "numerical inverse Laplace transform at t > 0");
    m.def("invert_laplace_checked", &invert_laplace_checked, py::arg("transform"), py::arg("t"),
          py::arg("rel_tol") = 1e-4, py::arg("talbot_order") = 32,
          py::arg("stehfest_order") = 16,
          "Talbot value cross-checked against Gaver-Stehfest");

    py::register_exception<InversionUnreliable>(m, "InversionUnreliableError");

    // kernels
    py::class_<KernelSpec>(m, "Kernel")
        .def_static("delta", &KernelSpec::delta, py::arg("eta"))
        .def_static("exponential", &KernelSpec::exponential, py::arg("eta"), py::arg("beta"))
        .def_static("diffusion", &KernelSpec::diffusion, py::arg("c"), py::arg("kappa"),
                    py::arg("x2") = kUnbounded)
        .def_static("power", &KernelSpec::power, py::arg("c0"), py::arg("c1"), py::arg("t0"),
                    py::arg("alpha"))
        .def_property_readonly("name", &KernelSpec::name)
        .def("eval", &eval_kernel, py::arg("t"))
        .def("laplace", &eval_kernel_laplace, py::arg("s"))
        .def("step_response", &step_response, py::arg("t"))
        .def("twice_integrated", &twice_integrated_kernel, py::arg("t"))
        .def("asymptotics",
             [](const KernelSpec& k) {
                 const auto a = kernel_asymptotics(k);
                 py::dict d;
                 d["initial"] = a.initial;
                 d["tail_law"] = a.tail_law;
                 d["permanent"] = a.permanent;
                 return d;
             })
        .def("__repr__", [](const KernelSpec& k) { return "<Kernel " + k.name() + ">"; });

    m.def("dimension_asymptote", &dimension_asymptote, py::arg("dim"), py::arg("q"),
          py::arg("t"));

    py::class_<MarketParams>(m, "MarketParams")
        .def(py::init<double, double, double, double>(), py::arg("sigma"), py::arg("s0"),
             py::arg("adv"), py::arg("eta_tilde"))
        .def_static("from_eta", &MarketParams::from_eta, py::arg("sigma"), py::arg("s0"),
                    py::arg("adv"), py::arg("eta"))
        .def_readonly("sigma", &MarketParams::sigma)
        .def_readonly("s0", &MarketParams::s0)
        .def_readonly("adv", &MarketParams::adv)
        .def_readonly("eta_tilde", &MarketParams::eta_tilde)
        .def("to_price_fraction", &MarketParams::to_price_fraction, py::arg("cost"))
        .def("to_currency", &MarketParams::to_currency, py::arg("cost"));

    // trajectories
    py::class_<TrajectoryProblem>(m, "TrajectoryProblem")
        .def(py::init([](double x0, double xT, double horizon, double k, double beta) {
                 return TrajectoryProblem{x0, xT, horizon, k, beta};
             }),
             py::arg("x0"), py::arg("xT"), py::arg("horizon"), py::arg("k") = 0.0,
             py::arg("beta") = 0.0)
        .def_readwrite("x0", &TrajectoryProblem::x0)
        .def_readwrite("xT", &TrajectoryProblem::xT)
        .def_readwrite("horizon", &TrajectoryProblem::horizon)
        .def_readwrite("k", &TrajectoryProblem::k)
        .def_readwrite("beta", &TrajectoryProblem::beta);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("positions", &Trajectory::positions)
        .def_readonly("jump_initial", &Trajectory::jump_initial)
        .def_readonly("jump_terminal", &Trajectory::jump_terminal)
        .def_property_readonly("x0", &Trajectory::x0)
        .def_property_readonly("xT", &Trajectory::xT);

    py::class_<ExpKernelSolution>(m, "ExpKernelSolution")
        .def_readonly("k_eff", &ExpKernelSolution::k_eff)
        .def_readonly("shift", &ExpKernelSolution::shift)
        .def_readonly("amplitude", &ExpKernelSolution::amplitude)
        .def_readonly("jump_initial", &ExpKernelSolution::jump_initial)
        .def_readonly("jump_terminal", &ExpKernelSolution::jump_terminal)
        .def("position", &ExpKernelSolution::position, py::arg("t"));

    m.def("ac_position", &ac_position, py::arg("problem"), py::arg("t"));
    m.def("exp_kernel_solution", &exp_kernel_solution, py::arg("problem"));
    m.def("risk_neutral_position", &risk_neutral_position, py::arg("problem"), py::arg("t"));
    m.def("risk_neutral_jump", &risk_neutral_jump, py::arg("problem"));
    m.def("sample_ac", &sample_ac, py::arg("problem"), py::arg("n") = 257);
    m.def("sample_exp_kernel", &sample_exp_kernel, py::arg("problem"), py::arg("n") = 257);
    m.def("sample_risk_neutral", &sample_risk_neutral, py::arg("problem"), py::arg("n") = 257);
    m.def("euler_residual", &euler_residual, py::arg("trajectory"), py::arg("kernel"),
          py::arg("lam"));

    // impact
    py::class_<RateProfile>(m, "RateProfile")
        .def(py::init([](std::vector<double> grid, std::vector<double> rates,
                         const std::vector<std::pair<double, double>>& impulses) {
                 return RateProfile(std::move(grid), std::move(rates), to_impulses(impulses));
             }),
             py::arg("grid"), py::arg("rates"),
             py::arg("impulses") = std::vector<std::pair<double, double>>{})
        .def_readonly("grid", &RateProfile::grid)
        .def_readonly("rates", &RateProfile::rates)
        .def_property_readonly("impulses",
                               [](const RateProfile& p) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& imp : p.impulses)
                                       out.emplace_back(imp.time, imp.volume);
                                   return out;
                               })
        .def("net_volume", &RateProfile::net_volume)
        .def("gross_volume", &RateProfile::gross_volume)
        .def("rate_at", &RateProfile::rate_at, py::arg("t"))
        .def("scaled", &RateProfile::scaled, py::arg("factor"));

    m.def("temporary_impact", &temporary_impact, py::arg("profile"), py::arg("kernel"),
          py::arg("t"));
    m.def(
        "impact_path",
        [](const RateProfile& p, const KernelSpec& k, const std::vector<double>& times) {
            const auto path = impact_path(p, k, times);
            return std::make_pair(path.times, path.h_values);
        },
        py::arg("profile"), py::arg("kernel"), py::arg("times"));
    m.def(
        "discrete_cost",
        [](const std::vector<std::pair<double, double>>& trades, const KernelSpec& k) {
            return discrete_cost(to_impulses(trades), k);
        },
        py::arg("trades"), py::arg("kernel"));
    m.def("continuous_cost", &continuous_cost, py::arg("profile"), py::arg("kernel"));
    m.def("constant_rate_cost", &constant_rate_cost, py::arg("rate"), py::arg("horizon"),
          py::arg("kernel"));
    m.def("round_trip_check", &round_trip_check, py::arg("profile"), py::arg("kernel"));
    m.def("random_zero_net_profile", &random_zero_net_profile, py::arg("seed"),
          py::arg("intervals") = 16, py::arg("horizon") = 2.0);
    m.def(
        "rate_profile_for_constant_price",
        [](double ds, double c, double kappa, const std::vector<double>& grid) {
            return rate_for_price_target(ConstantPriceTarget{ds}, c, kappa, grid);
        },
        py::arg("ds"), py::arg("c"), py::arg("kappa"), py::arg("grid"));
    m.def(
        "rate_profile_for_power_price",
        [](double scale, double alpha, double c, double kappa, const std::vector<double>& grid) {
            return rate_for_price_target(PowerPriceTarget{scale, alpha}, c, kappa, grid);
        },
        py::arg("scale"), py::arg("alpha"), py::arg("c"), py::arg("kappa"), py::arg("grid"));
    m.def("rate_for_constant_price", &rate_for_constant_price, py::arg("ds"), py::arg("c"),
          py::arg("kappa"), py::arg("t"));
    m.def(
        "rate_for_power_price",
        [](double scale, double alpha, double c, double kappa, double t) {
            return rate_for_power_price(PowerPriceTarget{scale, alpha}, c, kappa, t);
        },
        py::arg("scale"), py::arg("alpha"), py::arg("c"), py::arg("kappa"), py::arg("t"));

    // regimes
    py::enum_<Regime>(m, "Regime")
        .value("isochronic", Regime::isochronic)
        .value("isochoric", Regime::isochoric)
        .value("isotachic", Regime::isotachic);
    py::enum_<SweepMode>(m, "SweepMode")
        .value("discrete", SweepMode::discrete)
        .value("continuous", SweepMode::continuous)
        .value("both", SweepMode::both);

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("regime", &SweepConfig::regime)
        .def_readwrite("kernel", &SweepConfig::kernel)
        .def_readwrite("fixed_quantity", &SweepConfig::fixed_quantity)
        .def_readwrite("steps", &SweepConfig::steps)
        .def_readwrite("child_size", &SweepConfig::child_size)
        .def_readwrite("mode", &SweepConfig::mode)
        .def_readwrite("participation_cap", &SweepConfig::participation_cap)
        .def_readwrite("seed", &SweepConfig::seed);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("n_trades", &SweepRow::n_trades)
        .def_readonly("rate", &SweepRow::rate)
        .def_readonly("volume", &SweepRow::volume)
        .def_readonly("horizon", &SweepRow::horizon)
        .def_readonly("cost_discrete", &SweepRow::cost_discrete)
        .def_readonly("cost_continuous", &SweepRow::cost_continuous)
        .def_readonly("capped", &SweepRow::capped);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("regime", &SweepResult::regime)
        .def_readonly("kernel_name", &SweepResult::kernel_name)
        .def_readonly("rows", &SweepResult::rows);

    m.def("run_sweep", &run_sweep, py::arg("config"));
    m.def(
        "fit_loglog_slope",
        [](const SweepResult& result, const std::string& x, const std::string& y,
           std::size_t first, std::size_t last) {
            const auto fit = fit_loglog_slope(result, column_from(x), column_from(y), first, last);
            py::dict d;
            d["slope"] = fit.slope;
            d["intercept"] = fit.intercept;
            d["max_residual"] = fit.max_residual;
            d["points"] = fit.points;
            return d;
        },
        py::arg("result"), py::arg("x") = "rate", py::arg("y") = "cost_continuous",
        py::arg("first") = 0, py::arg("last") = SIZE_MAX);
    m.def(
        "regime_law_check",
        [](double c, double kappa, const std::vector<std::pair<double, double>>& configs,
           double sigma, double tilde_t_min) {
            std::vector<LawConfig> cfgs;
            for (const auto& [q, T] : configs) cfgs.push_back({q, T});
            const auto res = regime_law_check(DiffusionKernel{c, kappa, kUnbounded}, cfgs, sigma,
                                              tilde_t_min);
            py::list rows;
            for (const auto& row : res.rows) {
                py::dict d;
                d["rate"] = row.rate;
                d["horizon"] = row.horizon;
                d["volume"] = row.volume;
                d["scaled_time"] = row.scaled_time;
                d["cost"] = row.cost;
                d["C"] = row.c_value;
                d["asymptotic"] = row.asymptotic;
                rows.append(d);
            }
            return py::make_tuple(rows, res.max_over_min);
        },
        py::arg("c"), py::arg("kappa"), py::arg("configs"), py::arg("sigma") = 1.0,
        py::arg("tilde_t_min") = 100.0);
    m.def(
        "binary_tree_shortfall",
        [](const std::string& policy, double p_up) {
            if (policy == "market") return binary_tree_shortfall(OrderPolicy::market, p_up);
            if (policy == "limit") return binary_tree_shortfall(OrderPolicy::limit, p_up);
            throw std::invalid_argument("policy must be 'market' or 'limit'");
        },
        py::arg("policy"), py::arg("p_up") = 0.5);

    // command-line entry point, reusable for scripting
    m.def("run_command", &run_command, py::arg("args"),
          "run an impactlab CLI invocation; returns the exit status");
}
