#include "impactlab/trajectories.hpp"

#include <cmath>

namespace impactlab {

namespace {

// sinh(a)/sinh(b) for a, b >= 0, stable for large arguments.
double sinh_ratio(double a, double b) {
    if (b > 350.0 || a > 350.0)
        return std::exp(a - b) * (-std::expm1(-2.0 * a)) / (-std::expm1(-2.0 * b));
    return std::sinh(a) / std::sinh(b);
}

} // namespace

void TrajectoryProblem::validate(bool needs_beta) const {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (k < 0.0) throw std::invalid_argument("urgency k must be nonnegative");
    if (needs_beta && !(beta > 0.0)) throw std::invalid_argument("beta must be positive");
}

double ac_position(const TrajectoryProblem& p, double t) {
    p.validate();
    if (t < 0.0 || t > p.horizon) throw std::domain_error("t outside [0, horizon]");
    const double kT = p.k * p.horizon;
    if (kT < 1e-6) {
        // linear limit of the sinh ratios
        return p.x0 * (p.horizon - t) / p.horizon + p.xT * t / p.horizon;
    }
    return p.x0 * sinh_ratio(p.k * (p.horizon - t), kT) + p.xT * sinh_ratio(p.k * t, kT);
}

ExpKernelSolution exp_kernel_solution(const TrajectoryProblem& p) {
    p.validate(true);
    // k_eff^2 = lambda beta^2 / (lambda + beta^2) in the problem's k = sqrt(lambda)
    // parameterization; then sinh(A) = k/beta and B = 1/cosh(A) exactly.
    const double hyp = std::hypot(p.k, p.beta);
    const double k_eff = p.k * p.beta / hyp;
    if (!(p.beta > k_eff)) throw std::invalid_argument("parameter regime invalid: beta <= k");
    const double A = std::asinh(p.k / p.beta);
    const double B = p.beta / hyp;
    ExpKernelSolution sol{k_eff, A, B, 0.0, 0.0, p};
    const double arg = k_eff * p.horizon + 2.0 * A;
    if (arg < 1e-6) {
        const double j = (p.x0 - p.xT) / (p.beta * p.horizon + 2.0);
        sol.jump_initial = j;
        sol.jump_terminal = j;
        return sol;
    }
    const double sinhA_over_S = std::sinh(A) <= 0.0 ? 0.0 : std::sinh(A) / std::sinh(arg);
    const double cosh_arg = std::cosh(arg);
    sol.jump_initial = B * sinhA_over_S * (p.x0 * cosh_arg - p.xT);
    sol.jump_terminal = B * sinhA_over_S * (p.x0 - p.xT * cosh_arg);
    return sol;
}

double ExpKernelSolution::position(double t) const {
    const auto& p = problem;
    if (t < 0.0 || t > p.horizon) throw std::domain_error("t outside [0, horizon]");
    const double arg = k_eff * p.horizon + 2.0 * shift;
    if (arg < 1e-6) {
        // risk-neutral limit: straight line between the jump-adjusted ends
        return (p.x0 - jump_initial) * (p.horizon - t) / p.horizon +
               (p.xT + jump_terminal) * t / p.horizon;
    }
    return amplitude * (p.x0 * sinh_ratio(k_eff * (p.horizon - t) + shift, arg) +
                        p.xT * sinh_ratio(k_eff * t + shift, arg));
}

double risk_neutral_jump(const TrajectoryProblem& p) {
    p.validate(true);
    return (p.x0 - p.xT) / (p.beta * p.horizon + 2.0);
}

double risk_neutral_position(const TrajectoryProblem& p, double t) {
    p.validate(true);
    if (t < 0.0 || t > p.horizon) throw std::domain_error("t outside [0, horizon]");
    const double j = risk_neutral_jump(p);
    return (p.x0 - j) * (p.horizon - t) / p.horizon + (p.xT + j) * t / p.horizon;
}

namespace {

Trajectory sample_uniform(const TrajectoryProblem& p, int n, double j0, double jT,
                          const std::function<double(double)>& pos) {
    if (n < 2) throw std::invalid_argument("need at least 2 sample points");
    Trajectory traj;
    traj.times.resize(n);
    traj.positions.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = p.horizon * i / (n - 1);
        traj.times[i] = t;
        traj.positions[i] = pos(t);
    }
    traj.jump_initial = j0;
    traj.jump_terminal = jT;
    return traj;
}

} // namespace

Trajectory sample_ac(const TrajectoryProblem& p, int n) {
    return sample_uniform(p, n, 0.0, 0.0, [&](double t) { return ac_position(p, t); });
}

Trajectory sample_exp_kernel(const TrajectoryProblem& p, int n) {
    const auto sol = exp_kernel_solution(p);
    return sample_uniform(p, n, sol.jump_initial, sol.jump_terminal,
                          [&](double t) { return sol.position(t); });
}

Trajectory sample_risk_neutral(const TrajectoryProblem& p, int n) {
    const double j = risk_neutral_jump(p);
    return sample_uniform(p, n, j, j, [&](double t) { return risk_neutral_position(p, t); });
}

double euler_residual(const Trajectory& traj, const KernelSpec& kernel, double lambda) {
    const int n = static_cast<int>(traj.times.size());
    if (n < 66) throw std::invalid_argument("grid too coarse: need >= 64 interior points");
    const double h = traj.times[1] - traj.times[0];
    for (int i = 1; i < n; ++i)
        if (std::abs(traj.times[i] - traj.times[i - 1] - h) > 1e-9 * std::max(1.0, h))
            throw std::invalid_argument("euler_residual requires a uniform grid");

    // xdot by central differences (one-sided at the ends)
    std::vector<double> xdot(n);
    xdot[0] = (traj.positions[1] - traj.positions[0]) / h;
    xdot[n - 1] = (traj.positions[n - 1] - traj.positions[n - 2]) / h;
    for (int i = 1; i < n - 1; ++i)
        xdot[i] = (traj.positions[i + 1] - traj.positions[i - 1]) / (2.0 * h);

    std::vector<double> conv(n);
    if (kernel.is_delta()) {
        const double eta = std::get<DeltaKernel>(kernel.family).eta;
        for (int i = 0; i < n; ++i) conv[i] = 2.0 * eta * xdot[i];
    } else {
        for (int i = 0; i < n; ++i) {
            const double t = traj.times[i];
            double acc = 0.0;
            for (int j = 0; j < n; ++j) {
                const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
                acc += w * xdot[j] * eval_kernel(kernel, std::abs(t - traj.times[j]));
            }
            acc *= h;
            acc -= traj.jump_initial * eval_kernel(kernel, t - traj.times.front());
            acc -= traj.jump_terminal * eval_kernel(kernel, traj.times.back() - t);
            conv[i] = acc;
        }
    }

    const double denom = std::max(std::abs(traj.x0() - traj.xT()), 1e-300);
    double worst = 0.0;
    for (int i = 2; i < n - 2; ++i) {
        const double dconv = (conv[i + 1] - conv[i - 1]) / (2.0 * h);
        const double r = std::abs(2.0 * lambda * traj.positions[i] - dconv);
        worst = std::max(worst, r);
    }
    return worst / denom;
}

} // namespace impactlab
