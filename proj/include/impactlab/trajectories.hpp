#pragma once

#include "impactlab/kernels.hpp"

#include <vector>

namespace impactlab {

/// Execution problem: liquidate (or acquire) from x0 to xT over [0, horizon].
/// k is the urgency rate of the Dirac-kernel solution, k^2 = lambda; beta is
/// the kernel decay rate and only enters the exponential-kernel solution.
struct TrajectoryProblem {
    double x0;
    double xT;
    double horizon;
    double k = 0.0;
    double beta = 0.0;

    void validate(bool needs_beta = false) const;
    double lambda() const { return k * k; }
};

/// Sampled position path. Jumps are first-class: positions[0] is the value
/// right after the initial block trade and positions back() the value right
/// before the terminal one, so positions[0] == x0 - jump_initial and
/// positions.back() == xT + jump_terminal.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> positions;
    double jump_initial = 0.0;
    double jump_terminal = 0.0;

    double x0() const { return positions.front() + jump_initial; }
    double xT() const { return positions.back() - jump_terminal; }
};

/// Dirac-kernel optimal path
/// x(t) = x0 sinh(k(T-t))/sinh(kT) + xT sinh(kt)/sinh(kT), linear at k -> 0.
double ac_position(const TrajectoryProblem& p, double t);

/// Closed-form solution for the exponential kernel: the sinh interior path
/// shifted by A = asinh(k/beta) plus block trades at both ends.
struct ExpKernelSolution {
    double k_eff;
    double shift;      // A
    double amplitude;  // B = 1/cosh(A)
    double jump_initial;
    double jump_terminal;
    TrajectoryProblem problem;

    /// Interior (open-interval) position; at t=0 and t=T this is the value
    /// after/before the respective jump.
    double position(double t) const;
};

ExpKernelSolution exp_kernel_solution(const TrajectoryProblem& p);

/// Exact lambda -> 0 limit: jumps of (x0-xT)/(beta T + 2) at both ends and a
/// straight line between them. Returns the interior value.
double risk_neutral_position(const TrajectoryProblem& p, double t);
double risk_neutral_jump(const TrajectoryProblem& p);

/// Samplers on a uniform n-point grid (n >= 2, endpoints included).
Trajectory sample_ac(const TrajectoryProblem& p, int n);
Trajectory sample_exp_kernel(const TrajectoryProblem& p, int n);
Trajectory sample_risk_neutral(const TrajectoryProblem& p, int n);

/// Max-norm residual of the optimality condition
///   2 lambda x(t) = d/dt int_0^T xdot(tau) K(|t - tau|) dtau
/// on interior grid points (trapezoid convolution, central differences),
/// normalized by |x0 - xT|. The Dirac kernel convolution is 2 eta xdot(t).
/// Jump impulses enter the convolution analytically.
double euler_residual(const Trajectory& traj, const KernelSpec& kernel, double lambda);

} // namespace impactlab
