#pragma once

#include <functional>
#include <vector>

#include "orbitherm/model.hpp"
#include "orbitherm/periodic.hpp"
#include "orbitherm/types.hpp"

namespace orbitherm {

/// Heat input as a function of time, W per node.
using HeatInputFn = std::function<Vector(double)>;

/// Piecewise-linear periodic interpolation of the profile's samples.
HeatInputFn profile_heat_input(const HeatProfile& profile);

struct IntegrationOptions {
    double rtol = 1e-8;
    double atol = 1e-6;       ///< K
    double max_step = 0.0;    ///< 0 = unlimited
    double initial_step = 0.0;  ///< 0 = automatic
};

/// Adaptive Dormand-Prince 5(4) trajectory.
struct Trajectory {
    std::vector<double> times;    ///< strictly increasing, s
    std::vector<Vector> states;   ///< K, one per time
    int accepted_steps = 0;
    int rejected_steps = 0;
    double min_step = 0.0;
    double max_step = 0.0;

    const Vector& final_state() const { return states.back(); }
};

/// Integrate the exact nonlinear balance from t0 to t1; states are recorded
/// at every accepted step (plus both endpoints).
Trajectory integrate(const ThermalModel& model, const HeatInputFn& qdot, const Vector& T0,
                     double t0, double t1, const IntegrationOptions& options = {});

Trajectory integrate(const ThermalModel& model, const HeatProfile& profile, const Vector& T0,
                     double t0, double t1, const IntegrationOptions& options = {});

struct CyclicOptions {
    double cycle_tol = 1e-3;  ///< K, max-norm period start/end mismatch
    int max_periods = 50;
    IntegrationOptions integration;
};

/// Converged periodic orbit sampled at n uniform times over one period.
struct CyclicOrbit {
    Vector times;                          ///< k T / n, s
    Matrix orbit;                          ///< n x N, K
    int periods_used = 0;
    std::vector<double> period_mismatches; ///< max-norm start/end gap per period, K
};

/// Integrate whole periods from the averaged steady state until the period
/// start/end temperatures agree within cycle_tol, then sample the converged
/// orbit at the profile's n sample times.
CyclicOrbit cyclic_solve(const ThermalModel& model, const HeatProfile& profile,
                         const CyclicOptions& options = {});

/// Same with an arbitrary heat-input function and output sampling.
CyclicOrbit cyclic_solve(const ThermalModel& model, const HeatInputFn& qdot, double period,
                         int n_out, const Vector& start, const CyclicOptions& options = {});

/// Deviation of the linear solution from a reference orbit on the same grid.
struct ComparisonReport {
    Matrix delta;              ///< oracle - linear total, n x N, K
    Vector max_abs_per_node;   ///< K
    std::vector<int> argmax_per_node;
    double max_abs = 0.0;
    int max_row = 0;           ///< sample index of the largest deviation
    int max_col = 0;           ///< node index of the largest deviation
};

ComparisonReport compare(const PeriodicSolution& linear, const CyclicOrbit& oracle);

}  // namespace orbitherm
