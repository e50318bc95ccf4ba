#include "orbitherm/steady.hpp"

#include <cmath>
#include <string>

#include "orbitherm/linearize.hpp"

namespace orbitherm {

Vector balance_rhs(const ThermalModel& model, const Vector& temperatures, const Vector& qdot) {
    const int n = model.node_count();
    if (temperatures.size() != n || qdot.size() != n)
        throw ValidationError("balance_rhs: expected " + std::to_string(n) +
                              " temperatures and heat inputs");
    const Vector t4 = temperatures.array().pow(4);
    const double env4 = std::pow(model.env_temperature, 4);
    Vector out(n);
    for (int i = 0; i < n; ++i) {
        double exchange = 0.0;
        for (int j = 0; j < n; ++j) {
            exchange += model.conduction(i, j) * (temperatures[i] - temperatures[j]);
            exchange += model.radiation(i, j) * (t4[i] - t4[j]);
        }
        out[i] = (qdot[i] - exchange - model.env_radiation[i] * (t4[i] - env4)) /
                 model.capacitance[i];
    }
    return out;
}

SteadyState solve_steady(const ThermalModel& model, const Vector& qdot,
                         const SteadyOptions& options) {
    const int n = model.node_count();
    if (qdot.size() != n)
        throw ValidationError("solve_steady: expected " + std::to_string(n) + " heat inputs");

    SteadyState state;
    state.inputs_used = qdot;
    Vector t = options.init.size() == n ? options.init : Vector::Constant(n, 300.0);
    if (options.init.size() != 0 && options.init.size() != n)
        throw ValidationError("solve_steady: init vector has the wrong length");

    Vector residual = balance_rhs(model, t, qdot);
    double norm = residual.cwiseAbs().maxCoeff();
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        if (norm <= options.tol) {
            state.temperatures = t;
            state.residual_norm = norm;
            state.iterations = iter;
            return state;
        }
        Eigen::PartialPivLU<Matrix> lu(jacobian_exact(model, t).matrix);
        if (std::abs(lu.determinant()) == 0.0)
            throw NumericsError("solve_steady: singular Jacobian (model invariant breach)");
        const Vector step = lu.solve(-residual);

        // Step halving until the residual norm actually decreases; clamp at
        // 1 K to stay clear of negative-temperature quartic pathologies.
        double alpha = 1.0;
        Vector t_next;
        Vector r_next;
        double norm_next = norm;
        for (int halving = 0; halving <= 30; ++halving) {
            t_next = t + alpha * step;
            for (int i = 0; i < n; ++i) {
                if (t_next[i] < 1.0) {
                    t_next[i] = 1.0;
                    ++state.clamp_activations;
                }
            }
            r_next = balance_rhs(model, t_next, qdot);
            norm_next = r_next.cwiseAbs().maxCoeff();
            if (norm_next < norm) break;
            alpha *= 0.5;
        }
        t = t_next;
        residual = r_next;
        norm = norm_next;
    }
    if (norm <= options.tol) {
        state.temperatures = t;
        state.residual_norm = norm;
        state.iterations = options.max_iterations;
        return state;
    }
    throw ConvergenceError("solve_steady: no convergence after " +
                           std::to_string(options.max_iterations) +
                           " iterations (residual " + std::to_string(norm) + " K/s)");
}

HotColdResult hot_cold_cases(const ThermalModel& model, const HeatProfile& profile,
                             const SteadyOptions& options) {
    const Vector load = total_load(profile);
    int hot = 0;
    int cold = 0;
    for (int k = 1; k < load.size(); ++k) {
        if (load[k] > load[hot]) hot = k;  // ties keep the earliest index
        if (load[k] < load[cold]) cold = k;
    }
    HotColdResult result;
    result.hot_index = hot;
    result.cold_index = cold;
    result.hot = solve_steady(model, profile.samples.row(hot).transpose(), options);
    result.cold = solve_steady(model, profile.samples.row(cold).transpose(), options);
    return result;
}

}  // namespace orbitherm
