#pragma once

#include "orbitherm/model.hpp"
#include "orbitherm/types.hpp"

namespace orbitherm {

/// Fixed point of the averaged energy balance.
struct SteadyState {
    Vector temperatures;        ///< K
    double residual_norm = 0;   ///< max-norm of the balance residual, K/s
    int iterations = 0;
    Vector inputs_used;         ///< W
    int clamp_activations = 0;  ///< times the >= 1 K iteration clamp fired
};

/// Right-hand side of the energy balance: component i is dT_i/dt in K/s for
/// the given temperatures and heat inputs.
Vector balance_rhs(const ThermalModel& model, const Vector& temperatures, const Vector& qdot);

struct SteadyOptions {
    double tol = 1e-9;        ///< K/s, max-norm of the residual
    int max_iterations = 100;
    Vector init;              ///< empty -> uniform 300 K
};

/// Damped Newton solve of balance_rhs(T, qdot) = 0. The solution is unique
/// for a valid (connected, radiating) model, so the result is independent of
/// the starting point within tolerance.
SteadyState solve_steady(const ThermalModel& model, const Vector& qdot,
                         const SteadyOptions& options = {});

struct HotColdResult {
    SteadyState hot;
    SteadyState cold;
    int hot_index = -1;   ///< orbit position of maximum total load
    int cold_index = -1;  ///< orbit position of minimum total load
};

/// Steady states at the orbit positions of maximum and minimum total heat
/// load (ties resolved to the earliest sample index).
HotColdResult hot_cold_cases(const ThermalModel& model, const HeatProfile& profile,
                             const SteadyOptions& options = {});

}  // namespace orbitherm
