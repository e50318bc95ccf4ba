#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "orbitherm/types.hpp"

namespace orbitherm {

/// Lumped-parameter thermal network: N isothermal nodes with capacitances,
/// linear conduction couplings, quartic radiation couplings, and radiation
/// to a cold environment.
///
/// Node i obeys
///   C_i dT_i/dt = Qdot_i(t) - sum_j [K_ij (T_i - T_j) + R_ij (T_i^4 - T_j^4)]
///                 - R_i (T_i^4 - T0^4).
///
/// All temperatures are kelvin internally; conversions to Celsius happen
/// only in display code.
struct ThermalModel {
    Vector capacitance;              ///< C_i, J/K
    Matrix conduction;               ///< K_ij, W/K, symmetric, zero diagonal
    Matrix radiation;                ///< R_ij, W/K^4, symmetric, zero diagonal
    Vector env_radiation;            ///< R_i, W/K^4
    double env_temperature = 2.73;   ///< T0, K
    std::vector<std::string> node_labels;
    Vector mean_inputs;              ///< optional reference means, W (size 0 when absent)

    int node_count() const { return static_cast<int>(capacitance.size()); }
};

/// Check every ThermalModel invariant; throws ValidationError naming the
/// violated condition and offending indices. The coupling graph, with a
/// virtual environment node attached wherever R_i > 0, must be connected.
void validate(const ThermalModel& model);

/// Load and validate a model from the JSON format described in the README.
ThermalModel load_model(const std::filesystem::path& path);

/// Write the model back out; numeric fields round-trip bit-exactly.
void save_model(const ThermalModel& model, const std::filesystem::path& path);

/// Periodic heat-input samples over one orbit, uniformly spaced with
/// periodic wraparound, plus the derived per-node means and the zero-mean
/// driving function F_i = (Qdot_i - <Qdot_i>)/C_i.
struct HeatProfile {
    double period = 0.0;   ///< s
    Matrix samples;        ///< n x N, W
    Vector means;          ///< <Qdot_i>, W
    Matrix driving;        ///< n x N, K/s, columns have zero sample mean

    int sample_count() const { return static_cast<int>(samples.rows()); }
};

/// Build a profile from raw samples, deriving means and driving terms.
HeatProfile make_profile(const ThermalModel& model, double period, const Matrix& samples);

/// Load a profile from CSV: header row, column 1 = time in seconds ascending
/// from 0, columns 2..N+1 = heat inputs in watts. Sampling must be uniform
/// within 1e-6 relative. The period defaults to (n/(n-1)) * last time and can
/// be overridden by a "# period = <seconds>" comment line.
HeatProfile load_profile(const std::filesystem::path& path, const ThermalModel& model);

/// Write profile samples as CSV (17 significant digits, period comment line).
void save_profile(const HeatProfile& profile, const std::filesystem::path& path);

/// Total heat load per orbit position: element k is sum_i Qdot_i(k T/n), W.
Vector total_load(const HeatProfile& profile);

}  // namespace orbitherm
