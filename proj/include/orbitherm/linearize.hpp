#pragma once

#include <vector>

#include "orbitherm/model.hpp"
#include "orbitherm/types.hpp"

namespace orbitherm {

enum class JacobianVariant {
    exact,                  ///< derivative of the balance at the reference point
    heuristic_one_sided,    ///< radiation conductance R_ij (T_i+T_j)(T_i^2+T_j^2)
    heuristic_symmetrized,  ///< radiation conductance 2 R_ij (T_i^3+T_j^3)
};

/// Jacobian of the energy balance (s^-1) together with the reference
/// temperatures it was evaluated at. -J is a nonsingular M-matrix for any
/// valid model, so all eigenvalues have negative real parts.
struct JacobianBundle {
    Matrix matrix;                       ///< N x N, s^-1
    JacobianVariant variant = JacobianVariant::exact;
    Vector reference_temperatures;       ///< K
    Matrix radiation_conductance;        ///< K^R_ij, W/K (heuristic variants; else 0x0)
    Vector env_radiation_conductance;    ///< K^R_i, W/K (heuristic variants; else empty)
};

/// J_ij = (K_ij + 4 R_ij T_j^3)/C_i for i != j,
/// J_ii = -[sum_k (K_ik + 4 R_ik T_i^3) + 4 R_i T_i^3]/C_i.
JacobianBundle jacobian_exact(const ThermalModel& model, const Vector& temperatures);

/// Radiation couplings replaced by effective conductances evaluated at the
/// reference temperatures (intended: the averaged steady state). Both
/// variants produce a symmetric total conductance, so C^{1/2} J C^{-1/2} is
/// symmetric to rounding. At uniform reference temperatures both variants
/// coincide with the exact Jacobian.
JacobianBundle jacobian_heuristic(const ThermalModel& model, const Vector& reference_temperatures,
                                  bool symmetrized);

/// Structural diagnostics of a Jacobian.
struct StructureReport {
    bool z_matrix = false;                        ///< -J has the Z-matrix sign pattern
    std::vector<bool> row_diagonally_dominant;    ///< |J_ii| >= sum_{j != i} |J_ij| per row
    bool all_rows_dominant = false;
    double max_eigenvalue_real_part = 0;          ///< s^-1
    double antisymmetry_ratio = 0;                ///< ||dA||_F / ||A||_F, A = C^{1/2} J C^{-1/2}
};

StructureReport structure_report(const JacobianBundle& jacobian, const Vector& capacitance);

}  // namespace orbitherm
