#include "orbitherm/linearize.hpp"

#include <cmath>
#include <string>

namespace orbitherm {

namespace {

void check_reference(const ThermalModel& model, const Vector& temperatures) {
    if (temperatures.size() != model.node_count())
        throw ValidationError("jacobian: expected " + std::to_string(model.node_count()) +
                              " reference temperatures");
    for (int i = 0; i < temperatures.size(); ++i)
        if (!(temperatures[i] > 0.0))
            throw ValidationError("jacobian: reference temperature of node " +
                                  std::to_string(i + 1) + " must be > 0");
}

}  // namespace

JacobianBundle jacobian_exact(const ThermalModel& model, const Vector& temperatures) {
    check_reference(model, temperatures);
    const int n = model.node_count();
    const Vector t3 = temperatures.array().cube();

    JacobianBundle bundle;
    bundle.variant = JacobianVariant::exact;
    bundle.reference_temperatures = temperatures;
    bundle.matrix.resize(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 4.0 * model.env_radiation[i] * t3[i];
        for (int j = 0; j < n; ++j) {
            if (j != i)
                bundle.matrix(i, j) =
                    (model.conduction(i, j) + 4.0 * model.radiation(i, j) * t3[j]) /
                    model.capacitance[i];
            diag += model.conduction(i, j) + 4.0 * model.radiation(i, j) * t3[i];
        }
        bundle.matrix(i, i) = -diag / model.capacitance[i];
    }
    return bundle;
}

JacobianBundle jacobian_heuristic(const ThermalModel& model, const Vector& reference_temperatures,
                                  bool symmetrized) {
    check_reference(model, reference_temperatures);
    const int n = model.node_count();
    const Vector& t = reference_temperatures;
    const Vector t3 = t.array().cube();

    JacobianBundle bundle;
    bundle.variant = symmetrized ? JacobianVariant::heuristic_symmetrized
                                 : JacobianVariant::heuristic_one_sided;
    bundle.reference_temperatures = t;
    bundle.radiation_conductance = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            bundle.radiation_conductance(i, j) =
                symmetrized ? 2.0 * model.radiation(i, j) * (t3[i] + t3[j])
                            : model.radiation(i, j) * (t[i] + t[j]) * (t[i] * t[i] + t[j] * t[j]);
        }
    bundle.env_radiation_conductance = 4.0 * model.env_radiation.array() * t3.array();

    bundle.matrix.resize(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = bundle.env_radiation_conductance[i];
        for (int j = 0; j < n; ++j) {
            double conductance = model.conduction(i, j) + bundle.radiation_conductance(i, j);
            if (j != i) bundle.matrix(i, j) = conductance / model.capacitance[i];
            diag += conductance;
        }
        bundle.matrix(i, i) = -diag / model.capacitance[i];
    }
    return bundle;
}

StructureReport structure_report(const JacobianBundle& jacobian, const Vector& capacitance) {
    const Matrix& j = jacobian.matrix;
    const int n = static_cast<int>(j.rows());
    if (capacitance.size() != n)
        throw ValidationError("structure_report: capacitance length mismatch");

    StructureReport report;
    report.z_matrix = true;
    report.row_diagonally_dominant.resize(n);
    for (int i = 0; i < n; ++i) {
        if (j(i, i) >= 0.0) report.z_matrix = false;
        double off = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            if (j(i, k) < 0.0) report.z_matrix = false;
            off += std::abs(j(i, k));
        }
        report.row_diagonally_dominant[i] = std::abs(j(i, i)) >= off;
    }
    report.all_rows_dominant = true;
    for (bool row : report.row_diagonally_dominant) report.all_rows_dominant &= row;

    // Eigenvalues and antisymmetry of the similarity transform C^{1/2} J C^{-1/2}.
    const Vector sqrt_c = capacitance.cwiseSqrt();
    const Matrix a =
        sqrt_c.asDiagonal() * j * sqrt_c.cwiseInverse().asDiagonal();
    const Matrix antisym = 0.5 * (a - a.transpose());
    report.antisymmetry_ratio = antisym.norm() / a.norm();

    Eigen::EigenSolver<Matrix> solver(a);
    report.max_eigenvalue_real_part = solver.eigenvalues().real().maxCoeff();
    return report;
}

}  // namespace orbitherm
