#include "orbitherm/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace orbitherm {

ModeBasis decompose(const JacobianBundle& jacobian, const Vector& capacitance) {
    const Matrix& j = jacobian.matrix;
    const int n = static_cast<int>(j.rows());
    if (capacitance.size() != n)
        throw ValidationError("decompose: capacitance length mismatch");

    // Diagonalize the similarity transform A = C^{1/2} J C^{-1/2}; it is
    // nearly symmetric, so its eigenvectors are well conditioned, and mapping
    // back with C^{-1/2} gives mode columns with P^t C P = I diagonals.
    const Vector sqrt_c = capacitance.cwiseSqrt();
    const Matrix a = sqrt_c.asDiagonal() * j * sqrt_c.cwiseInverse().asDiagonal();

    Eigen::EigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success)
        throw NumericsError("decompose: eigensolver failed to converge");
    const ComplexVector values = solver.eigenvalues();
    const ComplexMatrix vectors = solver.eigenvectors();

    const double scale = values.cwiseAbs().maxCoeff();
    const double max_imag = values.imag().cwiseAbs().maxCoeff();
    if (max_imag > 1e-6 * scale)
        throw NumericsError("decompose: complex eigenvalues beyond tolerance (max imag " +
                            std::to_string(max_imag) + ", scale " + std::to_string(scale) +
                            "); the model is outside the real-spectrum regime");

    // Real eigenbasis. Eigenvalues accepted as real; a numerically complex
    // conjugate pair (tiny imaginary part) spans its invariant subspace with
    // the real and imaginary parts of one column.
    Matrix basis(n, n);
    Vector lambdas(n);
    for (int k = 0; k < n; ++k) {
        lambdas[k] = values[k].real();
        if (values[k].imag() == 0.0) {
            basis.col(k) = vectors.col(k).real();
        } else if (k + 1 < n && values[k + 1] == std::conj(values[k])) {
            basis.col(k) = vectors.col(k).real();
            basis.col(k + 1) = vectors.col(k).imag();
            lambdas[k + 1] = values[k + 1].real();
            ++k;
        } else {
            basis.col(k) = vectors.col(k).real();
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int p, int q) {
        return std::abs(lambdas[p]) > std::abs(lambdas[q]);
    });

    ModeBasis result;
    result.max_imag_part = max_imag;
    result.eigenvalues.resize(n);
    result.mode_matrix.resize(n, n);
    for (int k = 0; k < n; ++k) {
        result.eigenvalues[k] = lambdas[order[k]];
        Vector column = basis.col(order[k]).normalized();  // unit in the C metric after mapping
        result.mode_matrix.col(k) = sqrt_c.cwiseInverse().asDiagonal() * column;
    }

    // Sign convention: largest-magnitude component positive; the Perron
    // (slowest) column comes out strictly positive for irreducible models.
    for (int k = 0; k < n; ++k) {
        int imax = 0;
        result.mode_matrix.col(k).cwiseAbs().maxCoeff(&imax);
        if (result.mode_matrix(imax, k) < 0.0) result.mode_matrix.col(k) *= -1.0;
    }

    Eigen::FullPivLU<Matrix> lu(result.mode_matrix);
    if (lu.rank() < n)
        throw NumericsError("decompose: defective Jacobian (eigenvector matrix is singular)");
    result.inverse_modes = lu.inverse();

    result.relaxation_times = result.eigenvalues.cwiseAbs().cwiseInverse();

    const Matrix gram = result.mode_matrix.transpose() * capacitance.asDiagonal() *
                        result.mode_matrix;
    result.normalization_error = (gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();

    const double j_norm = j.norm();
    for (int k = 0; k < n; ++k) {
        const Vector p = result.mode_matrix.col(k);
        double residual = (j * p - result.eigenvalues[k] * p).norm() / (j_norm * p.norm());
        result.max_mode_residual = std::max(result.max_mode_residual, residual);
    }
    return result;
}

PerronMode perron_mode(const ModeBasis& basis) {
    const int n = static_cast<int>(basis.eigenvalues.size());
    PerronMode mode;
    mode.eigenvalue = basis.eigenvalues[n - 1];
    mode.eigenvector = basis.mode_matrix.col(n - 1).normalized();
    std::string offenders;
    for (int i = 0; i < n; ++i)
        if (!(mode.eigenvector[i] > 0.0)) offenders += " " + std::to_string(i + 1);
    if (!offenders.empty())
        throw NumericsError("perron_mode: eigenvector not strictly positive at node(s)" +
                            offenders + " (irreducibility breach)");
    return mode;
}

Vector antisymmetric_eigen_shift(const JacobianBundle& jacobian, const Vector& capacitance) {
    const Matrix& j = jacobian.matrix;
    const int n = static_cast<int>(j.rows());
    if (capacitance.size() != n)
        throw ValidationError("antisymmetric_eigen_shift: capacitance length mismatch");
    const Vector sqrt_c = capacitance.cwiseSqrt();
    const Matrix a = sqrt_c.asDiagonal() * j * sqrt_c.cwiseInverse().asDiagonal();
    const Matrix sym = 0.5 * (a + a.transpose());
    const Matrix antisym = 0.5 * (a - a.transpose());

    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw NumericsError("antisymmetric_eigen_shift: symmetric eigensolver failed");
    Vector shifts(n);
    for (int k = 0; k < n; ++k) {
        const Vector e = solver.eigenvectors().col(k);
        shifts[k] = e.dot(antisym * e);
    }
    return shifts;
}

}  // namespace orbitherm
