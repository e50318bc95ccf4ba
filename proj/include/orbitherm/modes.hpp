#pragma once

#include "orbitherm/linearize.hpp"
#include "orbitherm/types.hpp"

namespace orbitherm {

/// Eigendecomposition of the Jacobian into thermal modes.
///
/// Columns of mode_matrix are eigenvectors of J scaled so that P^t C P has a
/// unit diagonal; its off-diagonal magnitude (normalization_error) measures
/// how far the modes are from C-orthonormal. Eigenvalues are sorted by |λ|
/// descending, so relaxation times 1/|λ| increase with mode index and the
/// Perron (slowest, strictly positive) mode comes last.
struct ModeBasis {
    Vector eigenvalues;          ///< s^-1, |λ| descending
    Matrix mode_matrix;          ///< P, K-valued columns
    Matrix inverse_modes;        ///< P^{-1}
    Vector relaxation_times;     ///< 1/|λ|, s
    double normalization_error = 0;  ///< max |(P^t C P - I)_ab|
    double max_imag_part = 0;        ///< largest |Im λ| before realness acceptance
    double max_mode_residual = 0;    ///< max_a ||J p_a - λ_a p_a|| / (||J|| ||p_a||)
};

/// Diagonalize via the similarity transform A = C^{1/2} J C^{-1/2} (nearly
/// symmetric, well-conditioned eigenvectors) and map back P = C^{-1/2} O.
/// Throws NumericsError if the spectrum is complex beyond 1e-6 relative or
/// the matrix is defective.
ModeBasis decompose(const JacobianBundle& jacobian, const Vector& capacitance);

struct PerronMode {
    double eigenvalue = 0;  ///< smallest-|λ|, s^-1
    Vector eigenvector;     ///< strictly positive, unit Euclidean norm
};

/// The slowest relaxation mode; throws NumericsError with the offending
/// components if the eigenvector is not strictly positive.
PerronMode perron_mode(const ModeBasis& basis);

/// First-order eigenvalue shifts from the antisymmetric part of
/// A = C^{1/2} J C^{-1/2}: splits A = S + dA, diagonalizes the symmetric S
/// with orthonormal eigenvectors e_a and returns dλ_a = e_a^t dA e_a, which
/// vanish identically because dA is antisymmetric.
Vector antisymmetric_eigen_shift(const JacobianBundle& jacobian, const Vector& capacitance);

}  // namespace orbitherm
