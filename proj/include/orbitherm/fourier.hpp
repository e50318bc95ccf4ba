#pragma once

#include "orbitherm/types.hpp"

namespace orbitherm {

/// Discrete Fourier coefficients of the driving function, one column per
/// node. Coefficient m of column i is
///   Fhat_i(m) = (1/n) sum_k F_i(k T/n) exp(-2 pi i m k / n).
/// For real zero-mean input, Fhat(0) = 0 and Fhat(n-m) = conj(Fhat(m)); the
/// transform enforces the conjugate symmetry exactly (reflected twiddle
/// table), for any n >= 2, even or odd.
struct Spectrum {
    ComplexMatrix coefficients;  ///< n x N, K/s
    double period = 0.0;         ///< s

    int sample_count() const { return static_cast<int>(coefficients.rows()); }
};

/// Forward transform of zero-mean samples. Columns whose sample mean exceeds
/// 1e-9 of the column's max magnitude are rejected (ValidationError).
Spectrum dft_forward(const Matrix& samples, double period);

/// Signed frequency index: m for m <= n/2, m - n otherwise.
int signed_frequency(int m, int n);

/// Real part of the (un-normalized) inverse transform, evaluated at the n
/// sample times: row k is Re sum_m coeffs(m) exp(+2 pi i m k / n).
Matrix dft_inverse_real(const ComplexMatrix& coefficients);

/// Fejer weight per coefficient index: 1 - |m'|/M with M = (n+1)/2, clamped
/// at zero; m' is the signed frequency.
Vector fejer_weights(int n);

/// Band-limited (trigonometric-interpolant) evaluation of sampled data at
/// arbitrary fractions of the period; `fractions` holds t/period values.
Matrix trig_interpolate(const Spectrum& spectrum, const Vector& fractions);

/// Convenience: band-limited resampling onto oversample*n uniform points.
Matrix trig_resample(const Spectrum& spectrum, int oversample);

}  // namespace orbitherm
