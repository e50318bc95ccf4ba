#pragma once

#include "orbitherm/fourier.hpp"
#include "orbitherm/linearize.hpp"
#include "orbitherm/model.hpp"
#include "orbitherm/modes.hpp"
#include "orbitherm/types.hpp"

namespace orbitherm {

enum class PeriodicMethod { fourier, integral };

/// Stationary periodic response of dT/dt = J T + F at the sample times,
/// via per-harmonic resolvent solves (2 pi i m I / T - J)^{-1} Fhat(m) and
/// the inverse discrete transform. With `cesaro`, harmonics are weighted by
/// the Fejer window before reconstruction.
Matrix first_order_fourier(const JacobianBundle& jacobian, const Spectrum& spectrum,
                           bool cesaro = false);

/// Same response evaluated at arbitrary times (seconds) with the explicit
/// finite harmonic sum.
Matrix evaluate_fourier(const JacobianBundle& jacobian, const Spectrum& spectrum,
                        const Vector& times, bool cesaro = false);

/// Fejer-weighted reconstruction of the stationary response.
Matrix cesaro_smooth(const JacobianBundle& jacobian, const Spectrum& spectrum);

/// Stationary periodic response in integral form,
///   T(t) = [I - exp(T J)]^{-1} integral_0^T exp(tau J) F(t - tau) dtau,
/// evaluated at the n sample times with real matrix exponentials and
/// trapezoidal quadrature with periodic wraparound of F. `oversample` > 1
/// first resamples F band-limitedly onto oversample*n points, which makes
/// the quadrature converge (O(oversample^-2)) to the same band-limited
/// response the Fourier path computes; oversample = 1 integrates the raw
/// samples. F need not be zero-mean here (a constant column yields the
/// static response -J^{-1} c).
Matrix first_order_integral(const JacobianBundle& jacobian, const Matrix& driving,
                            double period, int oversample = 1024);

/// Driving term of the second-order correction, evaluated from the steady
/// temperatures and the first-order response:
///   G_i = sum_j (6 R_ij / C_i) Ttilde_j^2 T1_j^2
///         - (6/C_i) (sum_j R_ij + R_i) Ttilde_i^2 T1_i^2.
/// Returned raw (not mean-free).
Matrix second_order_driving(const ThermalModel& model, const Vector& steady_temperatures,
                            const Matrix& first_order);

struct SecondOrder {
    Matrix samples;       ///< n x N, K; includes the static shift
    Vector static_shift;  ///< -J^{-1} <G>, K
};

/// Second-order correction: the sample mean of G is removed before the
/// resolvent solve and reinstated as the static shift -J^{-1}<G>.
SecondOrder second_order_solve(const JacobianBundle& jacobian, const Matrix& g_samples,
                               double period, bool cesaro = false);

/// Response restricted to the `keep` slowest thermal modes. With
/// `asymptotic`, each dropped fast mode contributes its leading asymptotic
/// term F_a(t)/(-lambda_a) instead of nothing; keep = 0 with `asymptotic`
/// gives the quasi-static response -J^{-1} F(t).
Matrix mode_truncated(const ModeBasis& basis, const Spectrum& spectrum, int keep,
                      bool asymptotic);

struct PeriodicOptions {
    PeriodicMethod method = PeriodicMethod::fourier;
    int order = 2;            ///< 1 or 2
    int modes_kept = -1;      ///< -1 = all (fourier method only)
    bool asymptotic_tail = false;
    bool cesaro = false;
    int oversample = 1024;    ///< integral method quadrature refinement
    double steady_tol = 1e-9;
};

/// Sampled periodic solution: steady base plus per-order corrections.
struct PeriodicSolution {
    Vector times;            ///< k T / n, s
    Vector base;             ///< steady temperatures, K
    Matrix first_order;      ///< n x N, K, zero sample mean per column
    Matrix second_order;     ///< n x N, K (zero when order = 1)
    Vector second_order_shift;  ///< static part of the correction, K
    Matrix total;            ///< base + first + second, K
    PeriodicMethod method = PeriodicMethod::fourier;
    int modes_kept = -1;
    bool cesaro = false;
};

/// Full pipeline: averaged steady state, Jacobian, first (and second) order
/// stationary response for the profile's driving function.
PeriodicSolution solve_periodic(const ThermalModel& model, const HeatProfile& profile,
                                const PeriodicOptions& options = {});

}  // namespace orbitherm
