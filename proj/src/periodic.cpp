#include "orbitherm/periodic.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "orbitherm/steady.hpp"

namespace orbitherm {

namespace {

using Complex = std::complex<double>;

// Resolvent solves (2 pi i m' I / T - J)^{-1} Fhat(m) for the independent
// harmonics m = 1..n/2; the upper half is mirrored as exact conjugates so the
// reconstruction is real to machine precision.
ComplexMatrix response_coefficients(const Matrix& j, const Spectrum& spectrum) {
    const int n = spectrum.sample_count();
    const int cols = static_cast<int>(spectrum.coefficients.cols());
    const int dim = static_cast<int>(j.rows());
    if (cols != dim) throw ValidationError("response: spectrum/Jacobian size mismatch");

    ComplexMatrix coeffs = ComplexMatrix::Zero(n, cols);
    const ComplexMatrix jc = j.cast<Complex>();
    for (int m = 1; m <= n / 2; ++m) {
        const double omega = 2.0 * std::numbers::pi * m / spectrum.period;
        ComplexMatrix lhs = -jc;
        lhs.diagonal().array() += Complex(0.0, omega);
        Eigen::PartialPivLU<ComplexMatrix> lu(lhs);
        coeffs.row(m) = lu.solve(spectrum.coefficients.row(m).transpose()).transpose();
        if (m != n - m) coeffs.row(n - m) = coeffs.row(m).conjugate();
    }
    return coeffs;
}

void apply_fejer(ComplexMatrix& coeffs) {
    const Vector weights = fejer_weights(static_cast<int>(coeffs.rows()));
    coeffs.array().colwise() *= weights.array().cast<Complex>();
}

}  // namespace

Matrix first_order_fourier(const JacobianBundle& jacobian, const Spectrum& spectrum,
                           bool cesaro) {
    ComplexMatrix coeffs = response_coefficients(jacobian.matrix, spectrum);
    if (cesaro) apply_fejer(coeffs);
    return dft_inverse_real(coeffs);
}

Matrix cesaro_smooth(const JacobianBundle& jacobian, const Spectrum& spectrum) {
    return first_order_fourier(jacobian, spectrum, true);
}

Matrix evaluate_fourier(const JacobianBundle& jacobian, const Spectrum& spectrum,
                        const Vector& times, bool cesaro) {
    ComplexMatrix coeffs = response_coefficients(jacobian.matrix, spectrum);
    if (cesaro) apply_fejer(coeffs);
    const int n = spectrum.sample_count();
    const int cols = static_cast<int>(coeffs.cols());
    const int half = (n - 1) / 2;

    Matrix out = Matrix::Zero(times.size(), cols);
    for (int p = 0; p < times.size(); ++p) {
        const double fraction = times[p] / spectrum.period;
        for (int m = 1; m <= half; ++m) {
            double angle = 2.0 * std::numbers::pi * m * fraction;
            const Complex phase(std::cos(angle), std::sin(angle));
            for (int jcol = 0; jcol < cols; ++jcol)
                out(p, jcol) += 2.0 * (coeffs(m, jcol) * phase).real();
        }
        if (n % 2 == 0) {
            double angle = std::numbers::pi * n * fraction;
            const Complex phase(std::cos(angle), std::sin(angle));
            for (int jcol = 0; jcol < cols; ++jcol)
                out(p, jcol) += (coeffs(n / 2, jcol) * phase).real();
        }
    }
    return out;
}

Matrix first_order_integral(const JacobianBundle& jacobian, const Matrix& driving,
                            double period, int oversample) {
    const Matrix& j = jacobian.matrix;
    const int n = static_cast<int>(driving.rows());
    const int dim = static_cast<int>(j.rows());
    if (driving.cols() != dim)
        throw ValidationError("first_order_integral: driving/Jacobian size mismatch");
    if (n < 2) throw ValidationError("first_order_integral: need at least 2 samples");
    if (oversample < 1) throw ValidationError("first_order_integral: oversample must be >= 1");

    // Band-limited refinement of the driving; the constant part passes
    // through the interpolation untouched.
    Matrix fine;
    if (oversample == 1) {
        fine = driving;
    } else {
        const Vector mean = driving.colwise().mean();
        Spectrum spectrum = dft_forward(driving.rowwise() - mean.transpose(), period);
        fine = trig_resample(spectrum, oversample);
        fine.rowwise() += mean.transpose();
    }
    const long long nf = fine.rows();
    const double hf = period / static_cast<double>(nf);

    const Matrix step_exp = (hf * j).exp();
    const Matrix period_exp = (period * j).exp();
    Eigen::PartialPivLU<Matrix> reduction(Matrix::Identity(dim, dim) - period_exp);

    // Trapezoid over [0, jmax*hf] of exp(tau J) F(t_k0 - tau), evaluated by a
    // Horner recursion in exp(hf J); F wraps periodically.
    auto convolve = [&](long long k0, long long jmax) {
        Vector acc = 0.5 * fine.row(((k0 - jmax) % nf + nf) % nf).transpose();
        for (long long jj = jmax - 1; jj >= 1; --jj)
            acc = step_exp * acc + fine.row(((k0 - jj) % nf + nf) % nf).transpose();
        acc = step_exp * acc + 0.5 * fine.row(((k0 % nf) + nf) % nf).transpose();
        return (hf * acc).eval();
    };

    Matrix out(n, dim);
    Vector current = reduction.solve(convolve(0, nf));
    out.row(0) = current.transpose();
    const Matrix sample_exp = ((period / n) * j).exp();
    for (int k = 1; k < n; ++k) {
        current = sample_exp * current + convolve(static_cast<long long>(k) * oversample,
                                                  oversample);
        out.row(k) = current.transpose();
    }
    if (!out.allFinite()) throw NumericsError("first_order_integral: quadrature failure");
    return out;
}

Matrix second_order_driving(const ThermalModel& model, const Vector& steady_temperatures,
                            const Matrix& first_order) {
    const int n = static_cast<int>(first_order.rows());
    const int dim = model.node_count();
    if (first_order.cols() != dim || steady_temperatures.size() != dim)
        throw ValidationError("second_order_driving: size mismatch");

    const Vector t2 = steady_temperatures.array().square();
    const Matrix squared = first_order.array().square();  // T1_j^2 per sample
    Matrix g(n, dim);
    for (int i = 0; i < dim; ++i) {
        const Vector couple = (6.0 / model.capacitance[i]) *
                              (model.radiation.row(i).transpose().array() * t2.array()).matrix();
        const double self =
            (6.0 / model.capacitance[i]) *
            (model.radiation.row(i).sum() + model.env_radiation[i]) * t2[i];
        g.col(i) = squared * couple - self * squared.col(i);
    }
    return g;
}

SecondOrder second_order_solve(const JacobianBundle& jacobian, const Matrix& g_samples,
                               double period, bool cesaro) {
    const Vector mean = g_samples.colwise().mean();
    Spectrum spectrum = dft_forward(g_samples.rowwise() - mean.transpose(), period);
    SecondOrder result;
    result.static_shift = Eigen::PartialPivLU<Matrix>(jacobian.matrix).solve(-mean);
    result.samples = first_order_fourier(jacobian, spectrum, cesaro);
    result.samples.rowwise() += result.static_shift.transpose();
    return result;
}

Matrix mode_truncated(const ModeBasis& basis, const Spectrum& spectrum, int keep,
                      bool asymptotic) {
    const int n = spectrum.sample_count();
    const int dim = static_cast<int>(basis.eigenvalues.size());
    if (keep < 0 || keep > dim)
        throw ValidationError("mode_truncated: keep must be in [0, N]");
    if (spectrum.coefficients.cols() != dim)
        throw ValidationError("mode_truncated: spectrum/basis size mismatch");

    // Modes are sorted fastest first, so the kept (slowest) ones are the
    // last `keep` columns.
    const int first_kept = dim - keep;
    const ComplexMatrix modal = spectrum.coefficients * basis.inverse_modes.transpose();

    ComplexMatrix coeffs = ComplexMatrix::Zero(n, dim);
    for (int m = 1; m <= n / 2; ++m) {
        const Complex iw(0.0, 2.0 * std::numbers::pi * m / spectrum.period);
        ComplexVector node_coeff = ComplexVector::Zero(dim);
        for (int a = first_kept; a < dim; ++a)
            node_coeff += (modal(m, a) / (iw - basis.eigenvalues[a])) *
                          basis.mode_matrix.col(a).cast<Complex>();
        coeffs.row(m) = node_coeff.transpose();
        if (m != n - m) coeffs.row(n - m) = coeffs.row(m).conjugate();
    }
    Matrix out = dft_inverse_real(coeffs);

    if (asymptotic && first_kept > 0) {
        // Leading fast-mode asymptotics: each dropped mode responds
        // quasi-statically as F_a(t)/(-lambda_a).
        const Matrix samples = dft_inverse_real(spectrum.coefficients);
        const Matrix modal_samples = samples * basis.inverse_modes.transpose();
        for (int a = 0; a < first_kept; ++a)
            out += (modal_samples.col(a) / -basis.eigenvalues[a]) *
                   basis.mode_matrix.col(a).transpose();
    }
    return out;
}

PeriodicSolution solve_periodic(const ThermalModel& model, const HeatProfile& profile,
                                const PeriodicOptions& options) {
    if (options.order != 1 && options.order != 2)
        throw ValidationError("solve_periodic: order must be 1 or 2");
    if (options.cesaro && options.method == PeriodicMethod::integral)
        throw ValidationError("solve_periodic: cesaro applies to the fourier method only");
    if (options.modes_kept >= 0 && options.method == PeriodicMethod::integral)
        throw ValidationError("solve_periodic: mode truncation applies to the fourier method only");

    SteadyOptions steady_options;
    steady_options.tol = options.steady_tol;
    const SteadyState steady = solve_steady(model, profile.means, steady_options);
    const JacobianBundle jacobian = jacobian_exact(model, steady.temperatures);

    const int n = profile.sample_count();
    PeriodicSolution solution;
    solution.method = options.method;
    solution.modes_kept = options.modes_kept;
    solution.cesaro = options.cesaro;
    solution.base = steady.temperatures;
    solution.times.resize(n);
    for (int k = 0; k < n; ++k) solution.times[k] = k * profile.period / n;

    if (options.method == PeriodicMethod::fourier) {
        Spectrum spectrum = dft_forward(profile.driving, profile.period);
        if (options.modes_kept >= 0) {
            if (options.cesaro) apply_fejer(spectrum.coefficients);
            const ModeBasis basis = decompose(jacobian, model.capacitance);
            solution.first_order = mode_truncated(basis, spectrum, options.modes_kept,
                                                  options.asymptotic_tail);
        } else {
            solution.first_order = first_order_fourier(jacobian, spectrum, options.cesaro);
        }
    } else {
        solution.first_order =
            first_order_integral(jacobian, profile.driving, profile.period, options.oversample);
    }

    if (options.order == 2) {
        const Matrix g = second_order_driving(model, steady.temperatures, solution.first_order);
        if (options.method == PeriodicMethod::fourier) {
            const SecondOrder second =
                second_order_solve(jacobian, g, profile.period, options.cesaro);
            solution.second_order = second.samples;
            solution.second_order_shift = second.static_shift;
        } else {
            solution.second_order =
                first_order_integral(jacobian, g, profile.period, options.oversample);
            solution.second_order_shift =
                Eigen::PartialPivLU<Matrix>(jacobian.matrix).solve(-g.colwise().mean().transpose());
        }
    } else {
        solution.second_order = Matrix::Zero(n, model.node_count());
        solution.second_order_shift = Vector::Zero(model.node_count());
    }

    solution.total = solution.first_order + solution.second_order;
    solution.total.rowwise() += solution.base.transpose();
    return solution;
}

}  // namespace orbitherm
