#include "orbitherm/fourier.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace orbitherm {

namespace {

// Twiddle table w[r] = exp(-2 pi i r / n) with the upper half reflected from
// the lower half, so conj(w[r]) == w[n - r] holds bit-exactly and real input
// yields exactly conjugate-symmetric coefficients.
std::vector<std::complex<double>> twiddle_table(int n) {
    std::vector<std::complex<double>> w(n);
    for (int r = 0; r <= n / 2; ++r) {
        double angle = -2.0 * std::numbers::pi * r / n;
        w[r] = {std::cos(angle), std::sin(angle)};
    }
    for (int r = n / 2 + 1; r < n; ++r) w[r] = std::conj(w[n - r]);
    return w;
}

}  // namespace

int signed_frequency(int m, int n) { return m <= n / 2 ? m : m - n; }

Spectrum dft_forward(const Matrix& samples, double period) {
    const int n = static_cast<int>(samples.rows());
    const int cols = static_cast<int>(samples.cols());
    if (n < 2) throw ValidationError("dft_forward: need at least 2 samples");
    if (!(period > 0.0)) throw ValidationError("dft_forward: period must be > 0");
    for (int j = 0; j < cols; ++j) {
        double mean = samples.col(j).mean();
        double scale = samples.col(j).cwiseAbs().maxCoeff();
        if (std::abs(mean) > 1e-9 * scale)
            throw ValidationError("dft_forward: column " + std::to_string(j + 1) +
                                  " is not zero-mean (mean " + std::to_string(mean) + ")");
    }

    const auto w = twiddle_table(n);
    Spectrum spectrum;
    spectrum.period = period;
    spectrum.coefficients.resize(n, cols);
    for (int m = 0; m < n; ++m) {
        for (int j = 0; j < cols; ++j) {
            std::complex<double> acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += samples(k, j) * w[static_cast<int>((static_cast<long long>(m) * k) % n)];
            spectrum.coefficients(m, j) = acc / static_cast<double>(n);
        }
    }
    return spectrum;
}

Matrix dft_inverse_real(const ComplexMatrix& coefficients) {
    const int n = static_cast<int>(coefficients.rows());
    const int cols = static_cast<int>(coefficients.cols());
    const auto w = twiddle_table(n);
    Matrix out(n, cols);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < cols; ++j) {
            std::complex<double> acc = 0.0;
            for (int m = 0; m < n; ++m)
                acc += coefficients(m, j) *
                       std::conj(w[static_cast<int>((static_cast<long long>(m) * k) % n)]);
            out(k, j) = acc.real();
        }
    return out;
}

Vector fejer_weights(int n) {
    const double big_m = 0.5 * (n + 1);
    Vector weights(n);
    for (int m = 0; m < n; ++m)
        weights[m] = std::max(0.0, 1.0 - std::abs(signed_frequency(m, n)) / big_m);
    return weights;
}

Matrix trig_interpolate(const Spectrum& spectrum, const Vector& fractions) {
    const int n = spectrum.sample_count();
    const int cols = static_cast<int>(spectrum.coefficients.cols());
    const int points = static_cast<int>(fractions.size());
    const int half = (n - 1) / 2;

    Matrix out = Matrix::Zero(points, cols);
    out.rowwise() += spectrum.coefficients.row(0).real();
    for (int p = 0; p < points; ++p) {
        for (int m = 1; m <= half; ++m) {
            double angle = 2.0 * std::numbers::pi * m * fractions[p];
            const std::complex<double> phase(std::cos(angle), std::sin(angle));
            for (int j = 0; j < cols; ++j)
                out(p, j) += 2.0 * (spectrum.coefficients(m, j) * phase).real();
        }
        if (n % 2 == 0) {
            double angle = std::numbers::pi * n * fractions[p];
            for (int j = 0; j < cols; ++j)
                out(p, j) += spectrum.coefficients(n / 2, j).real() * std::cos(angle);
        }
    }
    return out;
}

Matrix trig_resample(const Spectrum& spectrum, int oversample) {
    if (oversample < 1) throw ValidationError("trig_resample: oversample must be >= 1");
    const int n = spectrum.sample_count();
    const long long fine = static_cast<long long>(n) * oversample;
    Vector fractions(fine);
    for (long long p = 0; p < fine; ++p) fractions[p] = static_cast<double>(p) / fine;
    return trig_interpolate(spectrum, fractions);
}

}  // namespace orbitherm
