#include "orbitherm/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "orbitherm/steady.hpp"

namespace orbitherm {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct Stepper {
    const ThermalModel& model;
    const HeatInputFn& qdot;
    IntegrationOptions options;
    double previous_error = 1.0;

    Vector rhs(double t, const Vector& y) const { return balance_rhs(model, y, qdot(t)); }

    // One accepted adaptive step from (t, y); h is updated in place.
    void step(double& t, Vector& y, double& h, double t_end, Trajectory& stats) {
        const int n = static_cast<int>(y.size());
        for (;;) {
            h = std::min(h, t_end - t);
            Vector k[7];
            for (int s = 0; s < 7; ++s) {
                Vector ys = y;
                for (int j = 0; j < s; ++j)
                    if (kA[s][j] != 0.0) ys += (h * kA[s][j]) * k[j];
                k[s] = rhs(t + kC[s] * h, ys);
            }
            Vector y5 = y;
            Vector err = Vector::Zero(n);
            for (int s = 0; s < 7; ++s) {
                if (kB5[s] != 0.0) y5 += (h * kB5[s]) * k[s];
                err += (h * (kB5[s] - kB4[s])) * k[s];
            }
            if (!y5.allFinite())
                throw NumericsError("integrate: non-finite state at t = " + std::to_string(t));

            double norm = 0.0;
            for (int i = 0; i < n; ++i) {
                double scale = options.atol +
                               options.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                norm += std::pow(err[i] / scale, 2);
            }
            norm = std::sqrt(norm / n);

            if (norm <= 1.0) {
                t += h;
                y = y5;
                ++stats.accepted_steps;
                stats.min_step = std::min(stats.min_step, h);
                stats.max_step = std::max(stats.max_step, h);
                // PI controller (order-5 error estimate).
                double factor = norm > 0.0
                                    ? 0.9 * std::pow(norm, -0.7 / 5.0) *
                                          std::pow(previous_error, 0.4 / 5.0)
                                    : 5.0;
                previous_error = std::max(norm, 1e-10);
                h *= std::clamp(factor, 0.2, 5.0);
                if (options.max_step > 0.0) h = std::min(h, options.max_step);
                return;
            }
            ++stats.rejected_steps;
            h *= std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 1.0);
            if (h < 1e-12 * std::max(1.0, std::abs(t)))
                throw NumericsError(
                    "integrate: step size underflow at t = " + std::to_string(t) +
                    "; the model may be stiffer than an explicit method handles "
                    "(review coupling magnitudes)");
        }
    }

    double initial_step(double t0, const Vector& y0, double span) const {
        if (options.initial_step > 0.0) return std::min(options.initial_step, span);
        // Small fraction of the span, bounded by the explicit stability scale
        // estimated from the rhs magnitude.
        const Vector f = rhs(t0, y0);
        double scale = f.cwiseAbs().maxCoeff();
        double h = scale > 0.0 ? 0.01 * (options.atol + options.rtol * 300.0) / scale : span / 100;
        h = std::clamp(h, 1e-6 * span, span / 10);
        if (options.max_step > 0.0) h = std::min(h, options.max_step);
        return h;
    }
};

}  // namespace

HeatInputFn profile_heat_input(const HeatProfile& profile) {
    const Matrix samples = profile.samples;
    const double period = profile.period;
    const int n = static_cast<int>(samples.rows());
    return [samples, period, n](double t) -> Vector {
        double u = std::fmod(t, period);
        if (u < 0.0) u += period;
        double position = u / period * n;
        int k = static_cast<int>(position);
        if (k >= n) k = n - 1;  // guards the u == period edge after rounding
        double theta = position - k;
        return (1.0 - theta) * samples.row(k).transpose() +
               theta * samples.row((k + 1) % n).transpose();
    };
}

Trajectory integrate(const ThermalModel& model, const HeatInputFn& qdot, const Vector& T0,
                     double t0, double t1, const IntegrationOptions& options) {
    if (T0.size() != model.node_count())
        throw ValidationError("integrate: initial state has the wrong length");
    for (int i = 0; i < T0.size(); ++i)
        if (!(T0[i] > 0.0))
            throw ValidationError("integrate: initial temperature of node " +
                                  std::to_string(i + 1) + " must be > 0");
    if (!(t1 > t0)) throw ValidationError("integrate: need t1 > t0");

    Trajectory trajectory;
    trajectory.min_step = std::numeric_limits<double>::infinity();
    trajectory.max_step = 0.0;

    Stepper stepper{model, qdot, options};
    double t = t0;
    Vector y = T0;
    double h = stepper.initial_step(t0, y, t1 - t0);
    trajectory.times.push_back(t);
    trajectory.states.push_back(y);
    while (t < t1) {
        stepper.step(t, y, h, t1, trajectory);
        trajectory.times.push_back(t);
        trajectory.states.push_back(y);
    }
    return trajectory;
}

Trajectory integrate(const ThermalModel& model, const HeatProfile& profile, const Vector& T0,
                     double t0, double t1, const IntegrationOptions& options) {
    return integrate(model, profile_heat_input(profile), T0, t0, t1, options);
}

namespace {

// Advance exactly one interval and return only the final state.
Vector advance(Stepper& stepper, Vector y, double t0, double t1, Trajectory& stats) {
    double t = t0;
    double h = stepper.initial_step(t0, y, t1 - t0);
    while (t < t1) stepper.step(t, y, h, t1, stats);
    return y;
}

}  // namespace

CyclicOrbit cyclic_solve(const ThermalModel& model, const HeatInputFn& qdot, double period,
                         int n_out, const Vector& start, const CyclicOptions& options) {
    if (n_out < 1) throw ValidationError("cyclic_solve: need at least one output sample");
    Stepper stepper{model, qdot, options.integration};
    Trajectory stats;
    stats.min_step = std::numeric_limits<double>::infinity();

    CyclicOrbit result;
    Vector y = start;
    int converged_at = -1;
    for (int p = 0; p < options.max_periods; ++p) {
        const Vector y_next = advance(stepper, y, p * period, (p + 1) * period, stats);
        const double mismatch = (y_next - y).cwiseAbs().maxCoeff();
        result.period_mismatches.push_back(mismatch);
        y = y_next;
        if (mismatch <= options.cycle_tol) {
            converged_at = p + 1;
            break;
        }
    }
    if (converged_at < 0)
        throw ConvergenceError("cyclic_solve: no periodic convergence after " +
                               std::to_string(options.max_periods) + " periods (last mismatch " +
                               std::to_string(result.period_mismatches.back()) + " K)");
    result.periods_used = converged_at;

    // Sample the converged orbit over one more period.
    const double t_base = converged_at * period;
    result.times.resize(n_out);
    result.orbit.resize(n_out, model.node_count());
    result.orbit.row(0) = y.transpose();
    result.times[0] = 0.0;
    for (int k = 1; k < n_out; ++k) {
        y = advance(stepper, y, t_base + (k - 1) * period / n_out, t_base + k * period / n_out,
                    stats);
        result.orbit.row(k) = y.transpose();
        result.times[k] = k * period / n_out;
    }
    return result;
}

CyclicOrbit cyclic_solve(const ThermalModel& model, const HeatProfile& profile,
                         const CyclicOptions& options) {
    const SteadyState steady = solve_steady(model, profile.means);
    return cyclic_solve(model, profile_heat_input(profile), profile.period,
                        profile.sample_count(), steady.temperatures, options);
}

ComparisonReport compare(const PeriodicSolution& linear, const CyclicOrbit& oracle) {
    if (linear.total.rows() != oracle.orbit.rows() || linear.total.cols() != oracle.orbit.cols())
        throw ValidationError("compare: sample grids do not match (" +
                              std::to_string(linear.total.rows()) + "x" +
                              std::to_string(linear.total.cols()) + " vs " +
                              std::to_string(oracle.orbit.rows()) + "x" +
                              std::to_string(oracle.orbit.cols()) + ")");
    ComparisonReport report;
    report.delta = oracle.orbit - linear.total;
    const int n = static_cast<int>(report.delta.rows());
    const int cols = static_cast<int>(report.delta.cols());
    report.max_abs_per_node.resize(cols);
    report.argmax_per_node.resize(cols);
    report.max_abs = 0.0;
    for (int jcol = 0; jcol < cols; ++jcol) {
        int row = 0;
        report.max_abs_per_node[jcol] = report.delta.col(jcol).cwiseAbs().maxCoeff(&row);
        report.argmax_per_node[jcol] = row;
        if (report.max_abs_per_node[jcol] > report.max_abs) {
            report.max_abs = report.max_abs_per_node[jcol];
            report.max_row = row;
            report.max_col = jcol;
        }
    }
    (void)n;
    return report;
}

}  // namespace orbitherm
