#include "orbitherm/synth.hpp"

#include <cmath>
#include <random>
#include <string>

namespace orbitherm {

namespace {

double smoothstep(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * (3.0 - 2.0 * x);
}

// Periodic pulse on [0,1): rises at 0, falls at `duty`, edges smoothed over
// `width` (hard edges when width == 0). Summing the three neighbouring
// periods handles the wraparound.
double pulse(double u, double duty, double width, bool hard) {
    u -= std::floor(u);
    if (hard) return u < duty ? 1.0 : 0.0;
    double s = 0.0;
    for (double p : {-1.0, 0.0, 1.0})
        s += smoothstep((u - p) / width + 0.5) - smoothstep((u - duty - p) / width + 0.5);
    return s;
}

}  // namespace

SyntheticProfile synthetic_profile(const Vector& target_means,
                                   const SyntheticProfileOptions& options) {
    const int nodes = static_cast<int>(target_means.size());
    if (nodes < 1) throw ValidationError("synthetic_profile: need at least one node mean");
    if (!(options.duty > 0.0 && options.duty < 1.0))
        throw ValidationError("synthetic_profile: duty must be in (0, 1)");
    if (!(options.baseline >= 0.0 && options.baseline < 1.0))
        throw ValidationError("synthetic_profile: baseline must be in [0, 1)");
    if (options.sample_count < 8)
        throw ValidationError("synthetic_profile: need at least 8 samples");
    if (!(options.period > 0.0)) throw ValidationError("synthetic_profile: period must be > 0");
    for (int i = 0; i < nodes; ++i)
        if (!(target_means[i] >= 0.0) || !std::isfinite(target_means[i]))
            throw ValidationError("synthetic_profile: mean of node " + std::to_string(i + 1) +
                                  " must be finite and >= 0");

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> jitter(0.0, 0.01);

    SyntheticProfile profile;
    profile.phases.resize(nodes);
    for (int i = 0; i < nodes; ++i)
        profile.phases[i] = options.phase_spread * i + jitter(rng);

    const int n = options.sample_count;
    profile.samples.resize(n, nodes);
    for (int i = 0; i < nodes; ++i) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            double s = pulse(static_cast<double>(k) / n - profile.phases[i], options.duty,
                             options.edge_width, options.hard_steps);
            double value = options.baseline + (1.0 - options.baseline) * s;
            profile.samples(k, i) = value;
            sum += value;
        }
        // Rescale so the column mean equals the target exactly; the steady
        // state of the generated profile then matches the reference means.
        const double mean = sum / n;
        const double factor = mean > 0.0 ? target_means[i] / mean : 0.0;
        profile.samples.col(i) *= factor;
    }
    return profile;
}

}  // namespace orbitherm
