#pragma once

#include <cstdint>

#include "orbitherm/types.hpp"

namespace orbitherm {

/// Parameters of the synthetic eclipse-like heat profile: per node,
/// Qdot_i(t) = <Qdot_i> [baseline + (1 - baseline) s(t)], where s is a
/// periodic pulse of the given duty cycle with smoothed (or hard) edges,
/// phase-staggered across nodes. Columns are rescaled so the sample means
/// equal the target means exactly.
struct SyntheticProfileOptions {
    double duty = 0.7;          ///< sunlit fraction of the period
    double baseline = 0.2;      ///< eclipse level as a fraction of the peak
    bool hard_steps = false;    ///< discontinuous eclipse entry/exit
    int sample_count = 111;
    double period = 6660.0;     ///< s
    double edge_width = 0.04;   ///< smooth-edge width, fraction of the period
    double phase_spread = 0.03; ///< per-node phase stagger, fraction of the period
    std::uint64_t seed = 1;     ///< drives the small per-node phase jitter
};

struct SyntheticProfile {
    Matrix samples;  ///< n x N, W
    Vector phases;   ///< per node: pulse rises at phase, falls at phase + duty
};

SyntheticProfile synthetic_profile(const Vector& target_means,
                                   const SyntheticProfileOptions& options = {});

}  // namespace orbitherm
