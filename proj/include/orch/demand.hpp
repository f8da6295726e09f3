#pragma once

// Cyclic demand generation. Every waveform starts and ends a cycle at the
// base rate so the load resets between waves. Noise is a pure hash of
// (seed, t): evaluation order never affects the trace.

#include <cstdint>
#include <vector>

namespace orch {

enum class DemandKind { Sine, Trapezoid, PiecewiseTable };

struct DemandPoint {
    double t = 0.0;  // seconds into the cycle
    double rps = 0.0;
};

struct DemandTrace {
    DemandKind kind = DemandKind::Sine;
    double base_rps = 0.0;
    double peak_rps = 0.0;
    double cycle_s = 0.0;
    double noise_pct = 0.0;  // multiplicative, in [0, 0.5]
    std::uint64_t seed = 0;
    std::vector<DemandPoint> points;  // PiecewiseTable only, sorted by t
};

// Noiseless closed-form value at time t.
double demand_shape(const DemandTrace& trace, double t);

// demand_shape scaled by seeded noise uniform in [1-noise_pct, 1+noise_pct].
double demand_at(const DemandTrace& trace, double t);

}  // namespace orch
