#include "orch/demand.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orch {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform in [0, 1), deterministic in (seed, t) alone.
double noise_unit(std::uint64_t seed, double t) {
    const std::uint64_t h =
        splitmix64(seed ^ splitmix64(std::bit_cast<std::uint64_t>(t)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double sine_shape(const DemandTrace& trace, double t) {
    const double phase = 2.0 * std::numbers::pi * t / trace.cycle_s;
    return trace.base_rps +
           (trace.peak_rps - trace.base_rps) / 2.0 * (1.0 - std::cos(phase));
}

// Quarter-cycle phases: ramp up, hold peak, ramp down, hold base.
double trapezoid_shape(const DemandTrace& trace, double t) {
    const double q = trace.cycle_s / 4.0;
    const double s = std::fmod(t, trace.cycle_s);
    const double span = trace.peak_rps - trace.base_rps;
    if (s < q) return trace.base_rps + span * (s / q);
    if (s < 2.0 * q) return trace.peak_rps;
    if (s < 3.0 * q) return trace.peak_rps - span * ((s - 2.0 * q) / q);
    return trace.base_rps;
}

double table_shape(const DemandTrace& trace, double t) {
    const auto& pts = trace.points;
    if (pts.empty()) {
        throw std::invalid_argument("piecewise demand trace has no points");
    }
    if (pts.size() == 1) return pts.front().rps;

    const double s = std::fmod(t, trace.cycle_s);
    // Wraps from the last point back to the first at the cycle end.
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (s >= pts[i].t && s < pts[i + 1].t) {
            const double f = (s - pts[i].t) / (pts[i + 1].t - pts[i].t);
            return pts[i].rps + f * (pts[i + 1].rps - pts[i].rps);
        }
    }
    if (s < pts.front().t) {
        // before the first point: interpolate from the previous cycle's tail
        const double gap = pts.front().t + (trace.cycle_s - pts.back().t);
        const double f = (s + trace.cycle_s - pts.back().t) / gap;
        return pts.back().rps + f * (pts.front().rps - pts.back().rps);
    }
    const double gap = (trace.cycle_s - pts.back().t) + pts.front().t;
    const double f = (s - pts.back().t) / gap;
    return pts.back().rps + f * (pts.front().rps - pts.back().rps);
}

}  // namespace

double demand_shape(const DemandTrace& trace, double t) {
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
    switch (trace.kind) {
        case DemandKind::Sine: return sine_shape(trace, t);
        case DemandKind::Trapezoid: return trapezoid_shape(trace, t);
        case DemandKind::PiecewiseTable: return table_shape(trace, t);
    }
    return trace.base_rps;
}

double demand_at(const DemandTrace& trace, double t) {
    const double shape = demand_shape(trace, t);
    if (trace.noise_pct == 0.0) return shape;
    const double factor = 1.0 - trace.noise_pct +
                          2.0 * trace.noise_pct * noise_unit(trace.seed, t);
    return shape * factor;
}

}  // namespace orch
