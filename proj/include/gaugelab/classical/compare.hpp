#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gaugelab/classical/dynamics.hpp"
#include "gaugelab/core/report.hpp"
#include "gaugelab/em/potentials.hpp"

namespace gaugelab {

struct CompareOptions {
    /// Tolerance on the gauge-invariant observables r, v and T.
    double tolerance = 1e-8;
    FieldCheckOptions field_check;
    IntegrationOptions integration;
};

struct GaugeComparison {
    InvarianceReport report;
    InvarianceReport field_report;
    Trajectory first;
    Trajectory second;
};

/// Points used to confirm two configurations share their fields before a
/// trajectory comparison: a 3x3x3 cube of unit spacing around the start
/// position at the start, middle and end times.
inline std::vector<SpaceTimePoint> field_probe_points(const Vec3& center, double t0, double t1) {
    std::vector<SpaceTimePoint> pts;
    for (double t : {t0, 0.5 * (t0 + t1), t1})
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j)
                for (int k = -1; k <= 1; ++k) pts.push_back({center + Vec3{double(i), double(j), double(k)}, t});
    return pts;
}

/// Integrates the same physical initial data in two gauge-equivalent
/// configurations. r, v and T are reported as matched; U, H and the canonical
/// momentum as differed.
inline GaugeComparison gauge_comparison(const ChargedParticle& particle, const PotentialConfiguration& pot1,
                                        const PotentialConfiguration& pot2, const KineticState& initial, double t_end, double dt,
                                        const CompareOptions& opts = {}) {
    particle.validate();
    GaugeComparison out;
    const auto probes = field_probe_points(initial.r, initial.t, t_end);
    out.field_report = check_field_invariance(pot1, pot2, probes, opts.field_check);
    if (!out.field_report.pass) {
        throw PreconditionError("compare_gauges: '" + pot1.name + "' and '" + pot2.name +
                                "' do not produce the same fields (max |dE| = " +
                                std::to_string(out.field_report.find("E")->max_dev) +
                                ", max |dB| = " + std::to_string(out.field_report.find("B")->max_dev) + ")");
    }

    out.first = integrate(particle, pot1, canonical_state(particle, pot1, initial), t_end, dt, opts.integration);
    out.second = integrate(particle, pot2, canonical_state(particle, pot2, initial), t_end, dt, opts.integration);

    double dr = 0, dv = 0, dT = 0, dU = 0, dH = 0, dp = 0;
    const std::size_t n = std::min(out.first.size(), out.second.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = out.first.samples[i];
        const auto& b = out.second.samples[i];
        dr = std::max(dr, norm(a.r - b.r));
        dv = std::max(dv, norm(a.v - b.v));
        dT = std::max(dT, std::abs(a.T - b.T));
        dU = std::max(dU, std::abs(a.U - b.U));
        dH = std::max(dH, std::abs(a.H - b.H));
        dp = std::max(dp, norm(a.p - b.p));
    }
    auto& rep = out.report;
    rep.tolerance = opts.tolerance;
    rep.add_matched("r", dr);
    rep.add_matched("v", dv);
    rep.add_matched("T", dT);
    rep.add_differed("U", dU);
    rep.add_differed("H", dH);
    rep.add_differed("p_canonical", dp);
    rep.finalize();
    return out;
}

inline InvarianceReport compare_gauges(const ChargedParticle& particle, const PotentialConfiguration& pot1,
                                       const PotentialConfiguration& pot2, const KineticState& initial, double t_end, double dt,
                                       const CompareOptions& opts = {}) {
    return gauge_comparison(particle, pot1, pot2, initial, t_end, dt, opts).report;
}

}  // namespace gaugelab
