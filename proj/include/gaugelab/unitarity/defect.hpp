#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <json.hpp>  // nlohmann/json (vendored)

#include "gaugelab/unitarity/grid_operator.hpp"

namespace gaugelab {

using ProbeFunction = std::function<Complex(double x)>;

/// Gaussian centred mid-grid with width (x_max - x_min)/8.
inline ProbeFunction default_probe(const GridSpec& grid) {
    const double centre = 0.5 * (grid.x_min + grid.x_max);
    const double width = (grid.x_max - grid.x_min) / 8.0;
    return [centre, width](double x) {
        const double u = (x - centre) / width;
        return Complex(std::exp(-0.5 * u * u), 0.0);
    };
}

struct DefectReport {
    std::string lambda_name;
    double t = 0.0;
    std::size_t nx = 0;
    double dx = 0.0;
    /// max |(q/c) dLambda/dt| over the grid; zero iff H' = U H U^-1.
    double defect_norm = 0.0;
    /// max over interior points of |(H' - U H U^-1) psi + (q/c) dLambda/dt psi|.
    double max_discrepancy = 0.0;
    /// Ratio of max_discrepancy on this grid to the one with halved spacing; NaN if not measured.
    double convergence_ratio = std::numeric_limits<double>::quiet_NaN();
};

inline nlohmann::json to_json(const DefectReport& r) {
    nlohmann::json j = {{"lambda_name", r.lambda_name},
                        {"t", r.t},
                        {"grid", {{"nx", r.nx}, {"dx", r.dx}}},
                        {"defect_norm", r.defect_norm},
                        {"max_discrepancy", r.max_discrepancy}};
    j["convergence_ratio"] = std::isfinite(r.convergence_ratio) ? nlohmann::json(r.convergence_ratio) : nlohmann::json(nullptr);
    return j;
}

/// Measures H' - U H U^-1 for the gauge change generated by `gen`, where H' is
/// built from the transformed potentials, and compares it with the predicted
/// multiplication operator -(q/c) dLambda/dt.
inline DefectReport unitarity_defect(const ChargedParticle& particle, const PotentialConfiguration& pot, const GaugeGenerator& gen,
                                     const GridSpec& grid, std::span<const Complex> probe) {
    grid.validate();
    if (probe.size() != grid.nx) throw UsageError("unitarity_defect: probe size does not match grid");
    if (std::all_of(probe.begin(), probe.end(), [](const Complex& c) { return c == Complex(0.0); }))
        throw UsageError("unitarity_defect: probe is identically zero");

    const GridOperator H = build_hamiltonian(particle, pot, grid);
    const GridOperator Hp = build_hamiltonian(particle, apply_gauge(pot, gen), grid);
    const GridOperator U = gauge_unitary_factor(gen, particle.q, grid);
    const GridOperator UHU = similarity_transform(H, U);

    const ComplexField lhs_a = Hp(probe);
    const ComplexField lhs_b = UHU(probe);

    DefectReport rep;
    rep.lambda_name = gen.name;
    rep.t = grid.t;
    rep.nx = grid.nx;
    rep.dx = grid.dx();
    for (std::size_t k = 0; k < grid.nx; ++k) {
        const double dtl = gen.dt_lambda(grid.point(k), grid.t);
        const double predicted = -particle.q * dtl / speed_of_light;
        rep.defect_norm = std::max(rep.defect_norm, std::abs(predicted));
        if (k == 0 || k + 1 == grid.nx) continue;
        const Complex measured = lhs_a[k] - lhs_b[k];
        rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(measured - predicted * probe[k]));
    }
    return rep;
}

inline DefectReport unitarity_defect(const ChargedParticle& particle, const PotentialConfiguration& pot, const GaugeGenerator& gen,
                                     const GridSpec& grid, const ProbeFunction& probe) {
    grid.validate();
    const ComplexField samples = sample(grid, probe);
    return unitarity_defect(particle, pot, gen, grid, samples);
}

/// unitarity_defect on `grid`, plus the discrepancy ratio against the grid
/// with halved spacing. The probe defaults to default_probe(grid).
inline DefectReport unitarity_defect_with_convergence(const ChargedParticle& particle, const PotentialConfiguration& pot,
                                                      const GaugeGenerator& gen, const GridSpec& grid, ProbeFunction probe = {}) {
    grid.validate();
    if (!probe) probe = default_probe(grid);
    DefectReport coarse = unitarity_defect(particle, pot, gen, grid, probe);
    const DefectReport fine = unitarity_defect(particle, pot, gen, grid.refined(), probe);
    coarse.convergence_ratio = fine.max_discrepancy > 0.0 ? coarse.max_discrepancy / fine.max_discrepancy
                                                          : std::numeric_limits<double>::quiet_NaN();
    return coarse;
}

}  // namespace gaugelab
