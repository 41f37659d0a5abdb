#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>  // nlohmann/json (vendored)

#include "gaugelab/core/errors.hpp"
#include "gaugelab/core/parallel.hpp"

namespace gaugelab {

namespace detail {
inline void require_positive(double v, const char* name, const char* op) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(op) + ": " + name + " must be positive and finite, got " + std::to_string(v));
}
}  // namespace detail

/// U_p = I / (2 omega)^2, linear polarization, atomic units.
inline double ponderomotive(double intensity, double omega) {
    detail::require_positive(intensity, "I", "ponderomotive");
    detail::require_positive(omega, "omega", "ponderomotive");
    return intensity / ((2.0 * omega) * (2.0 * omega));
}

/// gamma = sqrt(E_B / (2 U_p)).
inline double keldysh_gamma(double binding_energy, double ponderomotive_energy) {
    detail::require_positive(binding_energy, "E_B", "keldysh_gamma");
    detail::require_positive(ponderomotive_energy, "U_p", "keldysh_gamma");
    return std::sqrt(binding_energy / (2.0 * ponderomotive_energy));
}

/// gamma = (omega / sqrt(I)) sqrt(2 E_B).
inline double gamma_from_intensity(double binding_energy, double omega, double intensity) {
    detail::require_positive(binding_energy, "E_B", "gamma_from_intensity");
    detail::require_positive(omega, "omega", "gamma_from_intensity");
    detail::require_positive(intensity, "I", "gamma_from_intensity");
    return omega / std::sqrt(intensity) * std::sqrt(2.0 * binding_energy);
}

struct KeldyshPoint {
    double E_B = 0.0;
    double omega = 0.0;
    double I = 0.0;
    double U_p = 0.0;
    double gamma = 0.0;

    static KeldyshPoint make(double E_B, double omega, double I) {
        KeldyshPoint k{E_B, omega, I, ponderomotive(I, omega), 0.0};
        k.gamma = keldysh_gamma(E_B, k.U_p);
        return k;
    }
};

/// count values from min to max in constant ratio.
struct GeometricGrid {
    double min = 1.0;
    double max = 1.0;
    std::size_t count = 1;

    std::vector<double> values() const {
        if (count == 0) throw UsageError("geometric grid is empty");
        if (!(min > 0.0) || !(max >= min) || !std::isfinite(max)) throw UsageError("geometric grid needs 0 < min <= max");
        std::vector<double> v(count);
        if (count == 1) {
            v[0] = min;
            return v;
        }
        const double ratio = max / min;
        for (std::size_t k = 0; k < count; ++k)
            v[k] = (k + 1 == count) ? max : min * std::pow(ratio, static_cast<double>(k) / static_cast<double>(count - 1));
        return v;
    }
};

struct ScanCell {
    KeldyshPoint point;
    /// Cells whose gamma agree within the scan's relative tolerance share a
    /// group id (0, 1, ... in ascending gamma); -1 when no other cell matches.
    int iso_group = -1;
};

struct RegimeScan {
    double E_B = 0.0;
    GeometricGrid intensity_grid;
    GeometricGrid omega_grid;
    double iso_tolerance = 0.01;
    /// omega-major: omega ascending, then I ascending.
    std::vector<ScanCell> cells;
};

/// Tabulates gamma and U_p on the omega x I grid and groups cells of equal
/// gamma. Groups are anchored on the smallest gamma not yet assigned and take
/// every cell within (1 + iso_tolerance) of it.
inline RegimeScan regime_scan(double E_B, const GeometricGrid& intensity_grid, const GeometricGrid& omega_grid,
                              unsigned threads = 1, double iso_tolerance = 0.01) {
    detail::require_positive(E_B, "E_B", "regime_scan");
    const auto Is = intensity_grid.values();
    const auto ws = omega_grid.values();
    RegimeScan scan{E_B, intensity_grid, omega_grid, iso_tolerance, {}};
    scan.cells.resize(Is.size() * ws.size());
    parallel_for(ws.size(), threads, [&](std::size_t a) {
        for (std::size_t b = 0; b < Is.size(); ++b) scan.cells[a * Is.size() + b].point = KeldyshPoint::make(E_B, ws[a], Is[b]);
    });

    std::vector<std::size_t> order(scan.cells.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return scan.cells[l].point.gamma < scan.cells[r].point.gamma; });
    int next_group = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double anchor = scan.cells[order[i]].point.gamma;
        std::size_t j = i + 1;
        while (j < order.size() && scan.cells[order[j]].point.gamma <= anchor * (1.0 + iso_tolerance)) ++j;
        if (j - i > 1) {
            for (std::size_t k = i; k < j; ++k) scan.cells[order[k]].iso_group = next_group;
            ++next_group;
        }
        i = j;
    }
    return scan;
}

struct IsoGammaPair {
    KeldyshPoint low_intensity;
    KeldyshPoint high_intensity;
    double intensity_ratio = 0.0;
};

/// Within one iso-gamma group, the pair with the largest intensity ratio, if
/// that ratio is at least min_ratio. Ties resolve to the first group found.
inline std::optional<IsoGammaPair> find_iso_gamma_pair(const RegimeScan& scan, double min_ratio = 100.0) {
    std::optional<IsoGammaPair> best;
    for (const auto& a : scan.cells) {
        if (a.iso_group < 0) continue;
        for (const auto& b : scan.cells) {
            if (b.iso_group != a.iso_group) continue;
            const double ratio = b.point.I / a.point.I;
            if (ratio >= min_ratio && (!best || ratio > best->intensity_ratio)) best = IsoGammaPair{a.point, b.point, ratio};
        }
    }
    return best;
}

inline nlohmann::json to_json(const GeometricGrid& g) { return {{"min", g.min}, {"max", g.max}, {"count", g.count}}; }

inline nlohmann::json to_json(const RegimeScan& s) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : s.cells)
        rows.push_back({{"omega", c.point.omega}, {"I", c.point.I}, {"U_p", c.point.U_p}, {"gamma", c.point.gamma}, {"iso_group", c.iso_group}});
    return {{"metadata",
             {{"E_B", s.E_B}, {"intensity_grid", to_json(s.intensity_grid)}, {"omega_grid", to_json(s.omega_grid)}, {"iso_tolerance", s.iso_tolerance}}},
            {"rows", rows}};
}

}  // namespace gaugelab
