#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gaugelab/classical/dynamics.hpp"
#include "gaugelab/core/errors.hpp"
#include "gaugelab/em/potentials.hpp"

namespace gaugelab {

using Complex = std::complex<double>;
using ComplexField = std::vector<Complex>;

/// Uniform 1D grid along x (y = z = 0) at a fixed evaluation time.
struct GridSpec {
    double x_min = -5.0;
    double x_max = 5.0;
    std::size_t nx = 101;
    double t = 0.0;

    void validate() const {
        if (nx < 5) throw UsageError("grid: nx = " + std::to_string(nx) + " is below the minimum of 5 points");
        if (!(x_max > x_min)) throw UsageError("grid: x_max must exceed x_min");
        if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(t)) throw UsageError("grid: bounds must be finite");
    }
    double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
    double x(std::size_t k) const { return k + 1 == nx ? x_max : x_min + static_cast<double>(k) * dx(); }
    Vec3 point(std::size_t k) const { return {x(k), 0.0, 0.0}; }

    /// Same interval with the spacing halved.
    GridSpec refined() const { return {x_min, x_max, 2 * nx - 1, t}; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

template <class F>
ComplexField sample(const GridSpec& grid, F&& f) {
    ComplexField out(grid.nx);
    for (std::size_t k = 0; k < grid.nx; ++k) out[k] = f(grid.x(k));
    return out;
}

enum class OperatorKind { multiplication, differential, composed };

/// Linear operator on samples over a GridSpec. Multiplication operators keep
/// their diagonal, which is what lets similarity_transform form U^-1.
class GridOperator {
public:
    using Action = std::function<ComplexField(std::span<const Complex>)>;

    GridOperator(GridSpec grid, OperatorKind kind, Action action, std::optional<ComplexField> diagonal = std::nullopt)
        : grid_(grid), kind_(kind), action_(std::move(action)), diagonal_(std::move(diagonal)) {}

    static GridOperator multiplication(const GridSpec& grid, ComplexField diag) {
        if (diag.size() != grid.nx) throw UsageError("multiplication operator: diagonal size does not match grid");
        auto d = diag;
        return {grid, OperatorKind::multiplication,
                [d](std::span<const Complex> psi) {
                    ComplexField out(psi.size());
                    for (std::size_t k = 0; k < psi.size(); ++k) out[k] = d[k] * psi[k];
                    return out;
                },
                std::move(diag)};
    }

    ComplexField operator()(std::span<const Complex> psi) const {
        if (psi.size() != grid_.nx)
            throw UsageError("grid operator: field has " + std::to_string(psi.size()) + " samples, grid has " + std::to_string(grid_.nx));
        return action_(psi);
    }

    const GridSpec& grid() const { return grid_; }
    OperatorKind kind() const { return kind_; }
    const std::optional<ComplexField>& diagonal() const { return diagonal_; }

    /// Inverse of a multiplication operator with nonzero diagonal.
    GridOperator inverse() const {
        if (!diagonal_) throw UsageError("grid operator: only multiplication operators can be inverted");
        ComplexField inv(diagonal_->size());
        for (std::size_t k = 0; k < inv.size(); ++k) {
            if ((*diagonal_)[k] == Complex(0.0)) throw DomainError("grid operator: diagonal vanishes at index " + std::to_string(k));
            inv[k] = 1.0 / (*diagonal_)[k];
        }
        return multiplication(grid_, std::move(inv));
    }

private:
    GridSpec grid_;
    OperatorKind kind_;
    Action action_;
    std::optional<ComplexField> diagonal_;
};

/// Minimal-coupling Hamiltonian (1/2m)(-i d/dx - qA_x/c)^2 + q^2 (A_y^2 + A_z^2)/(2 m c^2) + q phi
/// on the grid, with second-order central differences and zero Dirichlet
/// values beyond the end points.
inline GridOperator build_hamiltonian(const ChargedParticle& particle, const PotentialConfiguration& pot, const GridSpec& grid) {
    grid.validate();
    particle.validate();
    const std::size_t n = grid.nx;
    std::vector<double> a(n), potential(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec3 r = grid.point(k);
        const Vec3 A = pot.vector(r, grid.t) * (particle.q / speed_of_light);
        const double phi = pot.scalar(r, grid.t);
        if (!is_finite(A) || !std::isfinite(phi)) throw DomainError("build_hamiltonian: non-finite potential at " + describe(r, grid.t));
        a[k] = A.x;
        potential[k] = particle.q * phi + (A.y * A.y + A.z * A.z) / (2.0 * particle.m);
    }
    const double h = grid.dx();
    const double m = particle.m;
    auto action = [a, potential, h, m, n](std::span<const Complex> psi) {
        const Complex I(0.0, 1.0);
        ComplexField out(n);
        auto at = [&](std::ptrdiff_t k) { return (k < 0 || k >= static_cast<std::ptrdiff_t>(n)) ? Complex(0.0) : psi[k]; };
        auto a_at = [&](std::ptrdiff_t k) { return (k < 0 || k >= static_cast<std::ptrdiff_t>(n)) ? 0.0 : a[k]; };
        for (std::size_t kk = 0; kk < n; ++kk) {
            const auto k = static_cast<std::ptrdiff_t>(kk);
            const Complex lap = (at(k + 1) - 2.0 * at(k) + at(k - 1)) / (h * h);
            const Complex d_apsi = (a_at(k + 1) * at(k + 1) - a_at(k - 1) * at(k - 1)) / (2.0 * h);
            const Complex dpsi = (at(k + 1) - at(k - 1)) / (2.0 * h);
            // (-i d - a)^2 psi = -psi'' + i (a psi)' + i a psi' + a^2 psi
            const Complex kinetic = -lap + I * d_apsi + I * a[kk] * dpsi + a[kk] * a[kk] * psi[kk];
            out[kk] = kinetic / (2.0 * m) + potential[kk] * psi[kk];
        }
        return out;
    };
    return {grid, OperatorKind::differential, action};
}

/// U = exp(i q Lambda(x, t) / c) as a multiplication operator.
inline GridOperator gauge_unitary_factor(const GaugeGenerator& gen, double q, const GridSpec& grid) {
    grid.validate();
    ComplexField diag(grid.nx);
    for (std::size_t k = 0; k < grid.nx; ++k) {
        const double lam = gen.lambda(grid.point(k), grid.t);
        if (!std::isfinite(lam)) throw DomainError("gauge_unitary_factor: non-finite Lambda at " + describe(grid.point(k), grid.t));
        diag[k] = std::polar(1.0, q * lam / speed_of_light);
    }
    return GridOperator::multiplication(grid, std::move(diag));
}

/// U H U^-1.
inline GridOperator similarity_transform(const GridOperator& H, const GridOperator& U) {
    if (!(H.grid() == U.grid())) throw UsageError("similarity_transform: operators live on different grids");
    const GridOperator Uinv = U.inverse();
    if (U.kind() == OperatorKind::multiplication && H.kind() == OperatorKind::multiplication) {
        ComplexField d = *H.diagonal();
        return GridOperator::multiplication(H.grid(), std::move(d));
    }
    return {H.grid(), OperatorKind::composed, [H, U, Uinv](std::span<const Complex> psi) { return U(H(Uinv(psi))); }};
}

}  // namespace gaugelab
