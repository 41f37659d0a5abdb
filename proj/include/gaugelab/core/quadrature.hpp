#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gaugelab/core/errors.hpp"

namespace gaugelab {

enum class KronrodRule { k15, k31, k61 };

struct QuadratureOptions {
    double abs_tol = 1e-10;
    std::size_t max_panels = 4096;
    KronrodRule rule = KronrodRule::k31;
};

struct QuadratureResult {
    double value = 0.0;
    /// Sum of per-panel |Kronrod - Gauss| differences, floored by a round-off
    /// term proportional to the integral of |f|.
    double error = 0.0;
    std::size_t panels = 0;
};

namespace detail {

struct Panel {
    double a;
    double b;
    double value;
    double error;
    double l1;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <unsigned Points, class F>
Panel kronrod_panel(const F& f, double a, double b) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, Points>::integrate(f, a, b, 0, 0.0, &err, &l1);
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * l1;
    return {a, b, v, std::max(err, roundoff), l1};
}

template <unsigned Points, class F>
QuadratureResult adaptive_kronrod(const F& f, double a, double b, const QuadratureOptions& opts) {
    std::priority_queue<Panel> work;
    work.push(kronrod_panel<Points>(f, a, b));
    double total_err = work.top().error;
    while (total_err > opts.abs_tol && work.size() < opts.max_panels) {
        Panel worst = work.top();
        // Panels cannot be split below the floating-point resolution of the interval.
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        work.pop();
        Panel left = kronrod_panel<Points>(f, worst.a, mid);
        Panel right = kronrod_panel<Points>(f, mid, worst.b);
        total_err += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
    }
    // Sum in interval order so the result does not depend on heap layout.
    std::vector<Panel> panels;
    panels.reserve(work.size());
    while (!work.empty()) {
        panels.push_back(work.top());
        work.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    QuadratureResult out;
    for (const auto& p : panels) {
        out.value += p.value;
        out.error += p.error;
    }
    out.panels = panels.size();
    return out;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of a smooth real integrand on [a, b]
/// with an absolute error target. Panels are bisected worst-first.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureOptions& opts = {}) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate: non-finite integration bounds");
    if (a == b) return {};
    if (b < a) {
        QuadratureResult r = integrate(f, b, a, opts);
        r.value = -r.value;
        return r;
    }
    QuadratureResult r;
    switch (opts.rule) {
    case KronrodRule::k15:
        r = detail::adaptive_kronrod<15>(f, a, b, opts);
        break;
    case KronrodRule::k31:
        r = detail::adaptive_kronrod<31>(f, a, b, opts);
        break;
    case KronrodRule::k61:
        r = detail::adaptive_kronrod<61>(f, a, b, opts);
        break;
    }
    if (!std::isfinite(r.value)) throw DomainError("integrate: integrand produced a non-finite value");
    return r;
}

/// Fixed 4-point Gauss-Legendre rule; exact for polynomials up to degree 7.
template <class F>
double gauss_legendre4(const F& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 4>::integrate(f, a, b);
}

}  // namespace gaugelab
