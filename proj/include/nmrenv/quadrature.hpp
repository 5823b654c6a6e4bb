#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "nmrenv/error.hpp"

namespace nmrenv::quad {

struct Options {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    std::size_t max_intervals = 50000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;          ///< summed |K15 - G7| over the final partition
    std::size_t intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 tables).
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes kNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(const F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = kKronrod[7] * fc;
    double gauss = kGauss[3] * fc;
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kKronrod[i] * pair;
        if (i % 2 == 1) gauss += kGauss[i / 2] * pair;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// estimate is below max(abs_tol, rel_tol * |I|). Throws NumericalError with
/// the achieved tolerance when the interval budget runs out.
template <class F>
Result integrate(const F& f, double a, double b, const Options& opts = {}) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw ArgumentError("quad::integrate: limits must be finite");
    if (a == b) return {};

    std::priority_queue<detail::Segment> heap;
    const auto first = detail::gk15(f, a, b);
    heap.push(first);
    double total = first.value;
    double error = first.error;

    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

    while (error > target()) {
        if (heap.size() >= opts.max_intervals) {
            std::ostringstream msg;
            msg << "quadrature did not converge: achieved error " << error << " vs target "
                << target() << " after " << heap.size() << " intervals";
            throw NumericalError(msg.str());
        }
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            std::ostringstream msg;
            msg << "quadrature did not converge: interval underflow at achieved error " << error;
            throw NumericalError(msg.str());
        }
        heap.pop();
        const auto left = detail::gk15(f, worst.a, mid);
        const auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift of the running updates.
    Result r;
    r.intervals = heap.size();
    while (!heap.empty()) {
        r.value += heap.top().value;
        r.error += heap.top().error;
        heap.pop();
    }
    return r;
}

}  // namespace nmrenv::quad
