#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "pvirh/errors.hpp"
#include "pvirh/scalar.hpp"

// Adaptive Dormand-Prince 5(4) over a real parameter with complex-valued
// state.  Both the Hamiltonian flow (moving a time variable along a path
// in C) and the monodromy transport (moving z along loops) reduce to this
// after parameterizing their path piece by arclength-like s in [0,1].

namespace pvirh {

struct StepStats {
    std::size_t steps = 0;
    std::size_t rejected = 0;

    StepStats& operator+=(const StepStats& o) {
        steps += o.steps;
        rejected += o.rejected;
        return *this;
    }
};

// f(s, y, dy); monitor(s, y) runs after every accepted step and may throw.
template <std::size_t N, class RHS, class Monitor>
StepStats rk_integrate(std::array<Complex, N>& y, double s0, double s1, RHS&& f, double tol,
                       Monitor&& monitor, double* step_hint = nullptr) {
    using V = std::array<Complex, N>;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    if (s1 == s0) return {};
    if (tol <= 0) throw Error("integrator tolerance must be positive");
    const double span = s1 - s0;
    const double hmin = std::abs(span) * 1e-14;
    StepStats stats;

    double s = s0;
    double h = (step_hint && *step_hint > 0) ? std::min(*step_hint, std::abs(span))
                                             : std::abs(span) / 64.0;
    const double dir = span > 0 ? 1.0 : -1.0;
    V k1, k2, k3, k4, k5, k6, k7, yt, ynew, err;
    f(s, y, k1);
    std::size_t max_steps = 4'000'000;
    while (dir * (s1 - s) > 0) {
        if (stats.steps + stats.rejected > max_steps) throw StepError("step budget exhausted");
        h = std::min(h, std::abs(s1 - s));
        if (h < hmin) throw StepError("step size underflow");
        const double hd = dir * h;

        auto stage = [&](double cs, const V& yy, V& kk) { f(s + cs * hd, yy, kk); };
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + hd * a21 * k1[i];
        stage(c2, yt, k2);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + hd * (a31 * k1[i] + a32 * k2[i]);
        stage(c3, yt, k3);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + hd * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        stage(c4, yt, k4);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + hd * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        stage(c5, yt, k5);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + hd * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                 a65 * k5[i]);
        stage(1.0, yt, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + hd * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        stage(1.0, ynew, k7); // FSAL

        double emax = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            err[i] = hd * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                           e7 * k7[i]);
            double scale = tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
            emax = std::max(emax, std::abs(err[i]) / scale);
        }
        if (emax <= 1.0) {
            s += hd;
            y = ynew;
            k1 = k7;
            ++stats.steps;
            monitor(s, y);
            double grow = 0.9 * std::pow(std::max(emax, 1e-10), -0.2);
            h *= std::min(5.0, std::max(0.2, grow));
        } else {
            ++stats.rejected;
            double shrink = 0.9 * std::pow(emax, -0.2);
            h *= std::min(0.9, std::max(0.1, shrink));
        }
    }
    if (step_hint) *step_hint = h;
    return stats;
}

} // namespace pvirh
