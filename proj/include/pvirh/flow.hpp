#pragma once

#include <vector>

#include "pvirh/hamiltonians.hpp"
#include "pvirh/ode.hpp"

// Isomonodromic flow: move one of the finite time variables t_k along a
// piecewise-linear path in C while (q, p) follows the Hamiltonian system
//
//   dq/dt_k = dh_k/dp,   dp/dt_k = -dh_k/dq
//
// of the three-time family.  With t = (0, 1, x) and k = 3 this is the
// classical single-time PVI Hamiltonian system in x.

namespace pvirh {

struct TrajectorySample {
    Complex t; // current value of the moving time variable
    Complex q;
    Complex p;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    int moving_index = 3;
    double tol = 0.0;
    StepStats stats;
};

struct FlowOptions {
    int moving_index = 3;     // which of t1..t3 moves
    double sample_ds = 0.0;   // >0: also record at evenly spaced parameters
    double guard_scale = 1e-4; // pole guard: |q - t_i| >= guard_scale * min t-gap
    double p_cap = 1e9;       // |p| above this counts as a movable pole hit
};

namespace detail {

inline double min_time_gap(const TimeConfig<Complex>& t) {
    double m = 1e300;
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) m = std::min(m, std::abs(t.at(i) - t.at(j)));
    return m;
}

} // namespace detail

// The flow is deterministic for fixed (tol, path): integration is adaptive
// but the accepted-step sequence depends only on the data.  Movable poles
// of PVI are detected by the chart guard rather than silently integrated
// through.
inline Trajectory flow(const ExtendedState<Complex>& state, const std::vector<Complex>& waypoints,
                       double tol, const FlowOptions& opt = {}) {
    if (opt.moving_index < 1 || opt.moving_index > 3)
        throw Error("flow moves one of t1..t3");
    if (tol <= 0) throw Error("flow tolerance must be positive");
    state.validate();
    const int k = opt.moving_index;

    Trajectory traj;
    traj.moving_index = k;
    traj.tol = tol;

    TimeConfig<Complex> t = state.t;
    std::array<Complex, 2> y{state.q, state.p};
    traj.samples.push_back({t.at(k), y[0], y[1]});

    double arclen = 0.0;
    double hint = 0.0;
    for (const Complex& target : waypoints) {
        const Complex from = t.at(k);
        const Complex leg = target - from;
        if (std::abs(leg) == 0.0) continue;

        auto rhs = [&](double s, const std::array<Complex, 2>& yy, std::array<Complex, 2>& dy) {
            TimeConfig<Complex> tc = t;
            tc.t[static_cast<std::size_t>(k - 1)] = from + s * leg;
            dy[0] = leg * h3_dp(k, yy[0], yy[1], tc, state.kappa);
            dy[1] = -leg * h3_dq(k, yy[0], yy[1], tc, state.kappa);
        };
        auto guard = [&](double s, const std::array<Complex, 2>& yy) {
            TimeConfig<Complex> tc = t;
            tc.t[static_cast<std::size_t>(k - 1)] = from + s * leg;
            double gap = detail::min_time_gap(tc);
            for (int i = 1; i <= 3; ++i)
                if (std::abs(yy[0] - tc.at(i)) < opt.guard_scale * gap)
                    throw SingularityError("trajectory entered the pole guard at t_" +
                                               std::to_string(i),
                                           arclen + s * std::abs(leg));
            if (std::abs(yy[1]) > opt.p_cap)
                throw SingularityError("p blew past the movable-pole cap",
                                       arclen + s * std::abs(leg));
            traj.samples.push_back({from + s * leg, yy[0], yy[1]});
        };

        if (opt.sample_ds > 0) {
            int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(leg) / opt.sample_ds)));
            for (int m = 0; m < pieces; ++m) {
                double s0 = static_cast<double>(m) / pieces;
                double s1 = static_cast<double>(m + 1) / pieces;
                traj.stats += rk_integrate<2>(y, s0, s1, rhs, tol, guard, &hint);
            }
        } else {
            traj.stats += rk_integrate<2>(y, 0.0, 1.0, rhs, tol, guard, &hint);
        }
        arclen += std::abs(leg);
        t.t[static_cast<std::size_t>(k - 1)] = target;
    }
    return traj;
}

inline ExtendedState<Complex> state_at_end(const ExtendedState<Complex>& start,
                                           const Trajectory& traj) {
    ExtendedState<Complex> out = start;
    const auto& last = traj.samples.back();
    out.t.t[static_cast<std::size_t>(traj.moving_index - 1)] = last.t;
    out.q = last.q;
    out.p = last.p;
    return out;
}

// ---- PVI residual -----------------------------------------------------------

namespace detail {

struct HPartials {
    Complex h_p, h_q, h_pp, h_pq, h_px;
};

// closed-form partials of the single-time Hamiltonian
inline HPartials h_single_partials(Complex q, Complex p, Complex x, const Kappa<Complex>& k) {
    const Complex one{1.0, 0.0};
    Complex w = x * (x - one);
    Complex A = q * (q - one) * (q - x);
    Complex B = (k[3] - one) * q * (q - one) + k[1] * (q - one) * (q - x) + k[2] * q * (q - x);
    Complex Aq = (q - one) * (q - x) + q * (q - x) + q * (q - one);
    Complex Ax = -q * (q - one);
    Complex Bq = (k[3] - one) * (2.0 * q - one) + k[1] * (2.0 * q - one - x) + k[2] * (2.0 * q - x);
    Complex Bx = -k[1] * (q - one) - k[2] * q;
    Complex Cq = k[0] * (k[0] + k[4]);
    Complex wx = 2.0 * x - one;
    HPartials out;
    out.h_p = (2.0 * A * p - B) / w;
    out.h_q = (Aq * p * p - Bq * p + Cq) / w;
    out.h_pp = 2.0 * A / w;
    out.h_pq = (2.0 * Aq * p - Bq) / w;
    out.h_px = (2.0 * Ax * p - Bx) / w - (2.0 * A * p - B) * wx / (w * w);
    return out;
}

} // namespace detail

// Second derivative of q along the flow by differentiating the vector
// field (chain rule), never by differencing samples.
inline Complex pvi_qxx(Complex q, Complex p, Complex x, const Kappa<Complex>& k) {
    auto d = detail::h_single_partials(q, p, x, k);
    return d.h_pq * d.h_p - d.h_pp * d.h_q + d.h_px;
}

// Right-hand side of PVI for q(x) given q_x.
inline Complex pvi_rhs(Complex q, Complex qx, Complex x, const Kappa<Complex>& k) {
    const Complex one{1.0, 0.0};
    Complex first = 0.5 * (one / q + one / (q - one) + one / (q - x)) * qx * qx;
    Complex second = (one / x + one / (x - one) + one / (q - x)) * qx;
    Complex bracket = k[4] * k[4] - k[1] * k[1] * x / (q * q) +
                      k[2] * k[2] * (x - one) / ((q - one) * (q - one)) +
                      (one - k[3] * k[3]) * x * (x - one) / ((q - x) * (q - x));
    Complex third = q * (q - one) * (q - x) / (2.0 * x * x * (x - one) * (x - one)) * bracket;
    return first - second + third;
}

// Max modulus of the PVI defect q_xx - rhs along a trajectory from flow().
// Requires the (0, 1, x) normalization with the third time moving.
inline double pvi_residual(const Trajectory& traj, const ExtendedState<Complex>& state) {
    if (traj.moving_index != 3) throw Error("pvi_residual expects the flow in t3 = x");
    if (std::abs(state.t.at(1)) > kChartTol || std::abs(state.t.at(2) - 1.0) > kChartTol)
        throw Error("pvi_residual expects t = (0, 1, x)");
    if (traj.samples.size() < 5) throw Error("trajectory too short for a residual sweep");
    double worst = 0.0;
    for (const auto& s : traj.samples) {
        auto d = detail::h_single_partials(s.q, s.p, s.t, state.kappa);
        Complex qx = d.h_p;
        Complex defect = pvi_qxx(s.q, s.p, s.t, state.kappa) - pvi_rhs(s.q, qx, s.t, state.kappa);
        worst = std::max(worst, std::abs(defect));
    }
    return worst;
}

} // namespace pvirh
