#pragma once

#include <array>
#include <optional>

#include "pvirh/errors.hpp"
#include "pvirh/scalar.hpp"
#include "pvirh/weyl.hpp"

// Extended phase space: a point (kappa, t, q, p) of the moduli chart
// E_t(kappa) together with its parameters.  t4 = infinity is a structural
// tag (the three-time normalization), never a large float.

namespace pvirh {

// Tolerance used by the approximate backend for "distinct"/"on the chart"
// comparisons; the exact backend compares exactly.
inline constexpr double kChartTol = 1e-12;

template <class S>
struct TimePoint {
    bool finite = true;
    S value{};

    static TimePoint at(S v) { return {true, std::move(v)}; }
    static TimePoint inf() { return {false, {}}; }
};

template <class S>
struct TimeConfig {
    std::array<S, 3> t{}; // t1, t2, t3, always finite
    TimePoint<S> t4 = TimePoint<S>::inf();

    static TimeConfig three(S t1, S t2, S t3) {
        TimeConfig out;
        out.t = {std::move(t1), std::move(t2), std::move(t3)};
        return out;
    }
    static TimeConfig four(S t1, S t2, S t3, S t4v) {
        TimeConfig out = three(std::move(t1), std::move(t2), std::move(t3));
        out.t4 = TimePoint<S>::at(std::move(t4v));
        return out;
    }

    // 1-based accessor for the finite times t1..t3 (and t4 when finite).
    const S& at(int i) const {
        if (i >= 1 && i <= 3) return t[static_cast<std::size_t>(i - 1)];
        if (i == 4 && t4.finite) return t4.value;
        throw InfinityError("time t4 is infinite");
    }

    bool all_finite() const { return t4.finite; }

    // t1,t2,t3,t4 pairwise distinct (infinity is distinct from everything).
    void validate() const {
        auto distinct = [](const S& a, const S& b) {
            return !ScalarTraits<S>::near_zero(a - b, kChartTol);
        };
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (!distinct(t[i], t[j])) throw ChartError("time points t1..t3 must be distinct");
        if (t4.finite)
            for (int i = 0; i < 3; ++i)
                if (!distinct(t[i], t4.value)) throw ChartError("t4 collides with t1..t3");
    }
};

template <class S>
struct ExtendedState {
    Kappa<S> kappa{};
    TimeConfig<S> t{};
    S q{};
    S p{};

    // Chart condition: q distinct from every finite time point.
    void validate() const {
        t.validate();
        for (int i = 1; i <= 3; ++i)
            if (ScalarTraits<S>::near_zero(q - t.at(i), kChartTol))
                throw ChartError("q collides with a singular point t_i");
        if (t.t4.finite && ScalarTraits<S>::near_zero(q - t.t4.value, kChartTol))
            throw ChartError("q collides with t4");
    }
};

// Noumi–Yamada variables q_0 = p, q_i = q - t_i; q_4 is infinite in the
// three-time normalization.
template <class S>
struct QVars {
    S q0{};
    std::array<TimePoint<S>, 4> qi{};
};

template <class S>
QVars<S> qvars(const ExtendedState<S>& state) {
    QVars<S> out;
    out.q0 = state.p;
    for (int i = 1; i <= 3; ++i) out.qi[i - 1] = TimePoint<S>::at(state.q - state.t.at(i));
    out.qi[3] = state.t.t4.finite ? TimePoint<S>::at(state.q - state.t.t4.value)
                                  : TimePoint<S>::inf();
    return out;
}

// u_ij = {q_i, q_j}: row 0 is +1 against the legs, column 0 is -1.
struct UMatrix {
    static constexpr std::array<std::array<int, 5>, 5> u = {{
        {0, 1, 1, 1, 1},
        {-1, 0, 0, 0, 0},
        {-1, 0, 0, 0, 0},
        {-1, 0, 0, 0, 0},
        {-1, 0, 0, 0, 0},
    }};
};

} // namespace pvirh
