#pragma once

#include <string>

#include "pvirh/state.hpp"

// The Baecklund transformations on the extended phase space:
//
//   s_0:  q -> q + k0/p,          p fixed,
//   s_i:  p -> p - k_i/(q - t_i), q fixed        (i = 1..4, t_i finite),
//   s_4 with t4 = infinity: acts trivially on (t, q, p),
//
// always together with kappa -> sigma_i(kappa) and t fixed.  These are
// birational: s_0 is undefined on {p = 0} (PoleError) and images can leave
// the chart (ChartError); callers resample.

namespace pvirh {

template <class S>
ExtendedState<S> s_apply(const ExtendedState<S>& state, int i) {
    if (i < 0 || i > 4) throw Error("generator index out of range [0,4]");
    ExtendedState<S> out = state;
    out.kappa = reflect(state.kappa, i);
    if (i == 0) {
        if (ScalarTraits<S>::near_zero(state.p, kChartTol))
            throw PoleError("s0 is undefined on p = 0");
        out.q = state.q + state.kappa[0] / state.p;
    } else if (i == 4 && !state.t.t4.finite) {
        // trivial action on (t, q, p)
    } else {
        S qi = state.q - state.t.at(i);
        if (ScalarTraits<S>::near_zero(qi, kChartTol))
            throw PoleError("s_i is undefined on q = t_i");
        out.p = state.p - state.kappa[i] / qi;
    }
    out.validate();
    return out;
}

template <class S>
ExtendedState<S> s_word(ExtendedState<S> state, const GroupWord& w) {
    for (std::size_t n = 0; n < w.letters.size(); ++n) {
        try {
            state = s_apply(state, w.letters[n]);
        } catch (const PoleError& e) {
            throw PoleError(std::string(e.what()) + " (at word letter " + std::to_string(n) + ")");
        } catch (const ChartError& e) {
            throw ChartError(std::string(e.what()) + " (at word letter " + std::to_string(n) + ")");
        }
    }
    return state;
}

} // namespace pvirh
