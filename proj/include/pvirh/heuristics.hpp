#pragma once

#include <array>

#include "pvirh/fuchsian.hpp"

// Heuristic rediscovery of s0 from the invariance relation
// D(Q,P,t,sigma0(kappa)) = D(q,p,t,kappa): expand the difference E as a
// polynomial in (t_i, t_j), read off the coefficients E_mn, and solve the
// leading system E_12 = E_11 = 0.

namespace pvirh {

// E_mn coefficients of t_i^m t_j^n in
//   E = D(Q,P,t,sigma0(kappa)) - D(q,p,t,kappa),
// for m in {0,1}, n in {0,1,2} (E is affine in t_i and quadratic in t_j).
// Computed by evaluating at deg+1 interpolation nodes per variable and
// solving the small exact linear system; kappa may be off the Fuchs locus.
template <class S>
struct ECoefficients {
    std::array<std::array<S, 3>, 2> e{}; // e[m][n]

    const S& operator()(int m, int n) const {
        return e[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
    }

    bool all_zero() const {
        for (const auto& row : e)
            for (const auto& v : row)
                if (!ScalarTraits<S>::is_zero(v)) return false;
        return true;
    }
};

template <class S>
ECoefficients<S> heuristic_E(const S& Q, const S& P, const S& q, const S& p,
                             const Kappa<S>& kappa, int i, int j, int k) {
    const Kappa<S> skappa = reflect(kappa, 0);
    auto E_at = [&](long long ti, long long tj) {
        const S tiv = ScalarTraits<S>::from_int(ti), tjv = ScalarTraits<S>::from_int(tj);
        return d_polynomial(Q - tiv, Q - tjv, P, skappa, i, j, k) -
               d_polynomial(q - tiv, q - tjv, p, kappa, i, j, k);
    };
    // Lagrange in t_j at nodes {0,1,2} for fixed t_i node, then linear in t_i.
    auto quad_coeffs = [&](long long ti) {
        S f0 = E_at(ti, 0), f1 = E_at(ti, 1), f2 = E_at(ti, 2);
        const S half = ScalarTraits<S>::from_ratio(1, 2);
        std::array<S, 3> c;
        c[0] = f0;
        c[2] = (f2 - f1 - f1 + f0) * half;
        c[1] = f1 - f0 - c[2];
        return c;
    };
    auto c0 = quad_coeffs(0), c1 = quad_coeffs(1);
    ECoefficients<S> out;
    for (int n = 0; n < 3; ++n) {
        out.e[0][static_cast<std::size_t>(n)] = c0[static_cast<std::size_t>(n)];
        out.e[1][static_cast<std::size_t>(n)] =
            c1[static_cast<std::size_t>(n)] - c0[static_cast<std::size_t>(n)];
    }
    return out;
}

// The two solutions of E_12 = E_11 = 0 as evaluable substitutions, plus the
// residual conditions that decide whether the second one kills E entirely.
template <class S>
struct HeuristicCandidates {
    int i, j, k;

    // candidate of (sol1): Q = q + k0/p, P = p — the transformation s0
    std::pair<S, S> candidate1(const S& q, const S& p, const Kappa<S>& kappa) const {
        if (ScalarTraits<S>::near_zero(p, kChartTol)) throw PoleError("candidate needs p != 0");
        return {q + kappa[0] / p, p};
    }

    // candidate of (sol2): Q = q + (k0 + k_i + k4)/p, P = -p
    std::pair<S, S> candidate2(const S& q, const S& p, const Kappa<S>& kappa) const {
        if (ScalarTraits<S>::near_zero(p, kChartTol)) throw PoleError("candidate needs p != 0");
        return {q + (kappa[0] + kappa[i] + kappa[4]) / p, -p};
    }

    // residual condition (E02): 2 k_i - k_j - k_k + 1 = 0
    S e02_residual(const Kappa<S>& kappa) const {
        return kappa[i] + kappa[i] - kappa[j] - kappa[k] + ScalarTraits<S>::one();
    }

    // residual condition (EE): k_i (k4 - k_i)(k4 + k_i) = 0
    S ee_residual(const Kappa<S>& kappa) const {
        return kappa[i] * (kappa[4] - kappa[i]) * (kappa[4] + kappa[i]);
    }
};

template <class S>
HeuristicCandidates<S> heuristic_solve(int i, int j, int k) {
    detail::check_triple(i, j, k);
    return HeuristicCandidates<S>{i, j, k};
}

} // namespace pvirh
