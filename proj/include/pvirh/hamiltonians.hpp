#pragma once

#include "pvirh/backlund.hpp"
#include "pvirh/state.hpp"

// The three Hamiltonian formulations of PVI:
//
//   (H1) single time x,  t = (0, 1, x, infinity):        h(q,p,x,kappa)
//   (H4) four time variables, all finite:                H_i(q,p,t,kappa)
//   (H3) three time variables, t4 = infinity:            h_i(q,p,t,kappa)
//
// together with closed-form partial derivatives (the vector fields), the
// t4 -> infinity limit defect, and the commutation defect of Lemma (indep).

namespace pvirh {

namespace detail {
inline void other_two(int i, int& j, int& k) {
    j = i == 1 ? 2 : 1;
    k = i == 3 ? 2 : 3;
}
} // namespace detail

// x(x-1) h = q(q-1)(q-x) p^2
//            - {(k3-1) q(q-1) + k1 (q-1)(q-x) + k2 q(q-x)} p
//            + k0(k0+k4)(q-x)
template <class S>
S h_single(const S& q, const S& p, const S& x, const Kappa<S>& k) {
    const S one = ScalarTraits<S>::one();
    S w = x * (x - one);
    if (ScalarTraits<S>::near_zero(w, kChartTol)) throw PoleError("h: x in {0,1}");
    S A = q * (q - one) * (q - x);
    S B = (k[3] - one) * q * (q - one) + k[1] * (q - one) * (q - x) + k[2] * q * (q - x);
    S C = k[0] * (k[0] + k[4]) * (q - x);
    return (A * p * p - B * p + C) / w;
}

// (t_ij t_ik t_il) H_i = (q_i q_j q_k q_l) p^2
//   - {(k_i-1) q_j q_k q_l + k_j q_i q_k q_l + k_k q_i q_j q_l + k_l q_i q_j q_k} p
//   + k0 q_i {(k_i-1) q_i + (k_j+k0) q_j + (k_k+k0) q_k + (k_l+k0) q_l}
template <class S>
S H4(int i, const S& q, const S& p, const TimeConfig<S>& t, const Kappa<S>& kap) {
    if (!t.all_finite()) throw InfinityError("H4 requires four finite time variables");
    if (i < 1 || i > 4) throw Error("H4 index out of range [1,4]");
    int rest[3], r = 0;
    for (int m = 1; m <= 4; ++m)
        if (m != i) rest[r++] = m;
    const int j = rest[0], k = rest[1], l = rest[2];
    const S one = ScalarTraits<S>::one();
    S qi = q - t.at(i), qj = q - t.at(j), qk = q - t.at(k), ql = q - t.at(l);
    S d = (t.at(i) - t.at(j)) * (t.at(i) - t.at(k)) * (t.at(i) - t.at(l));
    S quad = qi * qj * qk * ql * p * p;
    S lin = ((kap[i] - one) * qj * qk * ql + kap[j] * qi * qk * ql + kap[k] * qi * qj * ql +
             kap[l] * qi * qj * qk) *
            p;
    S cst = kap[0] * qi *
            ((kap[i] - one) * qi + (kap[j] + kap[0]) * qj + (kap[k] + kap[0]) * qk +
             (kap[l] + kap[0]) * ql);
    return (quad - lin + cst) / d;
}

// (t_ij t_ik) h_i = (q_i q_j q_k) p^2
//   - {(k_i-1) q_j q_k + k_j q_k q_i + k_k q_i q_j} p + k0(k0+k4) q_i
template <class S>
S h3(int i, const S& q, const S& p, const TimeConfig<S>& t, const Kappa<S>& kap) {
    if (i < 1 || i > 3) throw Error("h3 index out of range [1,3]");
    int j, k;
    detail::other_two(i, j, k);
    const S one = ScalarTraits<S>::one();
    S qi = q - t.at(i), qj = q - t.at(j), qk = q - t.at(k);
    S d = (t.at(i) - t.at(j)) * (t.at(i) - t.at(k));
    S quad = qi * qj * qk * p * p;
    S lin = ((kap[i] - one) * qj * qk + kap[j] * qk * qi + kap[k] * qi * qj) * p;
    S cst = kap[0] * (kap[0] + kap[4]) * qi;
    return (quad - lin + cst) / d;
}

// Vector-field components of the three-time system.
template <class S>
S h3_dp(int i, const S& q, const S& p, const TimeConfig<S>& t, const Kappa<S>& kap) {
    int j, k;
    detail::other_two(i, j, k);
    const S one = ScalarTraits<S>::one();
    S qi = q - t.at(i), qj = q - t.at(j), qk = q - t.at(k);
    S d = (t.at(i) - t.at(j)) * (t.at(i) - t.at(k));
    return (qi * qj * qk * (p + p) -
            ((kap[i] - one) * qj * qk + kap[j] * qk * qi + kap[k] * qi * qj)) /
           d;
}

template <class S>
S h3_dq(int i, const S& q, const S& p, const TimeConfig<S>& t, const Kappa<S>& kap) {
    int j, k;
    detail::other_two(i, j, k);
    const S one = ScalarTraits<S>::one();
    S qi = q - t.at(i), qj = q - t.at(j), qk = q - t.at(k);
    S d = (t.at(i) - t.at(j)) * (t.at(i) - t.at(k));
    S quad = (qj * qk + qi * qk + qi * qj) * p * p;
    S lin = ((kap[i] - one) * (qj + qk) + kap[j] * (qk + qi) + kap[k] * (qi + qj)) * p;
    return (quad - lin + kap[0] * (kap[0] + kap[4])) / d;
}

// H4(i) - h3(i) at finite t4 (i = 1..3), or H4(4) itself for i = 4; both
// decay like O(1/t4) as t4 grows.
template <class S>
S limit_defect(int i, const S& q, const S& p, const TimeConfig<S>& t3cfg, const S& t4,
               const Kappa<S>& kap) {
    TimeConfig<S> t4cfg = TimeConfig<S>::four(t3cfg.at(1), t3cfg.at(2), t3cfg.at(3), t4);
    if (i == 4) return H4(4, q, p, t4cfg, kap);
    return H4(i, q, p, t4cfg, kap) - h3(i, q, p, t3cfg, kap);
}

// s_i(H_j) - H_j + delta_ij k_i/q_i evaluated at (q, p).  On the Fuchs
// locus this value is independent of (q, p) — the content of Lemma (indep)
// and hence of the flow/Baecklund commutation theorem.
template <class S>
S lemma_indep_defect(int i, int j, const S& q, const S& p, const TimeConfig<S>& t,
                     const Kappa<S>& kap) {
    if (j < 1 || j > 4) throw Error("lemma_indep_defect: j out of range [1,4]");
    if (i < 0 || i > 4) throw Error("lemma_indep_defect: i out of range [0,4]");
    Kappa<S> skap = reflect(kap, i);
    S sq = q, sp = p;
    if (i == 0) {
        if (ScalarTraits<S>::near_zero(p, kChartTol)) throw PoleError("s0 needs p != 0");
        sq = q + kap[0] / p;
    } else {
        S qi = q - t.at(i);
        if (ScalarTraits<S>::near_zero(qi, kChartTol)) throw PoleError("s_i needs q != t_i");
        sp = p - kap[i] / qi;
    }
    S defect = H4(j, sq, sp, t, skap) - H4(j, q, p, t, kap);
    if (i == j) defect += kap[i] / (q - t.at(i));
    return defect;
}

} // namespace pvirh
