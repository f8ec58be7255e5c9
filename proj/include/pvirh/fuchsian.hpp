#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pvirh/hamiltonians.hpp"
#include "pvirh/pfrac.hpp"

// Fuchsian equations attached to an extended state:
//
//   f'' - u1(z) f' + u2(z) f = 0
//
// in the two-variable partial-fraction representation of pfrac.hpp, with
// the constructions (three- and four-point coefficient families), the
// SL2-normalization gauge, elementary gauge shifts realizing s_1..s_4,
// the Frobenius apparentness obstruction, and the coalescence data
// (w-coefficients, L, M, N, discriminant, D-polynomial).

namespace pvirh {

template <class S>
struct FuchsianPole {
    S loc;
    S a1{}; // u1 += a1/(z-loc)
    S b1{}; // u2 += b1/(z-loc)
    S b2{}; // u2 += b2/(z-loc)^2
};

template <class S>
struct FuchsianCoeffs {
    std::vector<FuchsianPole<S>> poles;

    Fractions<S> u1() const {
        Fractions<S> f;
        for (const auto& p : poles) f.add_term(p.loc, p.a1, ScalarTraits<S>::zero());
        return f;
    }
    Fractions<S> u2() const {
        Fractions<S> f;
        for (const auto& p : poles) f.add_term(p.loc, p.b1, p.b2);
        return f;
    }

    static FuchsianCoeffs from_fractions(const Fractions<S>& u1, const Fractions<S>& u2) {
        FuchsianCoeffs out;
        for (const auto& t : u1.terms) out.poles.push_back({t.loc, t.c1, {}, {}});
        for (const auto& t : u2.terms) {
            bool merged = false;
            for (auto& p : out.poles)
                if (Fractions<S>::same_loc(p.loc, t.loc)) {
                    p.b1 = t.c1;
                    p.b2 = t.c2;
                    merged = true;
                    break;
                }
            if (!merged) out.poles.push_back({t.loc, {}, t.c1, t.c2});
        }
        return out;
    }

    const FuchsianPole<S>* find(const S& loc) const {
        for (const auto& p : poles)
            if (Fractions<S>::same_loc(p.loc, loc)) return &p;
        return nullptr;
    }

    LocalLaurent<S> laurent(const TimePoint<S>& at, int nmax) const {
        return at.finite ? laurent_at(u1(), u2(), at.value, nmax)
                         : laurent_at_infinity(u1(), u2(), nmax);
    }
};

// v1 = 1/(z-q) + sum (k_i - 1)/(z - t_i),  v2 = p/(z-q) - sum h_i/(z - t_i)
template <class S>
FuchsianCoeffs<S> build_coeff3(const ExtendedState<S>& st) {
    if (st.t.t4.finite) throw InfinityError("build_coeff3 wants the three-time normalization");
    st.validate();
    const S one = ScalarTraits<S>::one();
    FuchsianCoeffs<S> out;
    out.poles.push_back({st.q, one, st.p, {}});
    for (int i = 1; i <= 3; ++i)
        out.poles.push_back(
            {st.t.at(i), st.kappa[i] - one, -h3(i, st.q, st.p, st.t, st.kappa), {}});
    return out;
}

// u1 = 1/(z-q) + sum_{i<=4} (k_i - 1)/(z - t_i),  u2 = p/(z-q) - sum H_i/(z - t_i)
template <class S>
FuchsianCoeffs<S> build_coeff4(const ExtendedState<S>& st) {
    if (!st.t.t4.finite) throw InfinityError("build_coeff4 wants four finite time variables");
    st.validate();
    const S one = ScalarTraits<S>::one();
    FuchsianCoeffs<S> out;
    out.poles.push_back({st.q, one, st.p, {}});
    for (int i = 1; i <= 4; ++i)
        out.poles.push_back(
            {st.t.at(i), st.kappa[i] - one, -H4(i, st.q, st.p, st.t, st.kappa), {}});
    return out;
}

// Gauge f = phi F:  V1 = u1 - 2 phi'/phi,  V2 = u2 - (phi'/phi) u1 + phi''/phi
// with phi'/phi supplied as a simple fraction (log-derivative of the gauge).
template <class S>
FuchsianCoeffs<S> normalize_with(const FuchsianCoeffs<S>& c, const Fractions<S>& psi) {
    Fractions<S> u1 = c.u1(), u2 = c.u2();
    Fractions<S> V1 = u1 - psi.scaled(ScalarTraits<S>::from_int(2));
    // phi''/phi = psi' + psi^2
    Fractions<S> V2 = u2 - product(psi, u1) + psi.derivative() + product(psi, psi);
    return FuchsianCoeffs<S>::from_fractions(V1, V2);
}

// phi = (z - q) prod (z - t_i)^{k_i/2}: carries (B1)-(B3) into the normal
// form with exponents (C1) +-k_i/2, (C2) +-1, (C3) (3 +- k4)/2.
template <class S>
FuchsianCoeffs<S> normalize3(const FuchsianCoeffs<S>& c, const ExtendedState<S>& st) {
    const S half = ScalarTraits<S>::from_ratio(1, 2);
    Fractions<S> psi;
    psi.add_term(st.q, ScalarTraits<S>::one(), {});
    for (int i = 1; i <= 3; ++i) psi.add_term(st.t.at(i), st.kappa[i] * half, {});
    return normalize_with(c, psi);
}

// Elementary gauge transformation f = (z - t_i)^{k_i} fbar and the state
// transformation read back off the transformed coefficients.
template <class S>
struct GaugeReadoff {
    FuchsianCoeffs<S> coeffs;
    Kappa<S> kappa;
    S q;
    S p;
};

template <class S>
GaugeReadoff<S> gauge_shift(const FuchsianCoeffs<S>& c, int i, const ExtendedState<S>& st) {
    if (i < 1 || i > 4) throw Error("gauge_shift index out of range [1,4]");
    const S ki = st.kappa[i];
    const S ti = st.t.at(i);
    const S one = ScalarTraits<S>::one();
    Fractions<S> u1 = c.u1(), u2 = c.u2();
    Fractions<S> pole;
    pole.add_term(ti, one, {});
    Fractions<S> ub1 = u1 - pole.scaled(ki + ki);
    Fractions<S> ub2 = u2 - product(pole.scaled(ki), u1);
    ub2.add_term(ti, {}, ki * (ki - one));
    GaugeReadoff<S> out;
    out.coeffs = FuchsianCoeffs<S>::from_fractions(ub1, ub2);

    // Read the new (kappa, q, p) back off the partial-fraction data: the
    // apparent point stays the residue-1 pole of u1 at z = q, its u2
    // residue is pbar, and the leg residues give kappabar_m - 1.  With four
    // finite legs kappabar_0 comes from Fuchs' relation; in the three-leg
    // normalization the invisible components are those of the reflection.
    out.kappa = reflect(st.kappa, i);
    out.q = st.q;
    const auto* ap = out.coeffs.find(out.q);
    if (!ap) throw Error("gauge_shift lost the apparent singular point");
    out.p = ap->b1;
    int legs = st.t.t4.finite ? 4 : 3;
    S leg_sum = ScalarTraits<S>::zero();
    for (int m = 1; m <= legs; ++m) {
        const auto* lp = out.coeffs.find(st.t.at(m));
        if (!lp) throw Error("gauge_shift lost a singular point");
        out.kappa[m] = lp->a1 + one;
        leg_sum += out.kappa[m];
    }
    if (legs == 4) out.kappa[0] = (one - leg_sum) / ScalarTraits<S>::from_int(2);
    return out;
}

// Frobenius obstruction at a resonant point with exponents (shift, shift+n):
// gauge by w^shift, then run the recursion
//   I(m) c_m = sum_{s=1..m} [ A_{s-1} (m-s) - B_{s-2} ] c_{m-s},  I(m) = m(m-n),
// and return the right-hand side at the resonance m = n.  Zero iff no
// solution involves a logarithm (the point is apparent).
template <class S>
S apparent_obstruction(const FuchsianCoeffs<S>& c, const TimePoint<S>& at, int n,
                       const S& shift = S{}) {
    if (n < 1) throw NotResonantError("resonance order must be a positive integer");
    LocalLaurent<S> lau = c.laurent(at, n);
    // exponent shift: A_r -= 2*shift at r=-1; B_r -= shift*A_{r+1} (+ shift(shift-1) at r=-2)
    if (!ScalarTraits<S>::is_zero(shift)) {
        LocalLaurent<S> sh = lau;
        for (int r = -2; r <= n - 2; ++r) sh.b(r) = lau.b(r) - shift * lau.a(r + 1);
        sh.b(-2) += shift * (shift - ScalarTraits<S>::one());
        sh.a(-1) -= shift + shift;
        lau = sh;
    }
    auto [esum, eprod] = indicial_sum_product(lau);
    double scale = 1.0 + std::sqrt(ScalarTraits<S>::abs2(esum)) +
                   std::sqrt(ScalarTraits<S>::abs2(eprod));
    if (!ScalarTraits<S>::near_zero(esum - ScalarTraits<S>::from_int(n), kChartTol * scale) ||
        !ScalarTraits<S>::near_zero(eprod, kChartTol * scale))
        throw NotResonantError("local exponents are not (0, n) after the shift");
    std::vector<S> cs(static_cast<std::size_t>(n), ScalarTraits<S>::zero());
    cs[0] = ScalarTraits<S>::one();
    auto rhs = [&](int m) {
        S acc = ScalarTraits<S>::zero();
        for (int s = 1; s <= m; ++s)
            acc += (lau.a(s - 1) * ScalarTraits<S>::from_int(m - s) - lau.b(s - 2)) *
                   cs[static_cast<std::size_t>(m - s)];
        return acc;
    };
    for (int m = 1; m < n; ++m)
        cs[static_cast<std::size_t>(m)] = rhs(m) / ScalarTraits<S>::from_int(m * (m - n));
    return rhs(n);
}

// ---- coalescence t_k -> t_j -------------------------------------------------

template <class S>
struct CoalescedData {
    FuchsianCoeffs<S> coeffs; // w1, w2 with the double pole at t_j
    S L, M, N;
};

namespace detail {
inline void check_triple(int i, int j, int k) {
    if (i < 1 || i > 3 || j < 1 || j > 3 || k < 1 || k > 3 || i == j || j == k || i == k)
        throw Error("coalescence triple must be a permutation of {1,2,3}");
}
} // namespace detail

// L, M, N of the degenerate equation; the time variable t_k is already
// merged into t_j (only t_i and t_j enter).
template <class S>
std::array<S, 3> coalesce_lmn(const ExtendedState<S>& st, int i, int j, int k) {
    detail::check_triple(i, j, k);
    const S one = ScalarTraits<S>::one();
    const S qi = st.q - st.t.at(i), qj = st.q - st.t.at(j);
    const S tij = st.t.at(i) - st.t.at(j);
    const S kjk = st.kappa[j] + st.kappa[k];
    const S c0 = st.kappa[0] * (st.kappa[0] + st.kappa[4]);
    S L = (qi * qj * qj * st.p * st.p - ((st.kappa[i] - one) * qj + kjk * qi) * qj * st.p +
           c0 * qi) /
          (tij * tij);
    S M = (qi * qj * qj * st.p * st.p -
           (qi * qi + (kjk - one - one) * qi * qj + st.kappa[i] * qj * qj) * st.p + c0 * qi) /
          (tij * tij);
    S N = (qi * qj * qj * st.p * st.p - ((kjk - one) * qi + st.kappa[i] * qj) * qj * st.p +
           c0 * qj) /
          tij;
    return {L, M, N};
}

template <class S>
CoalescedData<S> coalesce(const ExtendedState<S>& st, int i, int j, int k) {
    if (st.t.t4.finite) throw InfinityError("coalescence works in the three-time normalization");
    auto [L, M, N] = coalesce_lmn(st, i, j, k);
    const S one = ScalarTraits<S>::one();
    CoalescedData<S> out{{}, L, M, N};
    out.coeffs.poles.push_back({st.q, one, st.p, {}});
    out.coeffs.poles.push_back({st.t.at(i), st.kappa[i] - one, -L, {}});
    out.coeffs.poles.push_back(
        {st.t.at(j), st.kappa[j] + st.kappa[k] - one - one, M, N});
    return out;
}

// D(q_i, q_j, p, kappa): the G-invariant polynomial form of -t_ij * Delta.
// Arguments are the q-variables themselves so the off-locus experiments can
// treat them as independent.
template <class S>
S d_polynomial(const S& qi, const S& qj, const S& p, const Kappa<S>& kap, int i, int j, int k) {
    detail::check_triple(i, j, k);
    const S one = ScalarTraits<S>::one();
    const S A = kap[j] + kap[k] - one;
    return A * A * (qi - qj) +
           ScalarTraits<S>::from_int(4) * qj *
               (qi * qj * p * p - (A * qi + kap[i] * qj) * p + kap[0] * (kap[0] + kap[4]));
}

template <class S>
struct Discriminant {
    S delta; // (k_j + k_k - 1)^2 - 4N, squared exponent difference at t_j
    S d;     // the polynomial D; satisfies D = -t_ij * delta
};

template <class S>
Discriminant<S> discriminant(const ExtendedState<S>& st, int i, int j, int k) {
    auto [L, M, N] = coalesce_lmn(st, i, j, k);
    (void)L;
    (void)M;
    const S one = ScalarTraits<S>::one();
    const S A = st.kappa[j] + st.kappa[k] - one;
    Discriminant<S> out;
    out.delta = A * A - ScalarTraits<S>::from_int(4) * N;
    out.d = d_polynomial(st.q - st.t.at(i), st.q - st.t.at(j), st.p, st.kappa, i, j, k);
    return out;
}

// psi = (z - q)(z - t_i)^{k_i/2} (z - t_j)^{(k_j + k_k)/2}: normalization of
// the coalesced equation, exponents (D1)-(D4).
template <class S>
FuchsianCoeffs<S> normalize_coalesced(const CoalescedData<S>& cd, const ExtendedState<S>& st,
                                      int i, int j, int k) {
    detail::check_triple(i, j, k);
    const S half = ScalarTraits<S>::from_ratio(1, 2);
    Fractions<S> psi;
    psi.add_term(st.q, ScalarTraits<S>::one(), {});
    psi.add_term(st.t.at(i), st.kappa[i] * half, {});
    psi.add_term(st.t.at(j), (st.kappa[j] + st.kappa[k]) * half, {});
    return normalize_with(cd.coeffs, psi);
}

} // namespace pvirh
