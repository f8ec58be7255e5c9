#pragma once

#include <vector>

#include "pvirh/state.hpp"

// Small partial-fraction algebra for rational functions on P^1 that vanish
// at infinity and have poles of order at most two.  Coefficient data is
// kept in partial-fraction form throughout (never expanded), which keeps
// residues directly readable and every operation exact over Q(i).

namespace pvirh {

template <class S>
struct Fractions {
    struct Term {
        S loc;
        S c1{}; // coefficient of 1/(z-loc)
        S c2{}; // coefficient of 1/(z-loc)^2
    };
    std::vector<Term> terms;

    static bool same_loc(const S& a, const S& b) {
        return ScalarTraits<S>::near_zero(a - b, kChartTol);
    }

    Term* find(const S& loc) {
        for (auto& t : terms)
            if (same_loc(t.loc, loc)) return &t;
        return nullptr;
    }
    const Term* find(const S& loc) const {
        for (auto& t : terms)
            if (same_loc(t.loc, loc)) return &t;
        return nullptr;
    }

    void add_term(const S& loc, const S& c1, const S& c2) {
        if (auto* t = find(loc)) {
            t->c1 += c1;
            t->c2 += c2;
        } else {
            terms.push_back({loc, c1, c2});
        }
    }

    bool simple() const {
        for (const auto& t : terms)
            if (!ScalarTraits<S>::is_zero(t.c2)) return false;
        return true;
    }

    S eval(const S& z) const {
        S out = ScalarTraits<S>::zero();
        for (const auto& t : terms) {
            S d = z - t.loc;
            out += t.c1 / d + t.c2 / (d * d);
        }
        return out;
    }

    Fractions& operator+=(const Fractions& o) {
        for (const auto& t : o.terms) add_term(t.loc, t.c1, t.c2);
        return *this;
    }
    Fractions& operator-=(const Fractions& o) {
        for (const auto& t : o.terms) add_term(t.loc, -t.c1, -t.c2);
        return *this;
    }
    friend Fractions operator+(Fractions a, const Fractions& b) { return a += b; }
    friend Fractions operator-(Fractions a, const Fractions& b) { return a -= b; }

    Fractions scaled(const S& c) const {
        Fractions out = *this;
        for (auto& t : out.terms) {
            t.c1 *= c;
            t.c2 *= c;
        }
        return out;
    }

    // d/dz, defined for simple fractions only (stays within order two)
    Fractions derivative() const {
        Fractions out;
        for (const auto& t : terms) {
            if (!ScalarTraits<S>::is_zero(t.c2))
                throw Error("derivative of a second-order pole leaves the representation");
            out.add_term(t.loc, ScalarTraits<S>::zero(), -t.c1);
        }
        return out;
    }

    // product of two simple fractions:
    //   1/(z-a) * 1/(z-b) = [1/(z-a) - 1/(z-b)]/(a-b)  for a != b
    friend Fractions product(const Fractions& f, const Fractions& g) {
        Fractions out;
        for (const auto& s : f.terms) {
            if (!ScalarTraits<S>::is_zero(s.c2))
                throw Error("product defined for simple fractions only");
            for (const auto& t : g.terms) {
                if (!ScalarTraits<S>::is_zero(t.c2))
                    throw Error("product defined for simple fractions only");
                S c = s.c1 * t.c1;
                if (same_loc(s.loc, t.loc)) {
                    out.add_term(s.loc, ScalarTraits<S>::zero(), c);
                } else {
                    S inv = c / (s.loc - t.loc);
                    out.add_term(s.loc, inv, ScalarTraits<S>::zero());
                    out.add_term(t.loc, -inv, ScalarTraits<S>::zero());
                }
            }
        }
        return out;
    }
};

// Laurent data of a pair (u1, u2) of fractions around one point:
//   u1 = sum_{r >= -1} A_r w^r,   u2 = sum_{r >= -2} B_r w^r,
// where w is the local coordinate (z - z0, or 1/z at infinity after the
// standard change of variable that carries the ODE to the infinity chart).
template <class S>
struct LocalLaurent {
    std::vector<S> A; // A[idx] = A_{idx-1}
    std::vector<S> B; // B[idx] = B_{idx-2}

    const S& a(int r) const { return A[static_cast<std::size_t>(r + 1)]; }
    const S& b(int r) const { return B[static_cast<std::size_t>(r + 2)]; }
    S& a(int r) { return A[static_cast<std::size_t>(r + 1)]; }
    S& b(int r) { return B[static_cast<std::size_t>(r + 2)]; }
};

// Expansion around a finite point z0, terms up to w^{nmax-1} in u1 and
// w^{nmax-2} in u2 (exactly what a Frobenius pass to resonance nmax needs).
template <class S>
LocalLaurent<S> laurent_at(const Fractions<S>& u1, const Fractions<S>& u2, const S& z0, int nmax) {
    LocalLaurent<S> out;
    out.A.assign(static_cast<std::size_t>(nmax + 1), ScalarTraits<S>::zero());
    out.B.assign(static_cast<std::size_t>(nmax + 1), ScalarTraits<S>::zero());
    for (const auto& t : u1.terms) {
        if (Fractions<S>::same_loc(t.loc, z0)) {
            out.a(-1) += t.c1;
            if (!ScalarTraits<S>::is_zero(t.c2)) throw Error("u1 must have simple poles");
        } else {
            S d = z0 - t.loc;
            S pw = ScalarTraits<S>::one() / d; // (-1)^m / d^{m+1} running power
            int sign = 1;
            for (int m = 0; m <= nmax - 1; ++m) {
                out.a(m) += sign > 0 ? t.c1 * pw : -(t.c1 * pw);
                pw /= d;
                sign = -sign;
            }
        }
    }
    for (const auto& t : u2.terms) {
        if (Fractions<S>::same_loc(t.loc, z0)) {
            out.b(-2) += t.c2;
            out.b(-1) += t.c1;
        } else {
            S d = z0 - t.loc;
            S pw1 = ScalarTraits<S>::one() / d;       // for c1: (-1)^m / d^{m+1}
            S pw2 = ScalarTraits<S>::one() / (d * d); // for c2: (-1)^m (m+1) / d^{m+2}
            int sign = 1;
            for (int m = 0; m <= nmax - 2; ++m) {
                S term = t.c1 * pw1 + t.c2 * pw2 * ScalarTraits<S>::from_int(m + 1);
                out.b(m) += sign > 0 ? term : -term;
                pw1 /= d;
                pw2 /= d;
                sign = -sign;
            }
        }
    }
    return out;
}

// Expansion at infinity in the chart w = 1/z.  The transformed equation
// f'' - U1 f' + U2 f = 0 has
//   U1(w) = -2/w - u1(1/w)/w^2,     U2(w) = u2(1/w)/w^4.
// Infinity must be (at worst) a regular singular point: the w^{-3}
// coefficient of U2, which equals the residue sum of u2, has to vanish.
template <class S>
LocalLaurent<S> laurent_at_infinity(const Fractions<S>& u1, const Fractions<S>& u2, int nmax) {
    LocalLaurent<S> out;
    out.A.assign(static_cast<std::size_t>(nmax + 1), ScalarTraits<S>::zero());
    out.B.assign(static_cast<std::size_t>(nmax + 1), ScalarTraits<S>::zero());
    out.a(-1) = ScalarTraits<S>::from_int(-2);
    for (const auto& t : u1.terms) {
        if (!ScalarTraits<S>::is_zero(t.c2)) throw Error("u1 must have simple poles");
        S pw = ScalarTraits<S>::one(); // loc^(r+1), starting at r = -1
        for (int r = -1; r <= nmax - 1; ++r) {
            out.a(r) -= t.c1 * pw;
            pw *= t.loc;
        }
    }
    S res_sum = ScalarTraits<S>::zero();
    double scale = 1.0;
    for (const auto& t : u2.terms) {
        res_sum += t.c1;
        scale += std::sqrt(ScalarTraits<S>::abs2(t.c1));
    }
    if (!ScalarTraits<S>::near_zero(res_sum, kChartTol * scale))
        throw Error("infinity is an irregular point: residue sum of u2 is nonzero");
    for (const auto& t : u2.terms) {
        S pw1 = t.loc;                  // loc^(r+3) at r = -2, for the c1 part
        S pw2 = ScalarTraits<S>::one(); // loc^(r+2) at r = -2, for the c2 part
        for (int r = -2; r <= nmax - 2; ++r) {
            out.b(r) += t.c1 * pw1 + t.c2 * ScalarTraits<S>::from_int(r + 3) * pw2;
            pw1 *= t.loc;
            pw2 *= t.loc;
        }
    }
    return out;
}

// Indicial polynomial rho^2 - (1 + A_{-1}) rho + B_{-2} as (sum, product)
// of its roots, read from local Laurent data.
template <class S>
std::pair<S, S> indicial_sum_product(const LocalLaurent<S>& lau) {
    return {ScalarTraits<S>::one() + lau.a(-1), lau.b(-2)};
}

} // namespace pvirh
