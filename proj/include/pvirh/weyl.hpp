#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <vector>

#include "pvirh/errors.hpp"
#include "pvirh/random.hpp"
#include "pvirh/scalar.hpp"

// The parameter space K = { 2k0 + k1 + k2 + k3 + k4 = 1 }, the affine Weyl
// group of type D4(1) acting on it by the reflections
//
//     sigma_i(k_j) = k_j - k_i c_ij,
//
// and the parameter maps kappa -> a (local monodromy traces) and
// a -> theta (cubic-surface coefficients).

namespace pvirh {

// Cartan matrix of D4(1): node 0 is the hub, nodes 1..4 the legs.
struct CartanD4 {
    static constexpr std::array<std::array<int, 5>, 5> c = {{
        {2, -1, -1, -1, -1},
        {-1, 2, 0, 0, 0},
        {-1, 0, 2, 0, 0},
        {-1, 0, 0, 2, 0},
        {-1, 0, 0, 0, 2},
    }};
};

template <class S>
struct Kappa {
    std::array<S, 5> k{};

    // Checked constructor: derives k4 from Fuchs' relation
    // 2k0 + k1 + k2 + k3 + k4 = 1.
    static Kappa from_k0123(const S& k0, const S& k1, const S& k2, const S& k3) {
        Kappa out;
        out.k = {k0, k1, k2, k3,
                 ScalarTraits<S>::one() - k0 - k0 - k1 - k2 - k3};
        return out;
    }

    // Unchecked constructor for the off-locus experiments where Fuchs'
    // relation is deliberately relaxed.  Anything built through here may
    // violate every invariant downstream code relies on; use only where a
    // test explicitly works off the locus.
    static Kappa unchecked(std::array<S, 5> ks) {
        Kappa out;
        out.k = std::move(ks);
        return out;
    }

    const S& operator[](std::size_t i) const { return k[i]; }
    S& operator[](std::size_t i) { return k[i]; }

    // 2k0 + k1 + k2 + k3 + k4 - 1; zero on K.
    S fuchs_defect() const {
        return k[0] + k[0] + k[1] + k[2] + k[3] + k[4] - ScalarTraits<S>::one();
    }

    bool operator==(const Kappa& o) const { return k == o.k; }
};

template <class S>
struct LocalTraces {
    std::array<S, 4> a{}; // a[0] = a_1, ..., a[3] = a_4
    const S& operator[](std::size_t i) const { return a[i]; } // 0-based
};

template <class S>
struct ThetaVec {
    std::array<S, 4> th{}; // th[0] = theta_1, ..., th[3] = theta_4
    const S& operator[](std::size_t i) const { return th[i]; }
    bool operator==(const ThetaVec& o) const { return th == o.th; }
};

// A word in the generators s_0..s_4, applied left to right.
struct GroupWord {
    std::vector<int> letters;

    GroupWord() = default;
    GroupWord(std::initializer_list<int> l) : letters(l) { validate(); }
    explicit GroupWord(std::vector<int> l) : letters(std::move(l)) { validate(); }

    void validate() const {
        for (int i : letters)
            if (i < 0 || i > 4) throw Error("group word letter out of range [0,4]");
    }
};

template <class S>
Kappa<S> reflect(const Kappa<S>& kappa, int i) {
    if (i < 0 || i > 4) throw Error("reflection index out of range [0,4]");
    Kappa<S> out;
    for (int j = 0; j < 5; ++j) {
        switch (CartanD4::c[i][j]) {
            case 0: out.k[j] = kappa.k[j]; break;
            case -1: out.k[j] = kappa.k[j] + kappa.k[i]; break;
            case 2: out.k[j] = kappa.k[j] - kappa.k[i] - kappa.k[i]; break;
        }
    }
    return out;
}

template <class S>
Kappa<S> apply_word(Kappa<S> kappa, const GroupWord& w) {
    for (int i : w.letters) kappa = reflect(kappa, i);
    return kappa;
}

// a_i = 2 cos(pi k_i) for i = 1,2,3 and a_4 = -2 cos(pi k_4); the minus
// sign is the paper's convention for the distinguished point at infinity.
inline LocalTraces<Complex> local_traces(const Kappa<Complex>& kappa) {
    constexpr double pi = std::numbers::pi;
    LocalTraces<Complex> out;
    for (int i = 1; i <= 3; ++i) out.a[i - 1] = 2.0 * std::cos(pi * kappa.k[i]);
    out.a[3] = -2.0 * std::cos(pi * kappa.k[4]);
    return out;
}

// theta_i = a_i a_4 + a_j a_k for {i,j,k} = {1,2,3};
// theta_4 = a_1 a_2 a_3 a_4 + a_1^2 + a_2^2 + a_3^2 + a_4^2 - 4.
template <class S>
ThetaVec<S> theta_from_traces(const LocalTraces<S>& a) {
    ThetaVec<S> th;
    const S &a1 = a.a[0], &a2 = a.a[1], &a3 = a.a[2], &a4 = a.a[3];
    th.th[0] = a1 * a4 + a2 * a3;
    th.th[1] = a2 * a4 + a3 * a1;
    th.th[2] = a3 * a4 + a1 * a2;
    th.th[3] = a1 * a2 * a3 * a4 + a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4 -
               ScalarTraits<S>::from_int(4);
    return th;
}

inline ThetaVec<Complex> theta_of_kappa(const Kappa<Complex>& kappa) {
    return theta_from_traces(local_traces(kappa));
}

// Seeded sample of K: k0..k3 random bounded rationals, k4 from Fuchs.
template <class S>
Kappa<S> sample_kappa(SampleRng& rng, bool with_imag = false) {
    S k0 = rng.scalar<S>(with_imag);
    S k1 = rng.scalar<S>(with_imag);
    S k2 = rng.scalar<S>(with_imag);
    S k3 = rng.scalar<S>(with_imag);
    return Kappa<S>::from_k0123(k0, k1, k2, k3);
}

} // namespace pvirh
