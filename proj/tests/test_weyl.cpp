#include <catch2/catch_amalgamated.hpp>

#include "pvirh/weyl.hpp"

using namespace pvirh;
using GR = GaussianRational;

namespace {
GR gr(long long n, long long d = 1) { return ScalarTraits<GR>::from_ratio(n, d); }

Kappa<Complex> to_approx(const Kappa<GR>& k) {
    Kappa<Complex> out;
    for (int i = 0; i < 5; ++i) out.k[i] = ScalarTraits<GR>::to_complex(k[i]);
    return out;
}
} // namespace

TEST_CASE("cartan matrix matches the D4(1) diagram") {
    for (int i = 0; i < 5; ++i) {
        CHECK(CartanD4::c[i][i] == 2);
        for (int j = 0; j < 5; ++j) {
            CHECK(CartanD4::c[i][j] == CartanD4::c[j][i]);
            if (i != j) {
                int expect = (i == 0 || j == 0) ? -1 : 0;
                CHECK(CartanD4::c[i][j] == expect);
            }
        }
    }
}

TEST_CASE("reflect worked example and fixed points") {
    auto k = Kappa<GR>::from_k0123(gr(1, 2), gr(0), gr(0), gr(0));
    REQUIRE(k[4] == gr(0));
    auto r = reflect(k, 0);
    CHECK(r[0] == gr(-1, 2));
    for (int j = 1; j <= 4; ++j) CHECK(r[j] == gr(1, 2));
    // a reflection fixes its mirror hyperplane
    for (int i = 0; i < 5; ++i) {
        auto kk = k;
        kk.k[i] = gr(0);
        auto fixed = reflect(Kappa<GR>::unchecked(kk.k), i);
        CHECK(fixed.k == kk.k);
    }
    CHECK_THROWS_AS(reflect(k, 5), Error);
}

TEST_CASE("reflections are involutions and preserve the Fuchs relation") {
    SampleRng rng(2024);
    for (int n = 0; n < 50; ++n) {
        auto k = sample_kappa<GR>(rng, true);
        REQUIRE(k.fuchs_defect().is_zero());
        for (int i = 0; i < 5; ++i) {
            auto r = reflect(k, i);
            CHECK(r.fuchs_defect().is_zero());
            CHECK(reflect(r, i) == k);
        }
    }
}

TEST_CASE("coxeter relations of D4(1) hold exactly") {
    SampleRng rng(31337);
    for (int n = 0; n < 20; ++n) {
        auto k = sample_kappa<GR>(rng, true);
        // (s0 si)^3 = id for the legs
        for (int i = 1; i <= 4; ++i) {
            GroupWord w({0, i, 0, i, 0, i});
            CHECK(apply_word(k, w) == k);
        }
        // (si sj)^2 = id for distinct legs
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) {
                GroupWord w({i, j, i, j});
                CHECK(apply_word(k, w) == k);
            }
        CHECK(apply_word(k, GroupWord{}) == k);
    }
}

TEST_CASE("local traces at rational kappa") {
    auto k = to_approx(Kappa<GR>::from_k0123(gr(1, 2), gr(0), gr(0), gr(0)));
    auto a = local_traces(k);
    CHECK(std::abs(a[0] - 2.0) < 1e-15);
    CHECK(std::abs(a[1] - 2.0) < 1e-15);
    CHECK(std::abs(a[2] - 2.0) < 1e-15);
    CHECK(std::abs(a[3] + 2.0) < 1e-15);

    auto k2 = to_approx(Kappa<GR>::unchecked(
        {gr(-1, 2), gr(1, 2), gr(1, 2), gr(1, 2), gr(1, 2)}));
    auto a2 = local_traces(k2);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(a2[i]) < 1e-15);

    auto k3 = to_approx(Kappa<GR>::from_k0123(gr(0), gr(1), gr(0), gr(0)));
    CHECK(std::abs(local_traces(k3)[0] + 2.0) < 1e-15);
}

TEST_CASE("theta worked examples and expanded-formula oracle") {
    LocalTraces<GR> a1{{gr(2), gr(2), gr(2), gr(-2)}};
    auto th1 = theta_from_traces(a1);
    CHECK(th1[0] == gr(0));
    CHECK(th1[1] == gr(0));
    CHECK(th1[2] == gr(0));
    CHECK(th1[3] == gr(-4));

    LocalTraces<GR> a0{{gr(0), gr(0), gr(0), gr(0)}};
    CHECK(theta_from_traces(a0)[3] == gr(-4));

    // independent expanded oracle: theta_i enumerated by index arithmetic
    SampleRng rng(555);
    for (int n = 0; n < 50; ++n) {
        LocalTraces<GR> a;
        for (auto& v : a.a) v = rng.scalar<GR>(true);
        auto th = theta_from_traces(a);
        for (int i = 1; i <= 3; ++i) {
            int j = i % 3 + 1, k = j % 3 + 1; // {i,j,k} = {1,2,3}
            GR expect = a[i - 1] * a[3] + a[j - 1] * a[k - 1];
            CHECK(th[i - 1] == expect);
        }
        GR sq = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
        CHECK(th[3] == a[0] * a[1] * a[2] * a[3] + sq - gr(4));
    }
}

TEST_CASE("theta is invariant under the Weyl action (numeric)") {
    SampleRng rng(808);
    auto norm = [](const ThetaVec<Complex>& a, const ThetaVec<Complex>& b) {
        double m = 0;
        for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    };
    for (int n = 0; n < 100; ++n) {
        auto k = to_approx(sample_kappa<GR>(rng, false));
        auto th = theta_of_kappa(k);
        CHECK(norm(theta_of_kappa(reflect(k, 0)), th) < 1e-10);
    }
    for (int n = 0; n < 60; ++n) {
        auto k = to_approx(sample_kappa<GR>(rng, false));
        auto th = theta_of_kappa(k);
        GroupWord w;
        int len = static_cast<int>(rng.uniform_int(0, 8));
        for (int m = 0; m < len; ++m) w.letters.push_back(static_cast<int>(rng.uniform_int(0, 4)));
        CHECK(norm(theta_of_kappa(apply_word(k, w)), th) < 1e-9);
    }
}
