#pragma once

#include <cstdint>
#include <random>

#include "pvirh/scalar.hpp"

// Seeded sampling for identity testing.  Rational numerators and
// denominators are bounded by 10^3; draws go through explicit modular
// reduction so a seed reproduces the same stream on any platform.  The
// exact and approximate backends sample through the same rational stream,
// which is what makes dual-backend comparisons point-for-point meaningful.

namespace pvirh {

class SampleRng {
  public:
    explicit SampleRng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t bits() { return gen_(); }

    // uniform in [lo, hi] (modulo bias is irrelevant at these ranges)
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational rational(long long max_num = 1000, long long max_den = 1000) {
        return Rational(uniform_int(-max_num, max_num)) / Rational(uniform_int(1, max_den));
    }

    Rational nonzero_rational(long long max_num = 1000, long long max_den = 1000) {
        for (;;) {
            Rational r = rational(max_num, max_den);
            if (r != 0) return r;
        }
    }

    // Scalar draws shared by both backends: the underlying point is always
    // a Gaussian rational.
    template <class S>
    S scalar(bool with_imag = false) {
        Rational re = rational();
        Rational im = with_imag ? rational() : Rational(0);
        return ScalarTraits<S>::from_rational(re, im);
    }

    template <class S>
    S nonzero_scalar(bool with_imag = false) {
        for (;;) {
            Rational re = rational();
            Rational im = with_imag ? rational() : Rational(0);
            if (re == 0 && im == 0) continue;
            return ScalarTraits<S>::from_rational(re, im);
        }
    }

    double uniform_real(double lo, double hi) {
        // 53-bit mantissa draw
        double u = static_cast<double>(bits() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace pvirh
