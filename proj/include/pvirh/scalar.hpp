#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>

#include "pvirh/errors.hpp"

// Scalar backends.  Every algebraic operation in the library is templated
// over a scalar field S with two instantiations:
//
//   GaussianRational  — Q(i), exact.  Every polynomial identity in the
//                       underlying formulas has integer coefficients, so
//                       evaluating at random Gaussian-rational points gives
//                       certain equality at the sampled points
//                       (Schwartz–Zippel style identity testing without a
//                       computer-algebra dependency).
//   Complex           — std::complex<double>, for flows, monodromy and
//                       everything transcendental.

namespace pvirh {

using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long long n) : re(n) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw PoleError("division by zero in Q(i)");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

// Exact decomposition of a double into a rational (doubles are dyadic).
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw Error("cannot convert non-finite double to rational");
    if (x == 0.0) return Rational(0);
    int e = 0;
    double m = std::frexp(x, &e); // x = m * 2^e, 0.5 <= |m| < 1
    auto mi = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    Rational r(mi);
    boost::multiprecision::cpp_int two(2);
    if (e >= 0)
        r *= Rational(boost::multiprecision::pow(two, e));
    else
        r /= Rational(boost::multiprecision::pow(two, -e));
    return r;
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool exact = true;
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return {Rational(1)}; }
    static GaussianRational from_int(long long n) { return {Rational(n)}; }
    static GaussianRational from_ratio(long long n, long long d) { return {Rational(n) / d}; }
    static GaussianRational from_rational(const Rational& re, const Rational& im) { return {re, im}; }
    static GaussianRational from_complex(const Complex& z) {
        return {rational_from_double(z.real()), rational_from_double(z.imag())};
    }
    static bool is_zero(const GaussianRational& a) { return a.is_zero(); }
    // In the exact backend, "approximately zero" means exactly zero.
    static bool near_zero(const GaussianRational& a, double) { return a.is_zero(); }
    static Complex to_complex(const GaussianRational& a) {
        return {a.re.convert_to<double>(), a.im.convert_to<double>()};
    }
    static double abs2(const GaussianRational& a) {
        return (a.re * a.re + a.im * a.im).convert_to<double>();
    }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static Complex zero() { return {}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex from_int(long long n) { return {static_cast<double>(n), 0.0}; }
    static Complex from_ratio(long long n, long long d) {
        return {static_cast<double>(n) / static_cast<double>(d), 0.0};
    }
    static Complex from_rational(const Rational& re, const Rational& im) {
        return {re.convert_to<double>(), im.convert_to<double>()};
    }
    static Complex from_complex(const Complex& z) { return z; }
    static bool is_zero(const Complex& a) { return a.real() == 0.0 && a.imag() == 0.0; }
    static bool near_zero(const Complex& a, double tol) { return std::abs(a) <= tol; }
    static Complex to_complex(const Complex& a) { return a; }
    static double abs2(const Complex& a) { return std::norm(a); }
};

// ---- string formats -------------------------------------------------------
//
// Exact scalars print as "p/q" or "p/q+r/s*i" (denominator omitted when 1,
// imaginary part omitted when 0).  Approximate scalars print as decimal
// strings "x" / "x+y*i" with enough digits to round-trip.  Exact values are
// never silently converted to floats: the two grammars are disjoint except
// for plain integers, and parsing into the wrong backend throws.

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline std::string to_string(const GaussianRational& a) {
    if (a.im == 0) return to_string(a.re);
    std::string s = a.im < 0 ? "-" : "+";
    Rational ia = a.im < 0 ? Rational(-a.im) : a.im;
    if (a.re == 0 && s == "+") return to_string(ia) + "*i";
    if (a.re == 0) return "-" + to_string(ia) + "*i";
    return to_string(a.re) + s + to_string(ia) + "*i";
}

inline std::string to_string(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string to_string(const Complex& z) {
    if (z.imag() == 0.0) return to_string(z.real());
    std::string s = std::signbit(z.imag()) ? "-" : "+";
    if (z.real() == 0.0) return (s == "-" ? "-" : "") + to_string(std::abs(z.imag())) + "*i";
    return to_string(z.real()) + s + to_string(std::abs(z.imag())) + "*i";
}

namespace detail {

// Classifier for a single real token.
enum class LiteralKind { Integer, RationalTok, DecimalTok };

inline LiteralKind classify_token(const std::string& t) {
    bool slash = t.find('/') != std::string::npos;
    bool dec = t.find_first_of(".eE") != std::string::npos;
    if (slash && dec) throw Error("malformed number literal: " + t);
    if (slash) return LiteralKind::RationalTok;
    if (dec) return LiteralKind::DecimalTok;
    return LiteralKind::Integer;
}

// Split "A", "A+B*i", "A-B*i", "B*i", "i", "-i" into real/imag tokens.
inline void split_complex(const std::string& in, std::string& re_tok, std::string& im_tok) {
    std::string s = in;
    re_tok.clear();
    im_tok.clear();
    if (s.empty()) throw Error("empty number literal");
    // find top-level sign separating the two parts
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
            split = i; // keep the last one: exponents never appear after the split
    }
    auto strip_i = [](std::string t) -> std::string {
        if (t == "i") return "1";
        if (t == "-i") return "-1";
        if (t == "+i") return "1";
        if (t.size() >= 2 && t.substr(t.size() - 2) == "*i") return t.substr(0, t.size() - 2);
        if (!t.empty() && t.back() == 'i') return t.substr(0, t.size() - 1);
        throw Error("malformed imaginary part: " + t);
    };
    bool tail_imag = s.back() == 'i';
    if (split == std::string::npos) {
        if (tail_imag)
            im_tok = strip_i(s);
        else
            re_tok = s;
        return;
    }
    if (!tail_imag) {
        re_tok = s; // e.g. "1/2" with internal '-' in numerator is impossible; treat whole as real
        return;
    }
    re_tok = s.substr(0, split);
    im_tok = strip_i(s.substr(split));
}

inline Rational parse_rational(std::string t) {
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    if (t.empty()) throw Error("empty rational literal");
    if (classify_token(t) == LiteralKind::DecimalTok)
        throw Error("decimal literal '" + t + "' is not valid in the exact backend");
    try {
        auto slash = t.find('/');
        if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(t));
        boost::multiprecision::cpp_int num(t.substr(0, slash));
        boost::multiprecision::cpp_int den(t.substr(slash + 1));
        if (den == 0) throw Error("zero denominator: " + t);
        return Rational(num) / Rational(den);
    } catch (const std::exception& e) {
        throw Error("malformed rational literal '" + t + "': " + e.what());
    }
}

inline double parse_double(const std::string& t) {
    if (t.empty()) throw Error("empty decimal literal");
    if (classify_token(t) == LiteralKind::RationalTok)
        throw Error("rational literal '" + t + "' is not valid in the approximate backend");
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw Error("malformed decimal literal: " + t);
    }
    if (pos != t.size()) throw Error("malformed decimal literal: " + t);
    return v;
}

} // namespace detail

template <class S>
S parse_scalar(const std::string& in);

template <>
inline GaussianRational parse_scalar<GaussianRational>(const std::string& in) {
    std::string re, im;
    detail::split_complex(in, re, im);
    GaussianRational out;
    if (!re.empty()) out.re = detail::parse_rational(re);
    if (!im.empty()) out.im = detail::parse_rational(im);
    return out;
}

template <>
inline Complex parse_scalar<Complex>(const std::string& in) {
    std::string re, im;
    detail::split_complex(in, re, im);
    Complex out{0.0, 0.0};
    if (!re.empty()) out += Complex{detail::parse_double(re), 0.0};
    if (!im.empty()) out += Complex{0.0, detail::parse_double(im)};
    return out;
}

} // namespace pvirh
