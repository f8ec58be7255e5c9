#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "pvirh/errors.hpp"
#include "pvirh/scalar.hpp"

// Loop geometry for monodromy transport: closed paths assembled from
// straight stems and circular arcs, with argument-principle winding
// certificates.  Loops never rely on a path-finding dependency; the
// construction is explicit and every claim about it is certified
// numerically.

namespace pvirh {

struct PathPiece {
    enum class Kind { Segment, Arc };
    Kind kind = Kind::Segment;
    // segment
    Complex a{}, b{};
    // arc: z = center + radius * exp(i * ((1-s) ang0 + s ang1))
    Complex center{};
    double radius = 0.0, ang0 = 0.0, ang1 = 0.0;

    static PathPiece segment(Complex from, Complex to) {
        PathPiece p;
        p.kind = Kind::Segment;
        p.a = from;
        p.b = to;
        return p;
    }
    static PathPiece arc(Complex center, double radius, double ang0, double ang1) {
        PathPiece p;
        p.kind = Kind::Arc;
        p.center = center;
        p.radius = radius;
        p.ang0 = ang0;
        p.ang1 = ang1;
        return p;
    }

    Complex at(double s) const {
        if (kind == Kind::Segment) return a + s * (b - a);
        double ang = ang0 + s * (ang1 - ang0);
        return center + radius * Complex{std::cos(ang), std::sin(ang)};
    }
    Complex deriv(double s) const {
        if (kind == Kind::Segment) return b - a;
        double ang = ang0 + s * (ang1 - ang0);
        return radius * (ang1 - ang0) * Complex{-std::sin(ang), std::cos(ang)};
    }
    double length() const {
        if (kind == Kind::Segment) return std::abs(b - a);
        return radius * std::abs(ang1 - ang0);
    }
};

struct LoopPath {
    Complex base{};
    std::vector<PathPiece> pieces;
    int encircles = 0; // 1..3 around t_i, 4 around infinity, 0 ad hoc

    Complex start() const { return pieces.front().at(0.0); }
    Complex end() const { return pieces.back().at(1.0); }
};

// Winding number of a closed path around z0 by accumulating principal
// argument increments over chords; valid while no chord subtends >= pi as
// seen from z0, which the guard-disk construction guarantees.
inline double winding_number(const LoopPath& loop, Complex z0, int chords_per_piece = 64) {
    double total = 0.0;
    for (const auto& piece : loop.pieces) {
        Complex prev = piece.at(0.0) - z0;
        for (int m = 1; m <= chords_per_piece; ++m) {
            Complex cur = piece.at(static_cast<double>(m) / chords_per_piece) - z0;
            total += std::arg(cur / prev);
            prev = cur;
        }
    }
    return total / (2.0 * std::numbers::pi);
}

// distance from z0 to a segment [a,b]
inline double segment_distance(Complex a, Complex b, Complex z0) {
    Complex ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z0 - a);
    double t = std::clamp(((z0 - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(z0 - (a + t * ab));
}

inline double min_distance(const LoopPath& loop, Complex z0, int samples_per_piece = 32) {
    double m = 1e300;
    for (const auto& piece : loop.pieces) {
        if (piece.kind == PathPiece::Kind::Segment) {
            m = std::min(m, segment_distance(piece.a, piece.b, z0));
        } else {
            double d_center = std::abs(z0 - piece.center);
            if (std::abs(piece.ang1 - piece.ang0) >= 2.0 * std::numbers::pi - 1e-12) {
                m = std::min(m, std::abs(d_center - piece.radius));
            } else {
                Complex prev = piece.at(0.0);
                for (int s = 1; s <= samples_per_piece; ++s) {
                    Complex cur = piece.at(static_cast<double>(s) / samples_per_piece);
                    m = std::min(m, segment_distance(prev, cur, z0));
                    prev = cur;
                }
            }
        }
    }
    return m;
}

} // namespace pvirh
