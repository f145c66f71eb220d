#pragma once

/*
 * Slopes on a torus as points of the rational projective line Q u {oo}.
 *
 * A slope is stored as a coprime integer pair (num, den) with den >= 0;
 * the point at infinity is the single pair (1, 0).  With this
 * representative, the order  a < b  <=>  a.num * b.den < b.num * a.den
 * is the usual order on Q with oo placed above every finite slope, and
 * cyclic order on RP^1 is read off from it.  Nothing here touches
 * floating point.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace dfill {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Integer gcd(const Integer& a, const Integer& b);

class Slope {
public:
    // Normalizes (num, den); throws PreconditionError on (0, 0).
    Slope(Integer num, Integer den);
    explicit Slope(long long integer) : Slope(Integer(integer), Integer(1)) {}

    static Slope infinity() { return Slope(1, 0); }
    static Slope zero() { return Slope(0, 1); }

    const Integer& num() const noexcept { return num_; }
    const Integer& den() const noexcept { return den_; }
    bool is_infinite() const noexcept { return den_ == 0; }

    Slope negated() const { return Slope(-num_, den_); }

    // "a/b", "a" when b == 1, "inf" for the point at infinity.
    std::string to_string() const;

    friend bool operator==(const Slope&, const Slope&) = default;

private:
    Integer num_;
    Integer den_;
};

// Linear order on the representatives: finite slopes by value, oo last.
bool slope_less(const Slope& a, const Slope& b);

// |x.num * y.den - x.den * y.num|, the minimal geometric intersection number.
Integer distance(const Slope& x, const Slope& y);

// p / x on RP^1.
Slope section_f(const Integer& p, const Slope& x);

struct ParsedSlope {
    Slope slope;
    bool was_reduced = false;  // input pair was not coprime or had den < 0
};

// Accepts "a/b", "a", "inf".  Throws ParseError carrying the offending position.
ParsedSlope parse_slope(std::string_view text);

// Orientation-preserving integer matrix [[a, b], [c, d]] acting on (num, den).
// Column one is the image of the meridian 1/0, column two that of the longitude 0/1.
struct BasisChange {
    Integer a = 1, b = 0, c = 0, d = 1;

    // Throws PreconditionError unless a*d - b*c == 1.
    static BasisChange make(Integer a, Integer b, Integer c, Integer d);
    Integer determinant() const { return a * d - b * c; }
    Slope apply(const Slope& s) const;
};

Slope apply_basis_change(const BasisChange& m, const Slope& s);

// Open arc of RP^1 between end_a and end_b that avoids `excluded`.
class SlopeInterval {
public:
    SlopeInterval(Slope end_a, Slope end_b, Slope excluded);

    const Slope& end_a() const noexcept { return end_a_; }
    const Slope& end_b() const noexcept { return end_b_; }
    const Slope& excluded() const noexcept { return excluded_; }

    bool contains(const Slope& s) const;
    bool is_endpoint(const Slope& s) const { return s == end_a_ || s == end_b_; }

    // Some slope strictly inside the arc.
    Slope interior_point() const;

    // The other open arc with the same endpoints.
    SlopeInterval complement() const;

    // Image under s -> -s.
    SlopeInterval mirrored() const;

    // Same open arc (endpoint order and witness may differ).
    bool same_arc(const SlopeInterval& other) const;

private:
    Slope end_a_;
    Slope end_b_;
    Slope excluded_;
};

bool interval_contains(const SlopeInterval& interval, const Slope& s);

// Closed arc: the open arc `interior` together with its two endpoints.
struct ClosedArc {
    SlopeInterval interior;
    bool contains(const Slope& s) const { return interior.is_endpoint(s) || interior.contains(s); }
};

struct MeridianChoice {
    Integer k;        // new meridian is mu0 + k * lambda
    Slope new_delta;  // delta rewritten in (mu0 + k * lambda, lambda)
};

// Meridian minimizing the distance to delta among slopes at distance one from
// the longitude 0/1; the two-way tie at distance(lambda, delta) == 2 is
// resolved so that delta becomes 2/1.
MeridianChoice canonical_meridian(const Slope& delta);

// True when a, b, c are distinct and b is met strictly between a and c when
// RP^1 is traversed in increasing order from a.
bool cyclically_between(const Slope& a, const Slope& b, const Slope& c);

struct SlopeHash {
    std::size_t operator()(const Slope& s) const;
};

}  // namespace dfill
