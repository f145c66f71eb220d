#include "dfill/slope.hpp"

#include "dfill/errors.hpp"

#include <cctype>
#include <utility>

namespace dfill {

Integer gcd(const Integer& a, const Integer& b) {
    Integer x = abs(a);
    Integer y = abs(b);
    while (y != 0) {
        Integer r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

Slope::Slope(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_ == 0 && den_ == 0)
        throw PreconditionError("slope 0/0 is undefined");
    Integer g = gcd(num_, den_);
    num_ /= g;
    den_ /= g;
    if (den_ < 0 || (den_ == 0 && num_ < 0)) {
        num_ = -num_;
        den_ = -den_;
    }
}

std::string Slope::to_string() const {
    if (den_ == 0)
        return "inf";
    if (den_ == 1)
        return num_.str();
    return num_.str() + "/" + den_.str();
}

bool slope_less(const Slope& a, const Slope& b) {
    return a.num() * b.den() < b.num() * a.den();
}

Integer distance(const Slope& x, const Slope& y) {
    return abs(x.num() * y.den() - x.den() * y.num());
}

Slope section_f(const Integer& p, const Slope& x) {
    if (p <= 0)
        throw PreconditionError("section_f requires p > 0");
    return Slope(p * x.den(), x.num());
}

namespace {

Integer parse_integer(std::string_view text, std::size_t offset) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+'))
        ++i;
    if (i == text.size())
        throw ParseError("expected digits", offset + i);
    for (std::size_t j = i; j < text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(text[j])))
            throw ParseError(std::string("unexpected character '") + text[j] + "'", offset + j);
    }
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return Integer(digits);
}

}  // namespace

ParsedSlope parse_slope(std::string_view text) {
    if (text.empty())
        throw ParseError("empty slope", 0);
    if (text == "inf" || text == "oo" || text == "infinity")
        return {Slope::infinity(), false};

    auto slash = text.find('/');
    Integer num;
    Integer den = 1;
    if (slash == std::string_view::npos) {
        num = parse_integer(text, 0);
    } else {
        if (text.find('/', slash + 1) != std::string_view::npos)
            throw ParseError("second '/'", text.find('/', slash + 1));
        num = parse_integer(text.substr(0, slash), 0);
        den = parse_integer(text.substr(slash + 1), slash + 1);
    }
    if (num == 0 && den == 0)
        throw ParseError("0/0 is not a slope", slash);
    Slope s(num, den);
    bool reduced = s.num() != num || s.den() != den;
    return {s, reduced};
}

BasisChange BasisChange::make(Integer a, Integer b, Integer c, Integer d) {
    BasisChange m{std::move(a), std::move(b), std::move(c), std::move(d)};
    if (m.determinant() != 1)
        throw PreconditionError("basis change must have determinant +1");
    return m;
}

Slope BasisChange::apply(const Slope& s) const {
    return Slope(a * s.num() + b * s.den(), c * s.num() + d * s.den());
}

Slope apply_basis_change(const BasisChange& m, const Slope& s) {
    return m.apply(s);
}

bool cyclically_between(const Slope& a, const Slope& b, const Slope& c) {
    if (a == b || b == c || a == c)
        return false;
    bool ab = slope_less(a, b);
    bool bc = slope_less(b, c);
    bool ca = slope_less(c, a);
    // Exactly the three rotations of a < b < c.
    return (ab && bc) || (bc && ca) || (ca && ab);
}

SlopeInterval::SlopeInterval(Slope end_a, Slope end_b, Slope excluded)
    : end_a_(std::move(end_a)), end_b_(std::move(end_b)), excluded_(std::move(excluded)) {
    if (end_a_ == end_b_)
        throw PreconditionError("interval endpoints coincide");
    if (excluded_ == end_a_ || excluded_ == end_b_)
        throw PreconditionError("excluded witness is an endpoint");
}

bool SlopeInterval::contains(const Slope& s) const {
    if (is_endpoint(s))
        return false;
    return cyclically_between(end_a_, s, end_b_) != cyclically_between(end_a_, excluded_, end_b_);
}

Slope SlopeInterval::interior_point() const {
    Slope sum(end_a_.num() + end_b_.num(), end_a_.den() + end_b_.den());
    if (contains(sum))
        return sum;
    return Slope(end_a_.num() - end_b_.num(), end_a_.den() - end_b_.den());
}

SlopeInterval SlopeInterval::complement() const {
    return SlopeInterval(end_a_, end_b_, interior_point());
}

SlopeInterval SlopeInterval::mirrored() const {
    return SlopeInterval(end_a_.negated(), end_b_.negated(), excluded_.negated());
}

bool SlopeInterval::same_arc(const SlopeInterval& other) const {
    bool ends = (end_a_ == other.end_a_ && end_b_ == other.end_b_) ||
                (end_a_ == other.end_b_ && end_b_ == other.end_a_);
    return ends && !other.contains(excluded_) && !contains(other.excluded_);
}

bool interval_contains(const SlopeInterval& interval, const Slope& s) {
    return interval.contains(s);
}

MeridianChoice canonical_meridian(const Slope& delta) {
    Integer u = delta.num();
    Integer v = delta.den();
    if (u == 0)
        throw PreconditionError("degeneracy slope equals longitude");
    if (u < 0) {
        u = -u;
        v = -v;
    }
    // new v' = v - k u, chosen in (-u/2, u/2]; floor division keeps the tie positive.
    Integer k = v / u;
    Integer r = v - k * u;
    if (r < 0) {
        r += u;
        k -= 1;
    }
    // r in [0, u)
    if (2 * r > u) {
        r -= u;
        k += 1;
    }
    return {k, Slope(u, r)};
}

std::size_t SlopeHash::operator()(const Slope& s) const {
    std::size_t h1 = std::hash<std::string>{}(s.num().str());
    std::size_t h2 = std::hash<std::string>{}(s.den().str());
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

}  // namespace dfill
