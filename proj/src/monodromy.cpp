#include "dfill/monodromy.hpp"

#include "dfill/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dfill {

std::string to_string(Coorientation c) {
    return c == Coorientation::Reversing ? "Reversing" : "Preserving";
}

DegeneracyLocus::DegeneracyLocus(long long p, long long q) : p_(p), q_(q) {
    if (p_ <= 0 || p_ % 2 != 0)
        throw PreconditionError("non-co-orientable boundary data: p must be even and positive");
    if (2 * q_ > p_ || 2 * q_ <= -p_)
        throw PreconditionError("q must lie in (-p/2, p/2]");
}

long long DegeneracyLocus::multiplicity() const {
    return std::gcd(p_, q_ < 0 ? -q_ : q_);
}

Slope DegeneracyLocus::degeneracy_slope() const {
    long long n = multiplicity();
    return Slope(Integer(p_ / n), Integer(q_ / n));
}

std::string DegeneracyLocus::to_string() const {
    return "(" + std::to_string(p_) + ";" + std::to_string(q_) + ")";
}

DegeneracyLocus canonical_locus(long long p, long long shift) {
    if (p <= 0 || p % 2 != 0)
        throw PreconditionError("non-co-orientable boundary data: p must be even and positive");
    long long s = ((shift % p) + p) % p;
    long long n = std::gcd(p, s);  // gcd(p, 0) == p
    long long u = p / n;
    long long w = s / n;
    // representative of w modulo u in (-u/2, u/2]
    long long v = w % u;
    if (2 * v > u)
        v -= u;
    return DegeneracyLocus(p, n * v);
}

DegeneracyLocus locus_from_slope(const Slope& delta, long long multiplicity) {
    if (multiplicity <= 0)
        throw PreconditionError("multiplicity must be positive");
    Integer u = delta.num();
    Integer v = delta.den();
    if (u < 0) {
        u = -u;
        v = -v;
    }
    if (u == 0)
        throw PreconditionError("degeneracy slope equals longitude");
    Integer p = u * multiplicity;
    Integer q = v * multiplicity;
    return DegeneracyLocus(static_cast<long long>(p), static_cast<long long>(q));
}

Coorientation classify_coorientation(const DegeneracyLocus& locus) {
    return (locus.q() % 2 != 0) ? Coorientation::Reversing : Coorientation::Preserving;
}

Integer locus_distance(const DegeneracyLocus& locus, const Slope& s) {
    return abs(Integer(locus.p()) * s.den() - Integer(locus.q()) * s.num());
}

std::vector<RawOrbit> orbit_decomposition(const MonodromyBoundaryAction& action) {
    std::map<std::string, long long> sings;
    for (const auto& circle : action.circles) {
        if (!sings.emplace(circle.id, circle.stable_sing_count).second)
            throw StructuralError("duplicate circle id '" + circle.id + "'");
    }
    std::set<std::string> images;
    for (const auto& [from, to] : action.permutation) {
        if (!sings.count(from))
            throw StructuralError("permutation references unknown circle '" + from + "'");
        if (!sings.count(to))
            throw StructuralError("permutation references unknown circle '" + to + "'");
        if (!images.insert(to).second)
            throw StructuralError("permutation is not injective at '" + to + "'");
    }
    for (const auto& [id, count] : sings) {
        if (!action.permutation.count(id))
            throw StructuralError("permutation has no image for circle '" + id + "'");
    }

    std::vector<RawOrbit> orbits;
    std::set<std::string> seen;
    // std::map iterates ids in sorted order, so each orbit is met at its base.
    for (const auto& [id, count] : sings) {
        if (seen.count(id))
            continue;
        RawOrbit orbit;
        orbit.p = count;
        std::string cur = id;
        do {
            if (sings.at(cur) != count)
                throw StructuralError("circles in one orbit must share stable_sing_count");
            orbit.circles.push_back(cur);
            seen.insert(cur);
            cur = action.permutation.at(cur);
        } while (cur != id);
        orbit.c = static_cast<long long>(orbit.circles.size());
        auto shift = action.shifts.find(id);
        if (shift == action.shifts.end())
            throw StructuralError("no shift given for orbit based at '" + id + "'");
        orbit.shift = shift->second;
        orbits.push_back(std::move(orbit));
    }
    for (const auto& [base, shift] : action.shifts) {
        bool known = std::any_of(orbits.begin(), orbits.end(),
                                 [&](const RawOrbit& o) { return o.circles.front() == base; });
        if (!known)
            throw StructuralError("shift keyed by '" + base + "' which is not an orbit base");
    }
    return orbits;
}

std::vector<BoundaryOrbit> boundary_orbits(const MonodromyBoundaryAction& action) {
    std::vector<BoundaryOrbit> out;
    for (auto& raw : orbit_decomposition(action))
        out.push_back({raw.circles, raw.c, canonical_locus(raw.p, raw.shift)});
    return out;
}

std::vector<std::string> orbit_notes(const std::vector<BoundaryOrbit>& orbits) {
    std::vector<std::string> notes;
    for (const auto& orbit : orbits) {
        const std::string& base = orbit.circles.empty() ? std::string("?") : orbit.circles.front();
        if (orbit.c > 1) {
            notes.push_back("orbit based at " + base +
                            ": shift measured on the smallest circle id; another base choice may mirror q");
        }
        // The first-return map phi^c reverses co-orientation iff phi does and c is odd,
        // so an odd shift on an even-length orbit cannot come from co-orientable data.
        if (orbit.c % 2 == 0 && orbit.locus.q() % 2 != 0) {
            notes.push_back("orbit based at " + base + ": odd q with even orbit length c = " +
                            std::to_string(orbit.c) +
                            " is not realized by a co-orientable stable foliation");
        }
    }
    return notes;
}

EulerPoincareCheck euler_poincare_advisory(long long genus,
                                           const std::vector<long long>& interior_prongs,
                                           const std::vector<long long>& boundary_sings) {
    EulerPoincareCheck check;
    long long b = static_cast<long long>(boundary_sings.size());
    check.lhs = 2 * (2 - 2 * genus - b);
    check.rhs = 0;
    for (long long k : interior_prongs)
        check.rhs += 2 - k;
    for (long long p : boundary_sings)
        check.rhs -= p;
    check.consistent = check.lhs == check.rhs;
    check.message = std::string("advisory: 2*chi = ") + std::to_string(check.lhs) +
                    ", index sum = " + std::to_string(check.rhs) +
                    (check.consistent ? " (consistent)" : " (inconsistent)");
    return check;
}

}  // namespace dfill
