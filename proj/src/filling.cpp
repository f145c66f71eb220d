#include "dfill/filling.hpp"

#include "dfill/errors.hpp"

#include <algorithm>

namespace dfill {

SlopeInterval interval_J(const DegeneracyLocus& locus, long long c) {
    if (c < 1)
        throw PreconditionError("orbit length c must be positive");
    Integer p(locus.p());
    Integer q(locus.q());
    return SlopeInterval(Slope(p, q + c), Slope(p, q - c), Slope(p, q));
}

ClosedArc set_E(const DegeneracyLocus& locus) {
    Integer p(locus.p());
    Integer q(locus.q());
    return ClosedArc{SlopeInterval(section_f(p, Slope(q - 1, Integer(1))),
                                   section_f(p, Slope(q + 1, Integer(1))),
                                   section_f(p, Slope(q, Integer(1))))
                         .complement()};
}

FriedCheck check_fried(const DegeneracyLocus& locus, const Slope& s) {
    FriedCheck r;
    r.dist = locus_distance(locus, s);
    r.fried_ok = r.dist >= 2;
    r.prong_count = r.dist;
    r.special_no_singular = r.dist == 2;
    return r;
}

std::string to_string(Guarantee g) {
    switch (g) {
    case Guarantee::CTF: return "CTF";
    case Guarantee::LO: return "LO";
    case Guarantee::NonLSpace: return "NonLSpace";
    case Guarantee::RCoveredExists: return "RCoveredExists";
    case Guarantee::AtMostOneSidedBranching: return "AtMostOneSidedBranching";
    }
    return "?";
}

std::string citation(Guarantee g, Coorientation parity) {
    if (parity == Coorientation::Preserving) {
        switch (g) {
        case Guarantee::CTF:
            return "Gabai 1992: co-orientable taut foliation for every filling slope other than the degeneracy slope";
        case Guarantee::NonLSpace:
            return "Ozsvath-Szabo 2004: a co-orientable taut foliation rules out an L-space";
        case Guarantee::LO:
            return "Zung 2024: left-orderable when filling slopes share a sign in the (delta, 0/1) basis";
        default:
            return "not available for co-orientation preserving monodromy";
        }
    }
    switch (g) {
    case Guarantee::CTF:
        return "taut foliation carried by the admissible-arc branched surface for slopes in J";
    case Guarantee::NonLSpace:
        return "Ozsvath-Szabo 2004 applied to the taut foliation for slopes in J";
    case Guarantee::LO:
        return "pi_1 acts faithfully on the leaf space (R-covered) or on germs at infinity (one-sided branching)";
    case Guarantee::RCoveredExists:
        return "refined arc system transverse to both invariant foliations gives an R-covered foliation";
    case Guarantee::AtMostOneSidedBranching:
        return "every admissible arc system gives a foliation that is R-covered or has one-sided branching";
    }
    return "?";
}

int sign_in_delta_basis(const Slope& delta, const Slope& s) {
    Integer u = delta.num();
    Integer v = delta.den();
    if (u < 0) {
        u = -u;
        v = -v;
    }
    // s = (a, b) = x (u, v) + y (0, 1) with x = a/u, y = (u b - v a)/u.
    const Integer& a = s.num();
    Integer y = u * s.den() - v * a;
    int sa = a > 0 ? 1 : (a < 0 ? -1 : 0);
    int sy = y > 0 ? 1 : (y < 0 ? -1 : 0);
    return sa * sy;
}

bool zung_sign_check(const std::vector<BoundaryOrbit>& orbits, const std::vector<Slope>& slopes) {
    if (orbits.size() != slopes.size())
        throw StructuralError("one slope per boundary orbit is required");
    for (const auto& orbit : orbits) {
        if (classify_coorientation(orbit.locus) != Coorientation::Preserving)
            throw PreconditionError("sign check applies only to co-orientation preserving data");
    }
    if (orbits.size() == 1)
        return true;
    int common = 0;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        int sg = sign_in_delta_basis(orbits[i].locus.degeneracy_slope(), slopes[i]);
        if (sg == 0)
            return false;
        if (common == 0)
            common = sg;
        else if (sg != common)
            return false;
    }
    return true;
}

MultislopeReport analyze_multislope(const std::vector<BoundaryOrbit>& orbits,
                                    const std::vector<Slope>& slopes) {
    if (!slopes.empty() && slopes.size() != orbits.size())
        throw StructuralError("got " + std::to_string(slopes.size()) + " slopes for " +
                              std::to_string(orbits.size()) + " boundary orbits");

    MultislopeReport report;
    bool any_reversing = false;
    bool any_preserving = false;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        const auto& orbit = orbits[i];
        FillingReport t{orbit, interval_J(orbit.locus, orbit.c), {}, false, 0, false, 0, false, false,
                        Coorientation::Reversing, {}, {}};
        t.parity = classify_coorientation(orbit.locus);
        (t.parity == Coorientation::Reversing ? any_reversing : any_preserving) = true;
        if (!slopes.empty()) {
            const Slope& s = slopes[i];
            t.slope = s;
            t.in_J = t.J.contains(s);
            t.at_J_endpoint = t.J.is_endpoint(s);
            FriedCheck f = check_fried(orbit.locus, s);
            t.dist_to_locus = f.dist;
            t.fried_ok = f.fried_ok;
            t.prong_count = f.prong_count;
            t.special_no_singular = f.special_no_singular;
            if (t.parity == Coorientation::Reversing && !t.in_J)
                t.notes.push_back("slope outside J");
            if (t.at_J_endpoint)
                t.notes.push_back("slope is an endpoint of J; J is open, endpoint attainable only per cited prior work");
            if (t.parity == Coorientation::Preserving && s == orbit.locus.degeneracy_slope())
                t.notes.push_back("slope equals the degeneracy slope");
        }
        report.tori.push_back(std::move(t));
    }
    for (const auto& note : orbit_notes(orbits))
        report.notes.push_back(note);

    if (slopes.empty()) {
        report.notes.push_back("no filling slopes given");
        return report;
    }
    if (any_reversing && any_preserving) {
        report.notes.push_back("mixed co-orientation parity across boundary tori; no theorem applies");
        return report;
    }

    if (any_reversing) {
        bool all_in = std::all_of(report.tori.begin(), report.tori.end(),
                                  [](const FillingReport& t) { return t.in_J; });
        report.verdict = all_in;
        if (all_in) {
            report.guarantees = {Guarantee::CTF, Guarantee::NonLSpace, Guarantee::LO,
                                 Guarantee::RCoveredExists, Guarantee::AtMostOneSidedBranching};
        } else {
            report.notes.push_back("some filling slope lies outside J; no guarantee");
        }
    } else {
        report.notes.push_back("co-orientation preserving monodromy: outside the reversing-case theorem");
        bool all_off_delta = true;
        for (std::size_t i = 0; i < orbits.size(); ++i)
            all_off_delta = all_off_delta && slopes[i] != orbits[i].locus.degeneracy_slope();
        report.verdict = all_off_delta;
        if (all_off_delta) {
            report.guarantees = {Guarantee::CTF, Guarantee::NonLSpace};
            if (zung_sign_check(orbits, slopes))
                report.guarantees.push_back(Guarantee::LO);
            else
                report.notes.push_back("filling slopes do not share a sign in the (delta, 0/1) basis; LO not guaranteed");
        } else {
            report.notes.push_back("a filling slope equals its degeneracy slope; no guarantee");
        }
    }
    for (auto& t : report.tori)
        t.guarantees = report.guarantees;
    return report;
}

}  // namespace dfill
