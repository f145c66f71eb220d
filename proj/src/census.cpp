#include "dfill/census.hpp"

#include "dfill/errors.hpp"
#include "dfill/filling.hpp"

namespace dfill {

namespace {

Slope S(long long a, long long b = 1) { return Slope(Integer(a), Integer(b)); }

// (-inf, x) or (-inf, x]
PrintedInterval below(long long x, bool closed) {
    PrintedInterval r{SlopeInterval(S(x), Slope::infinity(), S(x + 1)), closed, false, ""};
    r.text = "(-inf," + std::to_string(x) + (closed ? "]" : ")");
    return r;
}

// (x, +inf)
PrintedInterval above(long long x) {
    PrintedInterval r{SlopeInterval(S(x), Slope::infinity(), S(x - 1)), false, false, ""};
    r.text = "(" + std::to_string(x) + ",+inf)";
    return r;
}

constexpr const char* kLensNote = "three distinct lens space Dehn fillings of slopes delta, inf and one of delta+1, delta-1";

CensusEntry knot_row(std::string name, long long genus, long long delta, PrintedInterval i, std::string citation,
                     std::string notes) {
    CensusEntry e{std::move(name), genus, S(delta), locus_from_slope(S(delta)), 1, std::move(i),
                  std::move(citation), std::move(notes)};
    return e;
}

std::vector<CensusEntry> build_entries() {
    std::vector<CensusEntry> rows;
    auto lens = [](const std::string& n, long long g, long long d, const std::string& i) {
        return "g(" + n + ") = " + std::to_string(g) + ", delta(" + n + ") = " + std::to_string(d) + ", " + i +
               " n Q = I_nls(" + n + ") c I_lo(" + n + ")";
    };
    rows.push_back(knot_row("m122", 2, 4, below(2, false), lens("m122", 2, 4, "(-inf,2)"), kLensNote));
    rows.push_back(knot_row("m280", 2, -4, above(-2), lens("m280", 2, -4, "(-2,+inf)"), kLensNote));
    rows.push_back(knot_row("v0751", 3, -6, above(-3), lens("v0751", 3, -6, "(-3,+inf)"), kLensNote));
    rows.push_back(knot_row("v0173", 4, 10, below(5, false), lens("v0173", 4, 10, "(-inf,5)"), kLensNote));
    rows.push_back(knot_row("o9_00008", 5, 12, below(6, false), lens("o9_00008", 5, 12, "(-inf,6)"), kLensNote));
    for (long long g = 3; g <= 9; ++g)
        rows.push_back(rp3_family_row(g));

    CensusEntry o9{"o9_26541",
                   3,
                   S(-8, 3),
                   locus_from_slope(S(-8, 3)),
                   1,
                   PrintedInterval{SlopeInterval(S(-4), S(-2), S(-3)), true, true, "(Q u {inf}) - (-4,-2)"},
                   "(Q u {inf}) - (-4,-2) = I_nls(o9_26541) c I_lo(o9_26541)",
                   "complement of an L-space knot in a lens space of order 87, genus 3, lens space filling slope 3; "
                   "c = 1 inferred from the knot-complement description"};
    rows.push_back(o9);

    rows.push_back(knot_row("o9_19364", 14, 48, below(24, true),
                            "establishes only (-inf,24] n Q; I_nls(o9_19364) = (-inf,27) n Q",
                            "L-space knot in S^3; the printed interval is the foliation bound, not I_nls, and "
                            "(24,27) is left open"));

    CensusEntry m003{"m003",
                     1,
                     S(2),
                     DegeneracyLocus(2, 1),
                     1,
                     below(1, true),
                     "I_nls(m003) = (-inf,1] n Q",
                     "genus one fiber with one boundary component and positive degeneracy slope; (2;1) locus"};
    rows.push_back(m003);
    return rows;
}

}  // namespace

std::string to_string(MatchStatus s) {
    switch (s) {
    case MatchStatus::ExactMatch: return "ExactMatch";
    case MatchStatus::ClosureNote: return "ClosureNote";
    case MatchStatus::Mismatch: return "Mismatch";
    }
    return "?";
}

CensusEntry rp3_family_row(long long g) {
    static const char* names[] = {"m146", "v2585", "m303", "s520", "v1206", "t02779", "o9_06362"};
    if (g < 3 || g > 9)
        throw PreconditionError("RP^3 family genus must lie in [3, 9], got " + std::to_string(g));
    long long delta = 4 * g - 2;
    std::string name = names[g - 3];
    return knot_row(name, g, delta, below(2 * g - 1, false),
                    "g = " + std::to_string(g) + ", delta = 4g-2 = " + std::to_string(delta) +
                        ", I_nls = (-inf,2g-1) n Q",
                    "complement of an L-space knot in RP^3, up to orientation");
}

const std::vector<CensusEntry>& census_entries() {
    static const std::vector<CensusEntry> rows = build_entries();
    return rows;
}

const CensusEntry& census_entry(const std::string& name) {
    for (const auto& e : census_entries()) {
        if (e.name == name)
            return e;
    }
    throw PreconditionError("no census entry named '" + name + "'");
}

VerificationRecord verify_entry(const CensusEntry& e) {
    SlopeInterval j = interval_J(e.locus, e.c);
    VerificationRecord r{e.name, j, MatchStatus::Mismatch, "", e.citation};
    if (!j.same_arc(e.i_nls.arc)) {
        r.detail = "closure of J differs from the printed interval " + e.i_nls.text;
        return r;
    }
    std::vector<std::string> closed;
    if (e.i_nls.end_a_included)
        closed.push_back(e.i_nls.arc.end_a().to_string());
    if (e.i_nls.end_b_included)
        closed.push_back(e.i_nls.arc.end_b().to_string());
    if (closed.empty()) {
        r.status = MatchStatus::ExactMatch;
        r.detail = "J equals the printed interval";
    } else {
        r.status = MatchStatus::ClosureNote;
        r.detail = "J is open at";
        for (const auto& s : closed)
            r.detail += " " + s;
        r.detail += "; printed interval closed there";
    }
    return r;
}

std::vector<VerificationRecord> census_verify() {
    std::vector<VerificationRecord> out;
    for (const auto& e : census_entries())
        out.push_back(verify_entry(e));
    return out;
}

const std::vector<SymbolicRow>& symbolic_rows() {
    static const std::vector<SymbolicRow> rows{
        {"(-2,3,2m+1) pretzel knot, m >= 3", "(-inf,2g(K)-1)",
         "I_nls(S^3-K) = I_lo(S^3-K) = I_ctf(S^3-K) = (-inf, 2g(K)-1) n Q"},
    };
    return rows;
}

}  // namespace dfill
