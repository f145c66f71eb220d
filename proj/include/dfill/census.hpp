#pragma once

// Worked examples of cusped manifolds: printed non-L-space filling intervals
// checked against the guaranteed interval J of their boundary locus.

#include "dfill/monodromy.hpp"
#include "dfill/slope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dfill {

// An interval of slopes as printed: an arc of RP^1 plus which of its ends
// belong to it.
struct PrintedInterval {
    SlopeInterval arc;
    bool end_a_included = false;
    bool end_b_included = false;
    std::string text;  // e.g. "(-inf,2)"
};

struct CensusEntry {
    std::string name;
    std::optional<long long> genus;
    Slope degeneracy_slope;
    DegeneracyLocus locus;
    long long c = 1;
    PrintedInterval i_nls;
    std::string citation;
    std::string notes;
};

enum class MatchStatus { ExactMatch, ClosureNote, Mismatch };

std::string to_string(MatchStatus s);

struct VerificationRecord {
    std::string name;
    SlopeInterval computed_J;
    MatchStatus status;
    std::string detail;
    std::string citation;
};

// The complements of L-space knots in RP^3 of genus g: locus (4g-2; 1).
// Throws PreconditionError unless 3 <= g <= 9.
CensusEntry rp3_family_row(long long g);

// The fifteen verified rows, in a fixed order.
const std::vector<CensusEntry>& census_entries();

// Throws PreconditionError when no entry has this name.
const CensusEntry& census_entry(const std::string& name);

VerificationRecord verify_entry(const CensusEntry& e);
std::vector<VerificationRecord> census_verify();

// Rows stated only in terms of the genus, with no degeneracy slope to check
// against: the (-2, 3, 2m+1) pretzel knots, I_nls = (-inf, 2g - 1).
struct SymbolicRow {
    std::string family;
    std::string i_nls;
    std::string citation;
};

const std::vector<SymbolicRow>& symbolic_rows();

}  // namespace dfill
