#pragma once

// Guaranteed filling-slope intervals, Fried-surgery admissibility and the
// per-multislope guarantee report.

#include "dfill/monodromy.hpp"
#include "dfill/slope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dfill {

// Open arc between p/(q+c) and p/(q-c) not containing p/q.
SlopeInterval interval_J(const DegeneracyLocus& locus, long long c);

// Closed arc f([q-1, q+1]) for f(x) = p/x; its interior contains p/q.
ClosedArc set_E(const DegeneracyLocus& locus);

struct FriedCheck {
    Integer dist;
    bool fried_ok = false;
    Integer prong_count;
    bool special_no_singular = false;
};

FriedCheck check_fried(const DegeneracyLocus& locus, const Slope& s);

enum class Guarantee { CTF, LO, NonLSpace, RCoveredExists, AtMostOneSidedBranching };

std::string to_string(Guarantee g);
// Short statement of what the label rests on.
std::string citation(Guarantee g, Coorientation parity);

struct FillingReport {
    BoundaryOrbit orbit;
    SlopeInterval J;
    std::optional<Slope> slope;
    bool in_J = false;
    Integer dist_to_locus;
    bool fried_ok = false;
    Integer prong_count;
    bool special_no_singular = false;
    bool at_J_endpoint = false;  // closed endpoint only via results outside J
    Coorientation parity = Coorientation::Reversing;
    std::vector<Guarantee> guarantees;
    std::vector<std::string> notes;
};

struct MultislopeReport {
    std::vector<FillingReport> tori;
    bool verdict = false;
    std::vector<Guarantee> guarantees;
    std::vector<std::string> notes;
};

// Requires all orbits co-orientation preserving; compares the signs of the
// slopes written in the ordered basis (delta, 0/1).
bool zung_sign_check(const std::vector<BoundaryOrbit>& orbits, const std::vector<Slope>& slopes);

// Sign (-1, 0, +1) of s in coordinates where delta and 0/1 form an ordered basis.
int sign_in_delta_basis(const Slope& delta, const Slope& s);

MultislopeReport analyze_multislope(const std::vector<BoundaryOrbit>& orbits,
                                    const std::vector<Slope>& slopes);

}  // namespace dfill
