#pragma once

/*
 * Finite ladders: truncated models of the train track that a leaf of the
 * lifted weak-stable foliation cuts out of the lifted branched surface.
 * Level k is a copy of the real line (the trace rho_k of the fiber at height
 * k); rungs join level k to level k+1.  Positions are along the common x axis
 * of all levels, cusp directions are +1 (toward +x) or -1.
 */

#include "dfill/slope.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dfill {

struct LadderRung {
    long long level = 0;  // joins level and level + 1
    Rational lower;
    Rational upper;
    int lower_cusp = +1;
    int upper_cusp = -1;
};

struct LadderTrack {
    long long k_min = 0;
    long long k_max = 0;
    std::vector<LadderRung> rungs;

    long long level_count() const { return k_max - k_min + 1; }
};

// Chosen orientation of rho_k, transverse to the unstable foliation.  The
// monodromy reverses co-orientation, so consecutive levels disagree.
inline int line_orientation(long long k) { return k % 2 == 0 ? +1 : -1; }

// Throws StructuralError on an empty level range, a rung outside it, two rung
// ends at one position of a level, crossing rungs in a band, or a cusp other
// than +1 / -1.
void validate_ladder(const LadderTrack& track);

// Every cusp agrees with the chosen orientation of its level.
bool is_leaf_type(const LadderTrack& track);

struct OrientedLadder {
    LadderTrack track;
    std::vector<int> line_dir;  // per level from k_min; +1 runs toward +x
    std::vector<bool> rung_up;  // per rung
};

struct SwitchConflict {
    long long level;
    Rational position;
};

// First switch where the orientation does not pass smoothly from the incoming
// side to the outgoing side, if any.
std::optional<SwitchConflict> orientation_conflict(const LadderTrack& track, const std::vector<int>& line_dir,
                                                   const std::vector<bool>& rung_up);

// Lines follow the continuous orientation of the family of levels (chosen
// orientation on even levels, reversed on odd ones).  A rung from level k
// runs up when k is odd and down when k is even.  Throws StructuralError when
// the cusps do not fit ("not a tau_l-type track").
OrientedLadder orient_ladder(const LadderTrack& track);

struct PathStep {
    bool rung = false;
    long long level = 0;    // line level, or the lower level of the rung
    std::size_t index = 0;  // segment index on the level, or rung index
    bool forward = true;    // toward +x on a line, upward on a rung

    friend bool operator==(const PathStep&, const PathStep&) = default;
    friend auto operator<=>(const PathStep&, const PathStep&) = default;
};

struct CarriedPath {
    std::vector<PathStep> steps;
    bool truncated = false;  // stopped by the step bound

    // Levels of the line segments visited, without repeats, in order.
    std::vector<long long> lines() const;
};

// Segment i of a level lies between its (i-1)-th and i-th switch; segment 0
// and the last segment run off to the truncated ends.

// Maximal directed paths from line ends, depth first, continuing along the
// line before taking a rung.  Throws PreconditionError when step_bound is
// outside [1, 10^4].
std::vector<CarriedPath> enumerate_carried_paths(const OrientedLadder& ladder, long long step_bound);

// Maximal smooth paths of the unoriented track, starting at either end of
// every level.  Used for ladders that cannot be oriented.
std::vector<CarriedPath> enumerate_smooth_paths(const LadderTrack& track, long long step_bound);

// A smooth path from a line end meeting three levels, if one exists (it may
// run over a branch more than once).
std::optional<CarriedPath> smooth_path_over_two_lines(const LadderTrack& track);

// Reason the path breaks the two-line discipline: more than one even or odd
// level, leaving an even level once on it, or reaching an odd level after
// being elsewhere.
std::optional<std::string> two_line_violation(const CarriedPath& path);

struct TwoLineResult {
    bool ok = true;
    std::size_t paths = 0;
    std::optional<CarriedPath> witness;
    std::string reason;
};

TwoLineResult check_two_line_property(const OrientedLadder& ladder, long long step_bound = 10000);

// Whether removing the path from the strip separates levels below j-1 from
// levels above j+1, for every level j the path meets.  Vacuously true when
// one side is empty.  Throws PreconditionError when the path meets no level.
bool separation_check(const LadderTrack& track, const CarriedPath& path);

// Random ladder with 1..max_levels levels starting at a level in [-4, 4],
// 0..max_rungs non-crossing rungs per band, positions in (1/4)Z.  Leaf-type
// ladders take cusps from the level orientations; otherwise cusps are random.
LadderTrack random_ladder(std::mt19937_64& rng, long long max_levels, long long max_rungs, bool leaf_type = true);

struct LadderSummary {
    long long cases = 0;
    long long max_levels = 0;
    long long max_rungs = 0;
    std::uint64_t seed = 0;
    std::size_t total_paths = 0;
    std::size_t max_paths = 0;
    std::size_t truncated_paths = 0;
    std::size_t violations = 0;
    std::size_t separation_checks = 0;
    std::size_t separation_failures = 0;
    std::size_t alternative_orientation_accepted = 0;  // should stay 0
    std::optional<long long> first_violation_case;
    // negative control: same sizes with random cusps; ladders admitting a
    // smooth path that meets three levels
    std::size_t control_over_two_lines = 0;

    bool ok() const {
        return violations == 0 && separation_failures == 0 && alternative_orientation_accepted == 0;
    }
};

// Case i uses a generator seeded with seed + i.
LadderSummary verify_ladders(long long max_levels, long long max_rungs, long long cases, std::uint64_t seed);

}  // namespace dfill
