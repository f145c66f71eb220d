#pragma once

/*
 * Oriented train tracks on a torus.
 *
 * Every switch has one branch end on its one-branch side and two on its
 * two-branch side.  Branches carry an orientation (tail -> head) and an
 * integer homology class (a, b) = a mu + b lambda, so a weight vector w
 * satisfying the switch conditions carries the class sum_b w_b (a_b, b_b),
 * whose slope is a/b.  A branch attached to no switch is a closed loop.
 */

#include "dfill/monodromy.hpp"
#include "dfill/slope.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dfill {

enum class BranchEnd { Tail, Head };

struct EndRef {
    std::size_t branch = 0;
    BranchEnd end = BranchEnd::Tail;

    friend bool operator==(const EndRef&, const EndRef&) = default;
};

struct TrackSwitch {
    std::string id;
    EndRef one;
    std::array<EndRef, 2> two;
    // Built tracks only: side of the switch (+1 / -1 along the circle) holding
    // the cusp between the two branches of the two-branch side; 0 when unset.
    int cusp_sign = 0;
    std::string role;  // e.g. "lower:S", "upper:E"; informational
};

struct TrackBranch {
    std::string id;
    Integer a = 0;  // meridian coefficient
    Integer b = 0;  // longitude coefficient
    std::string kind;  // e.g. "arc", "rung"; informational
};

struct TorusTrainTrack {
    std::vector<TrackSwitch> switches;
    std::vector<TrackBranch> branches;
};

// Throws StructuralError on dangling or repeated attachments, a branch with
// exactly one attached end, an inconsistently oriented switch, or a
// disconnected graph.  The empty track is valid.
void validate_track(const TorusTrainTrack& track);

// One row per switch: +1 on the one-branch end, -1 on each two-branch end.
std::vector<std::vector<Integer>> switch_matrix(const TorusTrainTrack& track);

// Rank over Q of an integer matrix.
std::size_t matrix_rank(std::vector<std::vector<Integer>> rows, std::size_t columns);

using WeightVector = std::vector<Integer>;

struct WeightCone {
    std::vector<WeightVector> rays;  // primitive integer extreme rays, sorted
    std::size_t kernel_dim = 0;      // #branches - rank(switch matrix)
    bool carries_nothing() const { return rays.empty(); }
};

// Extreme rays of {w >= 0 : switch conditions} by exact double description.
WeightCone weight_cone(const TorusTrainTrack& track);

// (sum w_b a_b, sum w_b b_b)
std::pair<Integer, Integer> carried_class(const TorusTrainTrack& track, const WeightVector& w);

struct CarriedSlopes {
    enum class Kind { Empty, Single, Arc, All };
    Kind kind = Kind::Empty;
    std::optional<Slope> single;
    std::optional<SlopeInterval> arc;  // open interior when kind == Arc
    bool end_a_attained = false;
    bool end_b_attained = false;

    // Closed-arc membership (attained endpoints included).
    bool contains(const Slope& s) const;
    std::string to_string() const;
};

std::string to_string(CarriedSlopes::Kind kind);

// Projectivized image of the weight cone under the class map.
CarriedSlopes carried_slopes(const TorusTrainTrack& track);
CarriedSlopes carried_slopes(const TorusTrainTrack& track, const WeightCone& cone);

struct IntegralClass {
    Integer a;
    Integer b;
    WeightVector weights;
};

// Every nonzero integral weight vector with entries <= weight_bound that
// satisfies the switch conditions, in lexicographic order of weights.
// Throws PreconditionError when weight_bound is outside [0, 12], or when more
// than max_results solutions exist.
std::vector<IntegralClass> integral_carried_classes(const TorusTrainTrack& track, long long weight_bound,
                                                    std::size_t max_results = 5'000'000);

// Number of solutions integral_carried_classes would return, without storing them.
std::size_t count_integral_carried(const TorusTrainTrack& track, long long weight_bound);

// Rung placement for build_boundary_track.  Level j holds p rungs running
// from level j to level j+1 (level c is level 0 again).  Positions are in the
// circle coordinate R/pZ of the level they sit on; cusp signs give the side
// (+1 / -1 along the circle) of the cusp wedge at each rung end.
struct RungSpec {
    Rational lower;
    Rational upper;
    int lower_cusp = -1;
    int upper_cusp = +1;
    char endpoint = 'S';  // 'S' start or 'E' end of the arc through this slot
};

struct EndpointConfig {
    std::string name;
    std::vector<std::vector<RungSpec>> levels;
};

// Lower endpoints at slot + 1/4, upper endpoints at the image + 1/8.  Slots
// alternate start/end along each circle and the level map sends start slots
// to end slots.  Cusp sides follow the arc: a start endpoint has its lower
// cusp at -1 and its upper cusp at +1, an end endpoint the reverse.
// Throws PreconditionError when q + c is odd (no alternating assignment
// closes up around the orbit).
EndpointConfig default_config(const DegeneracyLocus& locus, long long c);

// Same positions, every rung with lower cusp -1 and upper cusp +1.
EndpointConfig uniform_config(const DegeneracyLocus& locus, long long c);

// Reflection x -> -x of positions and cusp sides (pairs with q -> -q).
EndpointConfig mirrored_config(const EndpointConfig& config, long long p);

// "default" or "uniform".
EndpointConfig named_config(const std::string& name, const DegeneracyLocus& locus, long long c);

// Boundary train track on the filling torus: c longitudinal circles joined by
// p rungs per level, the level c-1 -> 0 step carrying the orbit shift q.
// Throws PreconditionError on co-orientation preserving loci and
// StructuralError on a malformed config.
TorusTrainTrack build_boundary_track(const DegeneracyLocus& locus, long long c, const EndpointConfig& config);

}  // namespace dfill
