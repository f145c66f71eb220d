#pragma once

/*
 * Slot-level model of admissible arc systems on the fiber surface.
 *
 * A boundary circle with p stable singularities is R/pZ: stable
 * singularities sit at the integers, unstable ones at m + 1/2, and the open
 * segment (m, m+1) is "slot m".  The monodromy acts on the boundary as a
 * rigid rotation: circle j goes to image(j) with x -> x + shift_j.
 *
 * Only the slot-level consequences of the definition are machine-checked:
 * one endpoint per slot, endpoints off the stable singularities, endpoint
 * set disjoint from its image, and the arc count.  Transversality to the
 * invariant foliations is carried as a declared certificate.
 */

#include "dfill/monodromy.hpp"
#include "dfill/slope.hpp"

#include <map>
#include <string>
#include <vector>

namespace dfill {

Integer floor_of(const Rational& x);
// x reduced into [0, p).
Rational mod_circle(const Rational& x, long long p);
std::string rational_to_string(const Rational& x);
Rational parse_rational(const std::string& text);

struct CircleSpec {
    std::string id;
    long long p = 2;
};

struct BoundaryCoordinates {
    std::vector<CircleSpec> circles;

    const CircleSpec* find(const std::string& id) const;
    long long total_stable_sings() const;
};

struct CircleImage {
    std::string target;
    Rational shift;
};

struct MonodromyBoundaryMap {
    std::map<std::string, CircleImage> images;
};

struct ArcEndpoint {
    std::string circle;
    Rational position;

    friend bool operator==(const ArcEndpoint&, const ArcEndpoint&) = default;
};

struct CombinatorialArc {
    ArcEndpoint start;
    ArcEndpoint end;
    bool pos_transverse_Fs = false;
    bool pos_transverse_Fu = false;
};

struct AdmissibleArcSystem {
    BoundaryCoordinates coords;
    MonodromyBoundaryMap monodromy;
    std::vector<CombinatorialArc> arcs;

    std::vector<ArcEndpoint> endpoints() const;
};

// Image of a boundary point under the rigid-rotation model.
ArcEndpoint apply_monodromy(const AdmissibleArcSystem& sys, const ArcEndpoint& e);

enum class ViolationKind {
    UnknownCircle,
    MonodromyInconsistent,
    OnStableSingularity,
    EmptySlot,        // no endpoint in a slot
    CrowdedSlot,      // more than one endpoint in a slot
    ImageCollision,   // an endpoint lies on the image of an endpoint
    ArcCount,
    DegenerateArc,
};

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string circle;
    Rational position;  // endpoint position, or slot index for slot violations
    std::string detail;
};

// Empty result means the system is admissible at slot level.
std::vector<Violation> validate_system(const AdmissibleArcSystem& sys);

enum class Polarity { Beta, Gamma };

struct SlotRef {
    std::string circle;
    long long slot = 0;

    friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

using PolarityAssignment = std::map<std::string, std::vector<Polarity>>;
using SlotMatching = std::vector<std::pair<SlotRef, SlotRef>>;  // (beta, gamma)

// Beta on even slots, gamma on odd slots, on every circle.
PolarityAssignment alternating_polarity(const BoundaryCoordinates& coords);

// Beta slots paired with gamma slots in sorted order.
SlotMatching default_matching(const BoundaryCoordinates& coords, const PolarityAssignment& polarity);

inline constexpr std::size_t kMaxEnumeratedPairs = 8;

// Every bijection from beta slots to gamma slots, in lexicographic order.
// Refuses more than kMaxEnumeratedPairs beta slots (n! grows fast).
std::vector<SlotMatching> enumerate_matchings(const BoundaryCoordinates& coords,
                                              const PolarityAssignment& polarity);

// One arc per matched pair, from the beta slot (endpoint at m + 1/4) to the
// gamma slot (endpoint at m + 3/4), both certificates set.  Endpoints are
// then spread by distinct multiples of a small step so that the endpoint set
// avoids its own monodromy image.
AdmissibleArcSystem refined_matching(const BoundaryCoordinates& coords,
                                     const MonodromyBoundaryMap& monodromy,
                                     const PolarityAssignment& polarity,
                                     const SlotMatching& matching);

// Boundary coordinates and rigid-rotation map induced by a boundary action:
// inside an orbit C_0 -> C_1 -> ... -> C_{c-1} -> C_0 every step has shift 0
// except the last, which carries the orbit shift.
BoundaryCoordinates coordinates_from_action(const MonodromyBoundaryAction& action);
MonodromyBoundaryMap boundary_map_from_action(const MonodromyBoundaryAction& action);

enum class PushSide { Positive, Negative };

struct PushOffSystem {
    AdmissibleArcSystem base;
    Rational epsilon;
    PushSide side = PushSide::Positive;
    std::vector<CombinatorialArc> pushed;  // alpha^+, arc by arc

    // Arcs replaced by their push-offs, same coordinates and monodromy.
    AdmissibleArcSystem offset_system() const;
};

// Right push-off alpha^+: every endpoint moved by epsilon along the boundary
// orientation (PushSide::Negative flips the convention).  Halves epsilon up
// to eight times until every moved endpoint stays inside its half-slot and
// no endpoint of alpha lies on the image of an endpoint of alpha^+.
PushOffSystem push_off(const AdmissibleArcSystem& sys, const Rational& epsilon,
                       PushSide side = PushSide::Positive);

}  // namespace dfill
