#pragma once

// Boundary-torus invariants of a monodromy, read off from its combinatorial
// action on the boundary circles of the fiber.

#include "dfill/slope.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dfill {

struct BoundaryCircle {
    std::string id;
    long long stable_sing_count = 0;  // even, >= 2
};

// Permutation of boundary circles plus, for each permutation orbit, the shift
// by which the first return map moves the cyclically ordered stable
// singularities of the orbit's base circle (its smallest id).
struct MonodromyBoundaryAction {
    std::vector<BoundaryCircle> circles;
    std::map<std::string, std::string> permutation;
    std::map<std::string, long long> shifts;  // keyed by orbit base id
};

enum class Coorientation { Preserving, Reversing };

std::string to_string(Coorientation c);

// Degeneracy locus (p; q): p even and positive, q in (-p/2, p/2].
class DegeneracyLocus {
public:
    // Throws PreconditionError when (p; q) is not in canonical form.
    DegeneracyLocus(long long p, long long q);

    long long p() const noexcept { return p_; }
    long long q() const noexcept { return q_; }

    // gcd(p, |q|), with gcd(p, 0) = p.
    long long multiplicity() const;
    // (p/n) / (q/n)
    Slope degeneracy_slope() const;

    std::string to_string() const;  // "(p;q)"

    friend bool operator==(const DegeneracyLocus&, const DegeneracyLocus&) = default;

private:
    long long p_;
    long long q_;
};

// Reduces a raw shift of p stable singularities to canonical (p; q).
DegeneracyLocus canonical_locus(long long p, long long shift);

// The locus whose degeneracy slope is delta with multiplicity n.
DegeneracyLocus locus_from_slope(const Slope& delta, long long multiplicity = 1);

Coorientation classify_coorientation(const DegeneracyLocus& locus);

// |p * s.den - q * s.num|  ( = n * distance(delta, s) ).
Integer locus_distance(const DegeneracyLocus& locus, const Slope& s);

struct RawOrbit {
    std::vector<std::string> circles;  // base first, then successive images
    long long c = 0;
    long long p = 0;
    long long shift = 0;
};

struct BoundaryOrbit {
    std::vector<std::string> circles;
    long long c = 1;
    DegeneracyLocus locus{2, 1};
};

// Orbits ordered by smallest circle id; each orbit listed from its base.
std::vector<RawOrbit> orbit_decomposition(const MonodromyBoundaryAction& action);

// orbit_decomposition followed by canonical_locus on every orbit.
std::vector<BoundaryOrbit> boundary_orbits(const MonodromyBoundaryAction& action);

// Report notes about the data that the loci alone cannot express
// (base-circle choice, parity of q against orbit length).
std::vector<std::string> orbit_notes(const std::vector<BoundaryOrbit>& orbits);

struct EulerPoincareCheck {
    bool consistent = false;
    long long lhs = 0;  // 2 * chi(Sigma)
    long long rhs = 0;  // sum over interior singularities of (2 - prongs) - sum of p over circles
    std::string message;
};

// Advisory only: the index formula 2 chi = sum_int (2 - k) - sum_C p_C for a
// singular measured foliation with boundary-prong counts p_C.
EulerPoincareCheck euler_poincare_advisory(long long genus,
                                           const std::vector<long long>& interior_prongs,
                                           const std::vector<long long>& boundary_sings);

}  // namespace dfill
