#include "dfill/arcs.hpp"

#include "dfill/errors.hpp"

#include <algorithm>
#include <set>

namespace dfill {

Integer floor_of(const Rational& x) {
    Integer n = numerator(x);
    Integer d = denominator(x);  // positive
    Integer q = n / d;
    if (n < 0 && q * d != n)
        q -= 1;
    return q;
}

Rational mod_circle(const Rational& x, long long p) {
    Rational period(p);
    return x - period * Rational(floor_of(x / period));
}

std::string rational_to_string(const Rational& x) {
    if (denominator(x) == 1)
        return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    auto parse_int = [&](const std::string& part, std::size_t offset) {
        if (part.empty())
            throw ParseError("empty integer in fraction", offset);
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size())
            throw ParseError("sign without digits", offset);
        for (std::size_t k = i; k < part.size(); ++k) {
            if (part[k] < '0' || part[k] > '9')
                throw ParseError(std::string("unexpected character '") + part[k] + "'", offset + k);
        }
        return Integer(part[0] == '+' ? part.substr(1) : part);
    };
    if (slash == std::string::npos)
        return Rational(parse_int(text, 0));
    Integer num = parse_int(text.substr(0, slash), 0);
    Integer den = parse_int(text.substr(slash + 1), slash + 1);
    if (den == 0)
        throw ParseError("zero denominator", slash + 1);
    // boost rejects a negative denominator in the two-argument constructor
    return Rational(num) / Rational(den);
}

const CircleSpec* BoundaryCoordinates::find(const std::string& id) const {
    for (const auto& c : circles) {
        if (c.id == id)
            return &c;
    }
    return nullptr;
}

long long BoundaryCoordinates::total_stable_sings() const {
    long long total = 0;
    for (const auto& c : circles)
        total += c.p;
    return total;
}

std::vector<ArcEndpoint> AdmissibleArcSystem::endpoints() const {
    std::vector<ArcEndpoint> out;
    out.reserve(arcs.size() * 2);
    for (const auto& arc : arcs) {
        out.push_back(arc.start);
        out.push_back(arc.end);
    }
    return out;
}

ArcEndpoint apply_monodromy(const AdmissibleArcSystem& sys, const ArcEndpoint& e) {
    auto it = sys.monodromy.images.find(e.circle);
    if (it == sys.monodromy.images.end())
        throw StructuralError("monodromy has no image for circle '" + e.circle + "'");
    const CircleSpec* target = sys.coords.find(it->second.target);
    if (!target)
        throw StructuralError("monodromy maps to unknown circle '" + it->second.target + "'");
    return {target->id, mod_circle(e.position + it->second.shift, target->p)};
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::UnknownCircle: return "unknown_circle";
    case ViolationKind::MonodromyInconsistent: return "monodromy_inconsistent";
    case ViolationKind::OnStableSingularity: return "on_stable_singularity";
    case ViolationKind::EmptySlot: return "empty_slot";
    case ViolationKind::CrowdedSlot: return "crowded_slot";
    case ViolationKind::ImageCollision: return "image_collision";
    case ViolationKind::ArcCount: return "arc_count";
    case ViolationKind::DegenerateArc: return "degenerate_arc";
    }
    return "?";
}

namespace {

struct Placed {
    std::string circle;
    Rational position;  // reduced into [0, p)
};

}  // namespace

std::vector<Violation> validate_system(const AdmissibleArcSystem& sys) {
    std::vector<Violation> out;

    std::set<std::string> targets;
    for (const auto& circle : sys.coords.circles) {
        auto it = sys.monodromy.images.find(circle.id);
        if (it == sys.monodromy.images.end()) {
            out.push_back({ViolationKind::MonodromyInconsistent, circle.id, 0, "no image circle"});
            continue;
        }
        const CircleSpec* target = sys.coords.find(it->second.target);
        if (!target) {
            out.push_back({ViolationKind::MonodromyInconsistent, circle.id, 0,
                           "image circle '" + it->second.target + "' unknown"});
            continue;
        }
        if (target->p != circle.p)
            out.push_back({ViolationKind::MonodromyInconsistent, circle.id, 0,
                           "image circle has a different number of stable singularities"});
        if (!targets.insert(target->id).second)
            out.push_back({ViolationKind::MonodromyInconsistent, target->id, 0, "circle hit twice"});
    }
    bool monodromy_ok = out.empty();

    long long expected = sys.coords.total_stable_sings() / 2;
    if (static_cast<long long>(sys.arcs.size()) != expected)
        out.push_back({ViolationKind::ArcCount, "", Rational(static_cast<long long>(sys.arcs.size())),
                       "expected " + std::to_string(expected) + " arcs"});

    std::vector<Placed> placed;
    for (const auto& arc : sys.arcs) {
        bool both_known = true;
        for (const ArcEndpoint* e : {&arc.start, &arc.end}) {
            const CircleSpec* circle = sys.coords.find(e->circle);
            if (!circle) {
                out.push_back({ViolationKind::UnknownCircle, e->circle, e->position, "endpoint on unknown circle"});
                both_known = false;
                continue;
            }
            Rational x = mod_circle(e->position, circle->p);
            if (denominator(x) == 1)
                out.push_back({ViolationKind::OnStableSingularity, e->circle, x, "endpoint on a stable singularity"});
            placed.push_back({e->circle, x});
        }
        if (both_known && arc.start.circle == arc.end.circle) {
            const CircleSpec* circle = sys.coords.find(arc.start.circle);
            Rational a = mod_circle(arc.start.position, circle->p);
            Rational b = mod_circle(arc.end.position, circle->p);
            if (floor_of(a) == floor_of(b))
                out.push_back({ViolationKind::DegenerateArc, arc.start.circle, a, "both endpoints in one slot"});
        }
    }

    // (iii): one endpoint per slot
    for (const auto& circle : sys.coords.circles) {
        std::vector<int> count(static_cast<std::size_t>(circle.p), 0);
        for (const auto& e : placed) {
            if (e.circle == circle.id && denominator(e.position) != 1)
                ++count[static_cast<std::size_t>(floor_of(e.position))];
        }
        for (long long m = 0; m < circle.p; ++m) {
            int k = count[static_cast<std::size_t>(m)];
            if (k == 0)
                out.push_back({ViolationKind::EmptySlot, circle.id, Rational(m), "slot has no endpoint"});
            else if (k > 1)
                out.push_back({ViolationKind::CrowdedSlot, circle.id, Rational(m),
                               "slot has " + std::to_string(k) + " endpoints"});
        }
    }

    // (ii): endpoint set disjoint from its image
    if (monodromy_ok) {
        for (const auto& e : placed) {
            ArcEndpoint image = apply_monodromy(sys, {e.circle, e.position});
            for (const auto& f : placed) {
                if (f.circle == image.circle && f.position == image.position) {
                    out.push_back({ViolationKind::ImageCollision, image.circle, image.position,
                                   "image of endpoint on " + e.circle + " at " + rational_to_string(e.position) +
                                       " is an endpoint"});
                    break;
                }
            }
        }
    }
    return out;
}

PolarityAssignment alternating_polarity(const BoundaryCoordinates& coords) {
    PolarityAssignment out;
    for (const auto& circle : coords.circles) {
        std::vector<Polarity> slots;
        for (long long m = 0; m < circle.p; ++m)
            slots.push_back(m % 2 == 0 ? Polarity::Beta : Polarity::Gamma);
        out[circle.id] = std::move(slots);
    }
    return out;
}

namespace {

void split_slots(const BoundaryCoordinates& coords, const PolarityAssignment& polarity,
                 std::vector<SlotRef>& betas, std::vector<SlotRef>& gammas) {
    for (const auto& circle : coords.circles) {
        auto it = polarity.find(circle.id);
        if (it == polarity.end() || static_cast<long long>(it->second.size()) != circle.p)
            throw StructuralError("polarity must list one entry per slot of circle '" + circle.id + "'");
        for (long long m = 0; m < circle.p; ++m)
            (it->second[static_cast<std::size_t>(m)] == Polarity::Beta ? betas : gammas).push_back({circle.id, m});
    }
    if (betas.size() != gammas.size())
        throw PreconditionError("no refined system exists for this data");
    std::sort(betas.begin(), betas.end());
    std::sort(gammas.begin(), gammas.end());
}

}  // namespace

SlotMatching default_matching(const BoundaryCoordinates& coords, const PolarityAssignment& polarity) {
    std::vector<SlotRef> betas, gammas;
    split_slots(coords, polarity, betas, gammas);
    SlotMatching out;
    for (std::size_t i = 0; i < betas.size(); ++i)
        out.emplace_back(betas[i], gammas[i]);
    return out;
}

std::vector<SlotMatching> enumerate_matchings(const BoundaryCoordinates& coords,
                                              const PolarityAssignment& polarity) {
    std::vector<SlotRef> betas, gammas;
    split_slots(coords, polarity, betas, gammas);
    if (betas.size() > kMaxEnumeratedPairs)
        throw PreconditionError("too many slots to enumerate matchings (" + std::to_string(betas.size()) +
                                " beta slots, limit " + std::to_string(kMaxEnumeratedPairs) + ")");
    std::vector<SlotMatching> out;
    do {
        SlotMatching m;
        for (std::size_t i = 0; i < betas.size(); ++i)
            m.emplace_back(betas[i], gammas[i]);
        out.push_back(std::move(m));
    } while (std::next_permutation(gammas.begin(), gammas.end()));
    return out;
}

AdmissibleArcSystem refined_matching(const BoundaryCoordinates& coords,
                                     const MonodromyBoundaryMap& monodromy,
                                     const PolarityAssignment& polarity,
                                     const SlotMatching& matching) {
    std::vector<SlotRef> betas, gammas;
    split_slots(coords, polarity, betas, gammas);

    auto polarity_of = [&](const SlotRef& s) {
        const CircleSpec* circle = coords.find(s.circle);
        if (!circle || s.slot < 0 || s.slot >= circle->p)
            throw StructuralError("matching references a slot that does not exist");
        return polarity.at(s.circle)[static_cast<std::size_t>(s.slot)];
    };
    std::set<SlotRef> used;
    for (const auto& [b, g] : matching) {
        if (polarity_of(b) != Polarity::Beta || polarity_of(g) != Polarity::Gamma)
            throw StructuralError("matching must pair a beta slot with a gamma slot");
        if (!used.insert(b).second || !used.insert(g).second)
            throw StructuralError("matching uses a slot twice");
    }
    if (matching.size() != betas.size())
        throw StructuralError("matching must cover every slot");

    // Global slot index, used to spread endpoints apart.
    std::map<SlotRef, long long> index;
    for (const auto& circle : coords.circles) {
        for (long long m = 0; m < circle.p; ++m)
            index[{circle.id, m}] = static_cast<long long>(index.size());
    }
    const long long n_slots = static_cast<long long>(index.size());

    AdmissibleArcSystem sys{coords, monodromy, {}};
    // A few step schedules; the first almost always works, the others handle
    // rational shifts that happen to line two endpoints up.
    for (long long attempt = 0; attempt < 8; ++attempt) {
        Rational step(1, 16 * (n_slots + 1) * (2 * attempt + 1));
        sys.arcs.clear();
        for (const auto& [b, g] : matching) {
            Rational xb = Rational(b.slot) + Rational(1, 4) + step * index.at(b);
            Rational xg = Rational(g.slot) + Rational(3, 4) - step * index.at(g);
            sys.arcs.push_back({{b.circle, xb}, {g.circle, xg}, true, true});
        }
        auto violations = validate_system(sys);
        if (violations.empty())
            return sys;
        bool only_collisions = std::all_of(violations.begin(), violations.end(), [](const Violation& v) {
            return v.kind == ViolationKind::ImageCollision;
        });
        if (!only_collisions)
            throw StructuralError("refined system is not admissible: " + to_string(violations.front().kind) +
                                  " on " + violations.front().circle);
    }
    throw StructuralError("refined system cannot avoid its monodromy image (an endpoint is fixed by the map)");
}

BoundaryCoordinates coordinates_from_action(const MonodromyBoundaryAction& action) {
    BoundaryCoordinates coords;
    for (const auto& c : action.circles)
        coords.circles.push_back({c.id, c.stable_sing_count});
    std::sort(coords.circles.begin(), coords.circles.end(),
              [](const CircleSpec& a, const CircleSpec& b) { return a.id < b.id; });
    return coords;
}

MonodromyBoundaryMap boundary_map_from_action(const MonodromyBoundaryAction& action) {
    MonodromyBoundaryMap map;
    for (const auto& orbit : orbit_decomposition(action)) {
        for (std::size_t i = 0; i < orbit.circles.size(); ++i) {
            const std::string& from = orbit.circles[i];
            bool closing = i + 1 == orbit.circles.size();
            map.images[from] = {action.permutation.at(from), closing ? Rational(orbit.shift) : Rational(0)};
        }
    }
    return map;
}

AdmissibleArcSystem PushOffSystem::offset_system() const {
    AdmissibleArcSystem out = base;
    out.arcs = pushed;
    return out;
}

namespace {

// True when some point of Z/2 lies in (x, y] (or [y, x) when y < x).
bool crosses_half_lattice(const Rational& x, const Rational& y) {
    Rational twice = x * 2;
    if (y > x) {
        Rational next = Rational(floor_of(twice) + 1) / 2;
        return next <= y;
    }
    Integer c = -floor_of(-twice);  // ceil(2x)
    Rational prev = Rational(c - 1) / 2;
    return prev >= y;
}

}  // namespace

PushOffSystem push_off(const AdmissibleArcSystem& sys, const Rational& epsilon, PushSide side) {
    if (epsilon <= 0)
        throw PreconditionError("push-off epsilon must be positive");
    auto violations = validate_system(sys);
    if (!violations.empty())
        throw PreconditionError("push-off needs an admissible system (" + to_string(violations.front().kind) + ")");
    if (epsilon >= Rational(1, 2))
        throw StructuralError("push-off collision: epsilon " + rational_to_string(epsilon) +
                              " leaves the half-segment of every endpoint");

    const Rational sign = side == PushSide::Positive ? Rational(1) : Rational(-1);
    std::string last_problem;
    Rational eps = epsilon;
    for (int attempt = 0; attempt <= 8; ++attempt, eps /= 2) {
        PushOffSystem out{sys, eps, side, {}};
        bool ok = true;
        auto move = [&](const ArcEndpoint& e) {
            long long p = sys.coords.find(e.circle)->p;
            Rational x = mod_circle(e.position, p);
            Rational y = x + sign * eps;
            if (crosses_half_lattice(x, y)) {
                ok = false;
                last_problem = "endpoint " + e.circle + ":" + rational_to_string(x) + " leaves its half-segment";
            }
            return ArcEndpoint{e.circle, mod_circle(y, p)};
        };
        for (const auto& arc : sys.arcs) {
            CombinatorialArc moved = arc;
            moved.start = move(arc.start);
            moved.end = move(arc.end);
            out.pushed.push_back(moved);
        }
        if (ok) {
            auto originals = sys.endpoints();
            for (const auto& arc : out.pushed) {
                for (const ArcEndpoint* e : {&arc.start, &arc.end}) {
                    ArcEndpoint image = apply_monodromy(sys, *e);
                    for (const auto& f : originals) {
                        long long p = sys.coords.find(f.circle)->p;
                        if (f.circle == image.circle && mod_circle(f.position, p) == image.position) {
                            ok = false;
                            last_problem = "phi(" + e->circle + ":" + rational_to_string(e->position) +
                                           ") meets endpoint " + f.circle + ":" + rational_to_string(image.position);
                        }
                    }
                }
            }
        }
        if (ok)
            return out;
    }
    throw StructuralError("push-off collision: " + last_problem);
}

}  // namespace dfill
