#include "doctest.h"
#include "gen.hpp"

#include "dfill/arcs.hpp"
#include "dfill/errors.hpp"

#include <algorithm>
#include <set>
#include <tuple>

using namespace dfill;

namespace {

Rational R(long long a, long long b = 1) { return Rational(a, b); }

BoundaryCoordinates one_circle(long long p) { return BoundaryCoordinates{{{"C0", p}}}; }

MonodromyBoundaryMap rotation(const BoundaryCoordinates& coords, long long shift) {
    MonodromyBoundaryMap m;
    for (const auto& c : coords.circles)
        m.images[c.id] = {c.id, R(shift)};
    return m;
}

AdmissibleArcSystem refined(const BoundaryCoordinates& coords, const MonodromyBoundaryMap& m) {
    auto pol = alternating_polarity(coords);
    return refined_matching(coords, m, pol, default_matching(coords, pol));
}

bool has_kind(const std::vector<Violation>& vs, ViolationKind k) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

// Random boundary structure: circles with p in {2, 4, 6}, a random
// permutation within equal-p classes, integer shifts on orbit closings chosen
// so that no circle is fixed pointwise by the first return map.
std::pair<BoundaryCoordinates, MonodromyBoundaryMap> random_structure(gen::Rng& rng) {
    BoundaryCoordinates coords;
    long long n = rng.range(1, 4);
    for (long long i = 0; i < n; ++i)
        coords.circles.push_back({"C" + std::to_string(i), 2 * rng.range(1, 3)});
    MonodromyBoundaryAction action;
    for (const auto& c : coords.circles)
        action.circles.push_back({c.id, c.p});
    std::map<long long, std::vector<std::string>> by_p;
    for (const auto& c : coords.circles)
        by_p[c.p].push_back(c.id);
    for (auto& [p, ids] : by_p) {
        auto image = ids;
        rng.shuffle(image);
        for (std::size_t i = 0; i < ids.size(); ++i)
            action.permutation[ids[i]] = image[i];
    }
    // shifts are keyed by orbit bases (smallest id, met first in sorted order)
    std::set<std::string> seen;
    for (const auto& c : coords.circles) {
        if (seen.count(c.id))
            continue;
        std::string cur = c.id;
        do {
            seen.insert(cur);
            cur = action.permutation[cur];
        } while (cur != c.id);
        action.shifts[c.id] = rng.range(1, c.p - 1);
    }
    return {coords, boundary_map_from_action(action)};
}

}  // namespace

TEST_CASE("validate_system: refined system on one circle with p = 2") {
    auto coords = one_circle(2);
    auto sys = refined(coords, rotation(coords, 1));
    CHECK(sys.arcs.size() == 1);
    CHECK(validate_system(sys).empty());
    CHECK(sys.arcs[0].pos_transverse_Fs);
    CHECK(sys.arcs[0].pos_transverse_Fu);
}

TEST_CASE("validate_system: two endpoints in one slot") {
    auto coords = one_circle(2);
    AdmissibleArcSystem sys{coords, rotation(coords, 1), {{{"C0", R(1, 4)}, {"C0", R(3, 4)}}}};
    auto vs = validate_system(sys);
    CHECK(has_kind(vs, ViolationKind::CrowdedSlot));
    CHECK(has_kind(vs, ViolationKind::EmptySlot));
}

TEST_CASE("validate_system: endpoint meets the image of another endpoint") {
    BoundaryCoordinates coords{{{"A", 2}, {"B", 2}}};
    MonodromyBoundaryMap m;
    m.images["A"] = {"B", R(0)};
    m.images["B"] = {"A", R(0)};
    AdmissibleArcSystem sys{coords, m,
                            {{{"A", R(1, 4)}, {"A", R(5, 4)}}, {{"B", R(1, 4)}, {"B", R(3, 2)}}}};
    auto vs = validate_system(sys);
    REQUIRE(has_kind(vs, ViolationKind::ImageCollision));
    auto hit = std::find_if(vs.begin(), vs.end(), [](const Violation& v) { return v.kind == ViolationKind::ImageCollision; });
    CHECK(hit->position == R(1, 4));
}

TEST_CASE("validate_system: singularities, arc count, unknown circles") {
    auto coords = one_circle(4);
    AdmissibleArcSystem sys{coords, rotation(coords, 1), {{{"C0", R(1)}, {"C0", R(5, 2)}}}};
    auto vs = validate_system(sys);
    CHECK(has_kind(vs, ViolationKind::OnStableSingularity));
    CHECK(has_kind(vs, ViolationKind::ArcCount));
    sys.arcs.push_back({{"X", R(1, 4)}, {"C0", R(7, 2)}});
    CHECK(has_kind(validate_system(sys), ViolationKind::UnknownCircle));

    MonodromyBoundaryMap bad;
    AdmissibleArcSystem no_map{coords, bad, {}};
    CHECK(has_kind(validate_system(no_map), ViolationKind::MonodromyInconsistent));
}

TEST_CASE("refined_matching examples") {
    auto c2 = one_circle(2);
    auto pol2 = alternating_polarity(c2);
    CHECK(enumerate_matchings(c2, pol2).size() == 1);

    auto c4 = one_circle(4);
    auto pol4 = alternating_polarity(c4);
    auto matchings = enumerate_matchings(c4, pol4);
    CHECK(matchings.size() == 2);
    for (const auto& m : matchings) {
        auto sys = refined_matching(c4, rotation(c4, 1), pol4, m);
        CHECK(sys.arcs.size() == 2);
        CHECK(validate_system(sys).empty());
    }

    BoundaryCoordinates c6{{{"A", 2}, {"B", 4}}};
    MonodromyBoundaryMap m6;
    m6.images["A"] = {"A", R(1)};
    m6.images["B"] = {"B", R(3)};
    auto sys6 = refined(c6, m6);
    CHECK(sys6.arcs.size() == 3);
    CHECK(validate_system(sys6).empty());

    // endpoints sit off the unstable singularities as well
    for (const auto& e : sys6.endpoints())
        CHECK(denominator(Rational(e.position * 2)) != 1);
}

TEST_CASE("refined_matching errors") {
    auto c4 = one_circle(4);
    PolarityAssignment unbalanced{{"C0", {Polarity::Beta, Polarity::Beta, Polarity::Beta, Polarity::Gamma}}};
    try {
        default_matching(c4, unbalanced);
        FAIL("expected an error");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()) == "no refined system exists for this data");
    }
    CHECK_THROWS_AS(refined_matching(c4, rotation(c4, 1), unbalanced, {}), PreconditionError);

    // a first return fixing the circle pointwise leaves nothing to perturb
    CHECK_THROWS_AS(refined(c4, rotation(c4, 0)), StructuralError);

    auto pol = alternating_polarity(c4);
    SlotMatching wrong{{{"C0", 1}, {"C0", 0}}, {{"C0", 3}, {"C0", 2}}};
    CHECK_THROWS_AS(refined_matching(c4, rotation(c4, 1), pol, wrong), StructuralError);
    SlotMatching partial{{{"C0", 0}, {"C0", 1}}};
    CHECK_THROWS_AS(refined_matching(c4, rotation(c4, 1), pol, partial), StructuralError);
}

TEST_CASE("push_off examples") {
    auto coords = one_circle(4);
    auto sys = refined(coords, rotation(coords, 1));
    auto pushed = push_off(sys, R(1, 8));
    CHECK(pushed.epsilon == R(1, 8));
    CHECK(validate_system(pushed.offset_system()).empty());
    for (std::size_t i = 0; i < sys.arcs.size(); ++i)
        CHECK(pushed.pushed[i].start.position == mod_circle(sys.arcs[i].start.position + R(1, 8), 4));

    CHECK_THROWS_AS(push_off(sys, R(3)), StructuralError);
    try {
        push_off(sys, R(3));
    } catch (const StructuralError& e) {
        CHECK(std::string(e.what()).find("push-off collision") == 0);
    }

    auto negative = push_off(sys, R(1, 8), PushSide::Negative);
    CHECK(negative.pushed[0].start.position == mod_circle(sys.arcs[0].start.position - R(1, 8), 4));
}

TEST_CASE("push_off retries after a collision with the monodromy image") {
    // A and B swapped with zero shift. Moving A:1/8 by 1/8 lands on the
    // preimage of the endpoint B:1/4; half the step avoids it.
    BoundaryCoordinates coords{{{"A", 2}, {"B", 2}}};
    MonodromyBoundaryMap m;
    m.images["A"] = {"B", R(0)};
    m.images["B"] = {"A", R(0)};
    AdmissibleArcSystem sys{coords, m,
                            {{{"A", R(1, 8)}, {"B", R(1, 4)}}, {{"A", R(9, 8)}, {"B", R(5, 4)}}}};
    REQUIRE(validate_system(sys).empty());
    auto pushed = push_off(sys, R(1, 8));
    CHECK(pushed.epsilon == R(1, 16));
    CHECK(pushed.pushed[0].start.position == R(3, 16));
}

TEST_CASE("push_off requires an admissible system") {
    auto coords = one_circle(2);
    AdmissibleArcSystem sys{coords, rotation(coords, 1), {{{"C0", R(1, 4)}, {"C0", R(3, 4)}}}};
    CHECK_THROWS_AS(push_off(sys, R(1, 8)), PreconditionError);
}

TEST_CASE("property: refined systems validate, count is half the singularities, push-offs stay admissible") {
    gen::Rng rng(31);
    int cases = 0;
    while (cases < 1000) {
        auto [coords, m] = random_structure(rng);
        auto pol = alternating_polarity(coords);
        // all matchings when few, random ones otherwise
        std::vector<SlotMatching> chosen;
        if (coords.total_stable_sings() <= 8) {
            chosen = enumerate_matchings(coords, pol);
        } else {
            auto base = default_matching(coords, pol);
            for (int i = 0; i < 6; ++i) {
                std::vector<SlotRef> gammas;
                for (const auto& pr : base)
                    gammas.push_back(pr.second);
                rng.shuffle(gammas);
                SlotMatching m;
                for (std::size_t k = 0; k < base.size(); ++k)
                    m.emplace_back(base[k].first, gammas[k]);
                chosen.push_back(std::move(m));
            }
        }
        for (const auto& matching : chosen) {
            auto sys = refined_matching(coords, m, pol, matching);
            CHECK(static_cast<long long>(sys.arcs.size()) * 2 == coords.total_stable_sings());
            CHECK(validate_system(sys).empty());
            auto pushed = push_off(sys, R(1, 8));
            CHECK(validate_system(pushed.offset_system()).empty());
            ++cases;
        }
    }
}

TEST_CASE("property: validation is equivariant under relabeling circles") {
    gen::Rng rng(32);
    for (int trial = 0; trial < 300; ++trial) {
        auto [coords, m] = random_structure(rng);
        // random endpoints, valid or not
        AdmissibleArcSystem sys{coords, m, {}};
        long long n_arcs = coords.total_stable_sings() / 2 + rng.range(-1, 1);
        auto random_point = [&] {
            const auto& c = coords.circles[rng.range(0, coords.circles.size() - 1)];
            return ArcEndpoint{c.id, R(rng.range(0, 4 * c.p - 1), 4)};
        };
        for (long long i = 0; i < n_arcs; ++i)
            sys.arcs.push_back({random_point(), random_point()});

        std::vector<std::string> ids;
        for (const auto& c : coords.circles)
            ids.push_back(c.id);
        auto perm = ids;
        rng.shuffle(perm);
        std::map<std::string, std::string> rename;
        for (std::size_t i = 0; i < ids.size(); ++i)
            rename[ids[i]] = "Z" + perm[i];

        AdmissibleArcSystem relabeled = sys;
        for (auto& c : relabeled.coords.circles)
            c.id = rename[c.id];
        relabeled.monodromy.images.clear();
        for (const auto& [from, img] : sys.monodromy.images)
            relabeled.monodromy.images[rename[from]] = {rename[img.target], img.shift};
        for (auto& arc : relabeled.arcs) {
            arc.start.circle = rename[arc.start.circle];
            arc.end.circle = rename[arc.end.circle];
        }

        using Key = std::tuple<int, std::string, Rational>;
        std::multiset<Key> before, after;
        for (const auto& v : validate_system(sys))
            before.insert({static_cast<int>(v.kind), v.circle.empty() ? "" : rename[v.circle], v.position});
        for (const auto& v : validate_system(relabeled))
            after.insert({static_cast<int>(v.kind), v.circle, v.position});
        CHECK(before == after);
    }
}

TEST_CASE("boundary_map_from_action puts the orbit shift on the closing step") {
    MonodromyBoundaryAction action;
    action.circles = {{"C0", 4}, {"C1", 4}, {"C2", 4}};
    action.permutation = {{"C0", "C1"}, {"C1", "C2"}, {"C2", "C0"}};
    action.shifts = {{"C0", 1}};
    auto m = boundary_map_from_action(action);
    CHECK(m.images.at("C0").target == "C1");
    CHECK(m.images.at("C0").shift == 0);
    CHECK(m.images.at("C1").shift == 0);
    CHECK(m.images.at("C2").shift == 1);
    auto coords = coordinates_from_action(action);
    CHECK(coords.total_stable_sings() == 12);
    auto sys = refined(coords, m);
    CHECK(sys.arcs.size() == 6);
    CHECK(validate_system(sys).empty());
}

TEST_CASE("rational helpers") {
    CHECK(floor_of(R(-1, 2)) == -1);
    CHECK(floor_of(R(7, 2)) == 3);
    CHECK(mod_circle(R(-1, 4), 2) == R(7, 4));
    CHECK(mod_circle(R(9, 4), 2) == R(1, 4));
    CHECK(parse_rational("3/8") == R(3, 8));
    CHECK(parse_rational("-5") == R(-5));
    CHECK(rational_to_string(R(-3, 8)) == "-3/8");
    CHECK_THROWS_AS(parse_rational("3/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("a/2"), ParseError);
}
