#include "doctest.h"
#include "gen.hpp"
#include "track_oracle.hpp"

#include "dfill/errors.hpp"
#include "dfill/filling.hpp"
#include "dfill/tracks.hpp"

#include <algorithm>
#include <set>

using namespace dfill;

namespace {

Slope S(long long a, long long b = 1) { return Slope(Integer(a), Integer(b)); }

TorusTrainTrack longitude() {
    TorusTrainTrack t;
    t.branches.push_back({"lam", 0, 1, "arc"});
    return t;
}

// Circle cut into arcs A (s0 -> s1) and B (s1 -> s0) plus a rung R (s0 -> s1)
// leaving s0 and arriving at s1 on the same side as A.  Switch equations:
// B = A + R at both switches, so the rays are A + B and R + B.
TorusTrainTrack two_ray(std::pair<long long, long long> a, std::pair<long long, long long> b,
                        std::pair<long long, long long> r) {
    TorusTrainTrack t;
    t.branches.push_back({"A", a.first, a.second, "arc"});
    t.branches.push_back({"B", b.first, b.second, "arc"});
    t.branches.push_back({"R", r.first, r.second, "rung"});
    TrackSwitch s0{"s0", {1, BranchEnd::Head}, {EndRef{0, BranchEnd::Tail}, EndRef{2, BranchEnd::Tail}}, 0, ""};
    TrackSwitch s1{"s1", {1, BranchEnd::Tail}, {EndRef{0, BranchEnd::Head}, EndRef{2, BranchEnd::Head}}, 0, ""};
    t.switches = {s0, s1};
    return t;
}

TorusTrainTrack built(long long p, long long q, long long c) {
    DegeneracyLocus locus(p, q);
    return build_boundary_track(locus, c, default_config(locus, c));
}

// Every integral class with weights <= bound lies in the carried set.
void check_containment(const TorusTrainTrack& t, long long bound) {
    auto carried = carried_slopes(t);
    for (const auto& ic : integral_carried_classes(t, bound)) {
        if (ic.a == 0 && ic.b == 0)
            continue;
        INFO("class (" << ic.a << ", " << ic.b << ") vs " << carried.to_string());
        REQUIRE(carried.contains(Slope(ic.a, ic.b)));
    }
}

}  // namespace

TEST_CASE("weight_cone and carried_slopes on hand tracks") {
    auto cone = weight_cone(longitude());
    REQUIRE(cone.rays.size() == 1);
    CHECK(cone.rays[0] == WeightVector{1});
    auto lam = carried_slopes(longitude());
    REQUIRE(lam.kind == CarriedSlopes::Kind::Single);
    CHECK(*lam.single == S(0));

    auto t = two_ray({1, 0}, {0, 0}, {1, 2});
    cone = weight_cone(t);
    CHECK(cone.kernel_dim == 2);
    CHECK(cone.rays == std::vector<WeightVector>{{0, 1, 1}, {1, 1, 0}});
    auto arc = carried_slopes(t);
    REQUIRE(arc.kind == CarriedSlopes::Kind::Arc);
    CHECK(arc.arc->is_endpoint(Slope::infinity()));
    CHECK(arc.arc->is_endpoint(S(1, 2)));
    CHECK(arc.end_a_attained);
    CHECK(arc.end_b_attained);
    CHECK(arc.contains(S(1)));       // (2, 2)
    CHECK(arc.contains(S(1, 2)));
    CHECK_FALSE(arc.contains(S(0)));
    CHECK_FALSE(arc.contains(S(-1)));

    auto single = carried_slopes(two_ray({0, 1}, {0, 0}, {0, 1}));
    REQUIRE(single.kind == CarriedSlopes::Kind::Single);
    CHECK(*single.single == S(0));

    // a cycle class of zero: carries nothing visible
    auto none = carried_slopes(two_ray({0, 0}, {0, 0}, {0, 0}));
    CHECK(none.kind == CarriedSlopes::Kind::Empty);

    // opposite classes span a line
    auto line = carried_slopes(two_ray({1, 0}, {0, 0}, {-1, 0}));
    REQUIRE(line.kind == CarriedSlopes::Kind::Single);
    CHECK(*line.single == Slope::infinity());

    auto all = carried_slopes(two_ray({1, 0}, {0, 0}, {-1, 1}));
    CHECK(all.kind == CarriedSlopes::Kind::Arc);
    // (1,0) and (-1,1) span < pi; add a third direction through a half-plane
    TorusTrainTrack wide = two_ray({1, 0}, {0, 0}, {-1, 0});
    wide.branches[1].b = 1;  // rays (1,1) and (-1,1)
    auto w = carried_slopes(wide);
    CHECK(w.kind == CarriedSlopes::Kind::Arc);
    CHECK(w.contains(S(0)));
    CHECK_FALSE(w.contains(Slope::infinity()));
}

TEST_CASE("empty and malformed tracks") {
    TorusTrainTrack empty;
    CHECK(weight_cone(empty).carries_nothing());
    CHECK(carried_slopes(empty).kind == CarriedSlopes::Kind::Empty);
    CHECK(integral_carried_classes(empty, 5).empty());

    TorusTrainTrack two_loops;
    two_loops.branches = {{"x", 0, 1, ""}, {"y", 1, 0, ""}};
    CHECK_THROWS_AS(weight_cone(two_loops), StructuralError);

    auto t = two_ray({1, 0}, {0, 0}, {1, 2});
    t.switches[1].two[1] = EndRef{0, BranchEnd::Head};  // A's head twice, R dangling
    CHECK_THROWS_AS(validate_track(t), StructuralError);

    t = two_ray({1, 0}, {0, 0}, {1, 2});
    t.switches[0].two[1].end = BranchEnd::Head;  // mixed orientation
    CHECK_THROWS_AS(validate_track(t), StructuralError);

    t = two_ray({1, 0}, {0, 0}, {1, 2});
    t.switches[0].two[1].branch = 7;
    CHECK_THROWS_AS(validate_track(t), StructuralError);

    CHECK_THROWS_AS(integral_carried_classes(longitude(), 13), PreconditionError);
}

TEST_CASE("integral_carried_classes examples") {
    auto cls = integral_carried_classes(longitude(), 3);
    REQUIRE(cls.size() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(cls[static_cast<std::size_t>(k)].a == 0);
        CHECK(cls[static_cast<std::size_t>(k)].b == k + 1);
    }
    check_containment(two_ray({1, 0}, {0, 0}, {1, 2}), 8);
    // B = A + R with A, R <= 8 and B <= 8
    CHECK(count_integral_carried(two_ray({1, 0}, {0, 0}, {1, 2}), 8) == 9 * 10 / 2 - 1);
    CHECK_THROWS_AS(integral_carried_classes(two_ray({1, 0}, {0, 0}, {1, 2}), 8, 10), PreconditionError);
}

TEST_CASE("build_boundary_track structure for (2;1), c = 1") {
    auto t = built(2, 1, 1);
    CHECK(t.switches.size() == 4);
    long long rungs = 0, arcs = 0;
    for (const auto& b : t.branches)
        (b.kind == "arc" ? arcs : rungs) += 1;
    CHECK(rungs == 2);
    CHECK(arcs == 4);
    // one circle: the arcs sum to a single longitude, oriented backwards
    Integer lb = 0;
    for (const auto& b : t.branches) {
        if (b.kind == "arc") {
            CHECK(b.a == 0);
            lb += b.b;
        }
    }
    CHECK(lb == -1);
}

TEST_CASE("build_boundary_track examples and errors") {
    auto s = carried_slopes(built(4, 1, 1));
    REQUIRE(s.kind == CarriedSlopes::Kind::Arc);
    CHECK(s.arc->is_endpoint(S(2)));
    CHECK(s.arc->is_endpoint(Slope::infinity()));
    CHECK(s.arc->same_arc(interval_J(DegeneracyLocus(4, 1), 1)));

    // q + c odd: the alternating default does not close up
    CHECK_THROWS_AS(default_config(DegeneracyLocus(4, 1), 2), PreconditionError);
    CHECK_THROWS_AS(build_boundary_track(DegeneracyLocus(4, 2), 1, default_config(DegeneracyLocus(4, 1), 1)),
                    PreconditionError);

    auto cfg = default_config(DegeneracyLocus(4, 1), 1);
    auto bad = cfg;
    bad.levels[0].pop_back();
    CHECK_THROWS_AS(build_boundary_track(DegeneracyLocus(4, 1), 1, bad), StructuralError);
    bad = cfg;
    bad.levels[0][1].lower = bad.levels[0][0].lower;
    CHECK_THROWS_AS(build_boundary_track(DegeneracyLocus(4, 1), 1, bad), StructuralError);
    bad = cfg;
    bad.levels[0][0].upper_cusp = bad.levels[0][0].lower_cusp;
    CHECK_THROWS_AS(build_boundary_track(DegeneracyLocus(4, 1), 1, bad), StructuralError);
    CHECK_THROWS_AS(build_boundary_track(DegeneracyLocus(4, 1), 2, cfg), StructuralError);
    CHECK_THROWS_AS(named_config("zigzag", DegeneracyLocus(4, 1), 1), PreconditionError);
}

TEST_CASE("default config reproduces p/(q+c), p/(q-c) on small loci") {
    long long checked = 0;
    for (long long p = 2; p <= 6; p += 2) {
        for (long long q = -p / 2 + 1; q <= p / 2; ++q) {
            if (q % 2 == 0)
                continue;
            for (long long c = 1; c <= 3; ++c) {
                if ((q + c) % 2 != 0)
                    continue;
                DegeneracyLocus locus(p, q);
                auto s = carried_slopes(built(p, q, c));
                INFO(p << " " << q << " " << c << ": " << s.to_string());
                REQUIRE(s.kind == CarriedSlopes::Kind::Arc);
                CHECK(s.arc->is_endpoint(Slope(Integer(p), Integer(q + c))));
                CHECK(s.arc->is_endpoint(Slope(Integer(p), Integer(q - c))));
                CHECK(s.arc->same_arc(interval_J(locus, c)));
                ++checked;
            }
        }
    }
    CHECK(checked == 12);
}

TEST_CASE("uniform config carries the arc from the longitude to p/q") {
    for (auto [p, q] : {std::pair{2LL, 1LL}, {4, 1}, {4, -1}, {6, 3}}) {
        DegeneracyLocus locus(p, q);
        auto s = carried_slopes(build_boundary_track(locus, 1, uniform_config(locus, 1)));
        REQUIRE(s.kind == CarriedSlopes::Kind::Arc);
        CHECK(s.arc->is_endpoint(S(0)));
        CHECK(s.arc->is_endpoint(Slope(Integer(p), Integer(q))));
        CHECK_FALSE(s.arc->same_arc(interval_J(locus, 1)));
    }
}

TEST_CASE("property: mirror symmetry of built tracks") {
    for (long long p = 2; p <= 6; p += 2) {
        for (long long q = -p / 2 + 1; q < p / 2; ++q) {
            if (q % 2 == 0)
                continue;
            for (long long c = 1; c <= 3; c += 2) {
                if ((q + c) % 2 != 0)
                    continue;
                DegeneracyLocus locus(p, q);
                auto cfg = default_config(locus, c);
                auto s = carried_slopes(build_boundary_track(locus, c, cfg));
                auto m = carried_slopes(build_boundary_track(DegeneracyLocus(p, -q), c, mirrored_config(cfg, p)));
                REQUIRE(s.kind == CarriedSlopes::Kind::Arc);
                REQUIRE(m.kind == CarriedSlopes::Kind::Arc);
                CHECK(m.arc->same_arc(s.arc->mirrored()));
            }
        }
    }
}

TEST_CASE("property: cusp consistency of built tracks") {
    for (auto [p, q, c] : {std::tuple{2LL, 1LL, 1LL}, {4, 1, 1}, {4, -1, 3}, {6, 1, 3}, {8, 3, 1}}) {
        auto t = built(p, q, c);
        for (const auto& sw : t.switches) {
            INFO(sw.id << " " << sw.role);
            // the rung enters on the two-branch side; the circle runs through smoothly
            const auto& r0 = t.branches[sw.two[0].branch];
            const auto& r1 = t.branches[sw.two[1].branch];
            CHECK(r0.kind.rfind("rung", 0) == 0);
            CHECK(r1.kind == "arc");
            CHECK(t.branches[sw.one.branch].kind == "arc");
            bool lower = sw.role.rfind("lower", 0) == 0;
            bool start = sw.role.back() == 'S';
            int expected = (lower == start) ? -1 : +1;
            CHECK(sw.cusp_sign == expected);
        }
    }
}

TEST_CASE("property: cone rays are the simple cycles; kernel dimension") {
    gen::Rng rng(808);
    std::vector<TorusTrainTrack> tracks;
    for (int i = 0; i < 150; ++i)
        tracks.push_back(oracle::random_track(rng, 2 * rng.range(1, 4)));
    for (auto [p, q, c] : {std::tuple{2LL, 1LL, 1LL}, {4, 1, 1}, {4, -1, 1}, {6, 1, 3}, {8, -3, 1}})
        tracks.push_back(built(p, q, c));
    tracks.push_back(two_ray({1, 0}, {0, 0}, {1, 2}));
    tracks.push_back(longitude());
    for (const auto& t : tracks) {
        auto cone = weight_cone(t);
        CHECK(cone.rays == oracle::simple_cycles(t));
        CHECK(cone.kernel_dim == oracle::cycle_space_dim(t));
        CHECK(cone.kernel_dim == t.branches.size() - matrix_rank(switch_matrix(t), t.branches.size()));
    }
}

TEST_CASE("property: integral carried classes lie in the carried arc") {
    gen::Rng rng(4242);
    for (int i = 0; i < 100; ++i) {
        auto t = oracle::random_track(rng, 2 * rng.range(1, 4));
        REQUIRE(t.branches.size() <= 12);
        check_containment(t, 8);
    }
    for (auto [p, q] : {std::pair{2LL, 1LL}, {4, 1}, {4, -1}})
        check_containment(built(p, q, 1), 8);
    check_containment(built(6, 1, 3), 1);
}

TEST_CASE("property: enumerated weights satisfy the switch conditions") {
    gen::Rng rng(99);
    for (int i = 0; i < 40; ++i) {
        auto t = oracle::random_track(rng, 2 * rng.range(1, 3));
        auto rows = switch_matrix(t);
        std::set<std::vector<Integer>> seen;
        for (const auto& ic : integral_carried_classes(t, 4)) {
            CHECK(seen.insert(ic.weights).second);
            for (const auto& row : rows) {
                Integer s = 0;
                for (std::size_t k = 0; k < row.size(); ++k)
                    s += row[k] * ic.weights[k];
                CHECK(s == 0);
            }
        }
        CHECK(std::is_sorted(seen.begin(), seen.end()));
    }
}
