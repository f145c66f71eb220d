// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "gen.hpp"
#include "track_oracle.hpp"

#include "cli.hpp"
#include "dfill/census.hpp"
#include "dfill/filling.hpp"
#include "dfill/json_io.hpp"
#include "dfill/ladder.hpp"
#include "dfill/tracks.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

using namespace dfill;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

Slope S(long long a, long long b = 1) { return Slope(Integer(a), Integer(b)); }

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    std::ostringstream o;
    o.precision(3);
    o << std::fixed << s << " s";
    return o.str();
}

std::set<std::string> ends_of(const SlopeInterval& j) { return {j.end_a().to_string(), j.end_b().to_string()}; }

Outcome census_reproduction() {
    auto t0 = Clock::now();
    auto records = census_verify();
    const auto& entries = census_entries();
    std::size_t exact = 0, closure = 0, bad = 0;
    std::string failures;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const auto& e = entries[i];
        bool closures_equal = ends_of(r.computed_J) == ends_of(e.i_nls.arc) && r.computed_J.same_arc(e.i_nls.arc);
        if (!closures_equal || r.status == MatchStatus::Mismatch) {
            ++bad;
            failures += " " + r.name;
        }
        (r.status == MatchStatus::ExactMatch ? exact : closure) += r.status != MatchStatus::Mismatch;
    }
    // the two closure notes the printed data forces
    auto status_of = [&](const std::string& n) { return verify_entry(census_entry(n)).status; };
    bool notes_ok = status_of("o9_19364") == MatchStatus::ClosureNote && status_of("m003") == MatchStatus::ClosureNote &&
                    records.size() == 15;
    double dt = seconds_since(t0);
    Outcome o;
    o.pass = bad == 0 && notes_ok && dt < 1.0;
    o.detail = std::to_string(records.size()) + " rows, " + std::to_string(exact) + " ExactMatch, " +
               std::to_string(closure) + " ClosureNote, " + std::to_string(bad) + " closure mismatches" + failures +
               ", " + fmt_seconds(dt);
    return o;
}

std::vector<std::pair<long long, long long>> sweep_loci() {
    std::vector<std::pair<long long, long long>> out;
    for (long long p = 2; p <= 12; p += 2) {
        for (long long q = -p / 2 + 1; q <= p / 2; ++q) {
            if (q % 2 != 0)
                out.emplace_back(p, q);
        }
    }
    return out;
}

struct SweepCounts {
    std::size_t cases = 0;
    std::size_t dist1 = 0, dist1_in_j = 0;
    std::size_t e_points = 0, e_in_j = 0;
    std::size_t dist2_in_j = 0, dist2_other = 0;
    double seconds = 0;
};

SweepCounts run_sweep() {
    auto t0 = Clock::now();
    auto slopes = gen::all_slopes(60, 60);
    SweepCounts k;
    for (auto [p, q] : sweep_loci()) {
        DegeneracyLocus locus(p, q);
        ClosedArc e = set_E(locus);
        for (long long c = 1; c <= 3; ++c) {
            SlopeInterval j = interval_J(locus, c);
            for (const auto& s : slopes) {
                ++k.cases;
                bool in_j = j.contains(s);
                Integer d = locus_distance(locus, s);
                if (d == 1) {
                    ++k.dist1;
                    k.dist1_in_j += in_j;
                }
                if (e.contains(s)) {
                    ++k.e_points;
                    k.e_in_j += in_j;
                }
                if (d == 2 && in_j) {
                    ++k.dist2_in_j;
                    if (!(p == 2 && q == 1 && s == S(0)))
                        ++k.dist2_other;
                }
            }
            // the closed ends of E as well, whatever their height
            for (const auto& s : {e.interior.end_a(), e.interior.end_b()}) {
                ++k.e_points;
                k.e_in_j += j.contains(s);
            }
        }
    }
    k.seconds = seconds_since(t0);
    return k;
}

Outcome canonical_meridian_check() {
    auto t0 = Clock::now();
    std::size_t pairs = 0, bad = 0, ties = 0;
    for (long long u = 1; u <= 40; ++u) {
        for (long long v = -80; v <= 80; ++v) {
            if (std::gcd(u, v < 0 ? -v : v) != 1)
                continue;
            ++pairs;
            auto m = canonical_meridian(S(u, v));
            // delta = u mu0 + v lambda = u (mu0 + k lambda) + (v - k u) lambda
            Integer vp = Integer(v) - m.k * u;
            bool ok = m.new_delta == Slope(Integer(u), vp) && 2 * abs(vp) <= u;
            if (2 * abs(vp) == u) {
                ++ties;
                ok = ok && u == 2 && m.new_delta == S(2);
            }
            bad += !ok;
        }
    }
    double dt = seconds_since(t0);
    return {bad == 0 && dt < 1.0, std::to_string(pairs) + " coprime pairs, " + std::to_string(ties) +
                                      " ties (all u = 2, delta = 2), " + std::to_string(bad) + " failures, " +
                                      fmt_seconds(dt)};
}

Outcome ladder_check() {
    auto t0 = Clock::now();
    auto s = verify_ladders(8, 6, 10000, 0);
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << s.cases << " ladders, " << s.total_paths << " maximal paths, " << s.violations << " violations, "
      << s.separation_failures << " separation failures, " << s.alternative_orientation_accepted
      << " alternative orientations; control: " << s.control_over_two_lines
      << " random-cusp ladders with a smooth path over three levels, " << fmt_seconds(dt);
    return {s.ok() && s.cases == 10000 && s.control_over_two_lines > 0 && dt < 60.0, d.str()};
}

// Classes of integral weights with entries <= bound that fall outside the arc.
std::size_t classes_outside(const TorusTrainTrack& t, const CarriedSlopes& cs, long long bound, std::size_t& n) {
    std::size_t outside = 0;
    for (const auto& c : integral_carried_classes(t, bound)) {
        if (c.a == 0 && c.b == 0)
            continue;
        ++n;
        outside += !cs.contains(Slope(c.a, c.b));
    }
    return outside;
}

Outcome weight_cone_check() {
    std::size_t random_classes = 0, random_outside = 0;
    gen::Rng rng(2024);
    for (int i = 0; i < 100; ++i) {
        auto t = oracle::random_track(rng, 2 * rng.range(1, 4));  // at most 12 branches
        random_outside += classes_outside(t, carried_slopes(t), 8, random_classes);
    }

    // Built tracks: every parity-compatible locus with p <= 6, c <= 3.  Up to
    // 18 branches the bound-8 enumeration is run literally.  Above that it is
    // out of reach, so weights there are covered through the cycle
    // decomposition: nonnegative integral circulations are sums of simple
    // directed cycles, and the cone rays are checked to be exactly those cycles.
    std::size_t built = 0, literal = 0, via_cycles = 0, built_classes = 0, built_outside = 0, cycle_failures = 0;
    for (long long p = 2; p <= 6; p += 2) {
        for (long long q = -p / 2 + 1; q <= p / 2; ++q) {
            if (q % 2 == 0)
                continue;
            for (long long c = 1; c <= 3; ++c) {
                if ((q + c) % 2 != 0)
                    continue;
                DegeneracyLocus l(p, q);
                auto t = build_boundary_track(l, c, default_config(l, c));
                auto cone = weight_cone(t);
                auto cs = carried_slopes(t, cone);
                ++built;
                if (t.branches.size() <= 18) {
                    ++literal;
                    built_outside += classes_outside(t, cs, 8, built_classes);
                    continue;
                }
                ++via_cycles;
                bool ok = cone.rays == oracle::simple_cycles(t) && cs.kind == CarriedSlopes::Kind::Arc;
                for (const auto& r : cone.rays) {
                    auto [a, b] = carried_class(t, r);
                    if ((a != 0 || b != 0) && !cs.contains(Slope(a, b)))
                        ok = false;
                }
                cycle_failures += !ok;
                built_outside += classes_outside(t, cs, t.branches.size() <= 36 ? 2 : 1, built_classes);
            }
        }
    }
    std::ostringstream d;
    d << "100 random tracks: " << random_classes << " classes at bound 8, " << random_outside << " outside; " << built
      << " built tracks: " << literal << " enumerated at bound 8, " << via_cycles
      << " via cycle decomposition (enumerated at bound 2, or 1 above 36 branches), " << built_classes << " classes, " << built_outside
      << " outside, " << cycle_failures << " cycle-oracle failures";
    return {random_outside == 0 && built_outside == 0 && cycle_failures == 0, d.str()};
}

Outcome boundary_track_target() {
    struct Case {
        long long p, q, c;
    };
    std::vector<Case> cases{{2, 1, 1}, {4, 1, 1}, {4, -1, 1}, {6, 1, 3}};
    std::size_t hits = 0;
    std::ostringstream d;
    d << "(exploratory) default config:";
    for (auto [p, q, c] : cases) {
        DegeneracyLocus l(p, q);
        auto t = build_boundary_track(l, c, default_config(l, c));
        auto cs = carried_slopes(t);
        SlopeInterval j = interval_J(l, c);
        std::set<std::string> want{Slope(Integer(p), Integer(q + c)).to_string(),
                                   Slope(Integer(p), Integer(q - c)).to_string()};
        bool ok = cs.kind == CarriedSlopes::Kind::Arc && ends_of(*cs.arc) == want && cs.arc->same_arc(j);
        hits += ok;
        d << " " << l.to_string() << " c=" << c << " -> " << cs.to_string() << (ok ? "" : " (MISS)") << ";";
    }
    return {hits == cases.size(), d.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    auto dir = std::filesystem::temp_directory_path() / "dfill_acceptance";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream(path) << content;
    return path.string();
}

Outcome determinism_check() {
    auto cli = [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return std::make_pair(code, out.str());
    };
    MonodromyBoundaryAction a;
    a.circles = {{"A", 4}, {"B", 4}, {"C", 6}};
    a.permutation = {{"A", "B"}, {"B", "A"}, {"C", "C"}};
    a.shifts = {{"A", 1}, {"C", 1}};
    auto action = temp_file("action.json", to_json(a).dump(2));
    auto arcs = temp_file("arcs.json", cli({"arcs", "refine", "--input", action}).second);
    auto track = temp_file("track.json", cli({"track", "build", "--locus", "6,1", "--orbit-length", "3"}).second);
    auto config = temp_file("config.json", to_json(default_config(DegeneracyLocus(4, 1), 1)).dump(2));
    std::vector<std::vector<std::string>> commands{
        {"analyze", "--locus", "2,1", "--orbit-length", "1", "--slope", "0", "--slope", "1/2"},
        {"analyze", "--input", action, "--slope", "3", "--slope", "1"},
        {"interval", "--locus", "4,1", "--orbit-length", "1"},
        {"census", "list"},
        {"census", "show", "o9_26541"},
        {"census", "verify"},
        {"arcs", "refine", "--input", action},
        {"arcs", "validate", "--input", arcs},
        {"track", "build", "--locus", "4,-1", "--orbit-length", "1"},
        {"track", "build", "--locus", "4,1", "--config", config},
        {"track", "slopes", "--input", track, "--check-bound", "1"},
        {"ladder", "verify", "--levels", "6", "--rungs", "5", "--cases", "200", "--seed", "42"},
        {"coords", "canonical", "--delta", "17/40"},
    };
    std::size_t identical = 0;
    std::string failures;
    for (const auto& c : commands) {
        auto first = cli(c), second = cli(c);
        bool json_ok = first.first == 0 && first == second;
        try {
            parse_json_text(first.second);
        } catch (const std::exception&) {
            json_ok = false;
        }
        if (json_ok)
            ++identical;
        else
            failures += " " + c[0] + (c.size() > 1 ? " " + c[1] : "");
    }
    return {identical == commands.size(), std::to_string(identical) + "/" + std::to_string(commands.size()) +
                                              " commands byte-identical on rerun" + failures};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
    SweepCounts sweep;
    bool swept = false;
    auto ensure_sweep = [&] {
        if (!swept)
            sweep = run_sweep();
        swept = true;
    };

    criteria.push_back({"1 census reproduction", census_reproduction});
    criteria.push_back({"2 distance-one slopes avoid J", [&] {
                            ensure_sweep();
                            return Outcome{sweep.dist1_in_j == 0 && sweep.dist1 > 0 && sweep.seconds < 10.0,
                                           std::to_string(sweep.cases) + " (locus, c, slope) cases, " +
                                               std::to_string(sweep.dist1) + " at distance one, " +
                                               std::to_string(sweep.dist1_in_j) + " in J, sweep " +
                                               fmt_seconds(sweep.seconds)};
                        }});
    criteria.push_back({"3 E disjoint from J", [&] {
                            ensure_sweep();
                            return Outcome{sweep.e_in_j == 0 && sweep.e_points > 0,
                                           std::to_string(sweep.e_points) + " points of E checked, " +
                                               std::to_string(sweep.e_in_j) + " in J"};
                        }});
    criteria.push_back({"4 distance two inside J only at (2;1), slope 0", [&] {
                            ensure_sweep();
                            return Outcome{sweep.dist2_other == 0 && sweep.dist2_in_j > 0,
                                           std::to_string(sweep.dist2_in_j) + " hits, " +
                                               std::to_string(sweep.dist2_other) + " elsewhere"};
                        }});
    criteria.push_back({"5 canonical meridian", canonical_meridian_check});
    criteria.push_back({"6 ladder two-line property", ladder_check});
    criteria.push_back({"7 weight cone against enumeration", weight_cone_check});
    criteria.push_back({"8 boundary track reproduces J", boundary_track_target});
    criteria.push_back({"9 CLI determinism", determinism_check});

    int failed = 0;
    for (auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
    return failed == 0 ? 0 : 1;
}
