#include "dfill/ladder.hpp"

#include "dfill/arcs.hpp"
#include "dfill/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace dfill {

namespace {

struct End {
    Rational x;
    std::size_t rung;
    bool lower;
    int cusp;
};

struct Layout {
    long long k_min = 0;
    std::vector<std::vector<End>> levels;  // switches per level, sorted by x
    std::vector<std::size_t> lower_switch, upper_switch;

    const std::vector<End>& at(long long k) const { return levels[static_cast<std::size_t>(k - k_min)]; }
    std::size_t segments(long long k) const { return at(k).size() + 1; }
};

Layout layout_of(const LadderTrack& track) {
    validate_ladder(track);
    Layout lay;
    lay.k_min = track.k_min;
    lay.levels.resize(static_cast<std::size_t>(track.level_count()));
    for (std::size_t r = 0; r < track.rungs.size(); ++r) {
        const auto& g = track.rungs[r];
        lay.levels[static_cast<std::size_t>(g.level - track.k_min)].push_back({g.lower, r, true, g.lower_cusp});
        lay.levels[static_cast<std::size_t>(g.level + 1 - track.k_min)].push_back({g.upper, r, false, g.upper_cusp});
    }
    lay.lower_switch.resize(track.rungs.size());
    lay.upper_switch.resize(track.rungs.size());
    for (auto& level : lay.levels) {
        std::sort(level.begin(), level.end(), [](const End& a, const End& b) { return a.x < b.x; });
        for (std::size_t i = 0; i < level.size(); ++i)
            (level[i].lower ? lay.lower_switch : lay.upper_switch)[level[i].rung] = i;
    }
    return lay;
}

std::string level_position(long long k, const Rational& x) {
    return "level " + std::to_string(k) + " position " + rational_to_string(x);
}

// What a path can do after arriving at switch `idx` of level k.
struct Arrival {
    long long level;
    std::size_t idx;
    bool from_rung;
    int moving;  // direction along the line when arriving on it
};

std::optional<Arrival> arrival_of(const Layout& lay, const LadderTrack& track, const PathStep& s) {
    if (s.rung) {
        const auto& g = track.rungs[s.index];
        if (s.forward)
            return Arrival{g.level + 1, lay.upper_switch[s.index], true, 0};
        return Arrival{g.level, lay.lower_switch[s.index], true, 0};
    }
    std::size_t n = lay.at(s.level).size();
    if (s.forward) {
        if (s.index == n)
            return std::nullopt;
        return Arrival{s.level, s.index, false, +1};
    }
    if (s.index == 0)
        return std::nullopt;
    return Arrival{s.level, s.index - 1, false, -1};
}

PathStep line_step(long long k, std::size_t idx, int dir) {
    // leave switch idx of level k along the line in direction dir
    return PathStep{false, k, dir > 0 ? idx + 1 : idx, dir > 0};
}

PathStep rung_step(const End& e) { return PathStep{true, 0, e.rung, e.lower}; }

std::vector<CarriedPath> enumerate_from(const std::vector<PathStep>& sources, long long step_bound,
                                        const std::function<std::optional<Arrival>(const PathStep&)>& arrive,
                                        const std::function<std::vector<PathStep>(const Arrival&)>& options) {
    if (step_bound < 1 || step_bound > 10000)
        throw PreconditionError("step bound must lie in [1, 10000]");
    std::vector<CarriedPath> out;
    CarriedPath current;
    std::function<void()> go = [&]() {
        auto a = arrive(current.steps.back());
        if (!a) {
            out.push_back(current);
            out.back().truncated = false;
            return;
        }
        if (static_cast<long long>(current.steps.size()) >= step_bound) {
            out.push_back(current);
            out.back().truncated = true;
            return;
        }
        auto next = options(*a);
        if (next.empty()) {
            out.push_back(current);
            return;
        }
        for (const auto& s : next) {
            current.steps.push_back(s);
            go();
            current.steps.pop_back();
        }
    };
    for (const auto& s : sources) {
        current.steps = {s};
        go();
    }
    return out;
}

}  // namespace

void validate_ladder(const LadderTrack& track) {
    if (track.k_max < track.k_min)
        throw StructuralError("ladder has no levels");
    std::map<long long, std::set<Rational>> used;
    std::map<long long, std::vector<const LadderRung*>> bands;
    for (const auto& g : track.rungs) {
        if (g.level < track.k_min || g.level + 1 > track.k_max)
            throw StructuralError("rung from level " + std::to_string(g.level) + " leaves the level range");
        for (int c : {g.lower_cusp, g.upper_cusp}) {
            if (c != 1 && c != -1)
                throw StructuralError("cusp directions must be +1 or -1");
        }
        if (!used[g.level].insert(g.lower).second)
            throw StructuralError("two rung ends at " + level_position(g.level, g.lower));
        if (!used[g.level + 1].insert(g.upper).second)
            throw StructuralError("two rung ends at " + level_position(g.level + 1, g.upper));
        bands[g.level].push_back(&g);
    }
    for (auto& [k, rs] : bands) {
        std::sort(rs.begin(), rs.end(), [](const LadderRung* a, const LadderRung* b) { return a->lower < b->lower; });
        for (std::size_t i = 1; i < rs.size(); ++i) {
            if (rs[i]->upper < rs[i - 1]->upper)
                throw StructuralError("rungs cross between levels " + std::to_string(k) + " and " +
                                      std::to_string(k + 1));
        }
    }
}

bool is_leaf_type(const LadderTrack& track) {
    return std::all_of(track.rungs.begin(), track.rungs.end(), [](const LadderRung& g) {
        return g.lower_cusp == line_orientation(g.level) && g.upper_cusp == line_orientation(g.level + 1);
    });
}

std::optional<SwitchConflict> orientation_conflict(const LadderTrack& track, const std::vector<int>& line_dir,
                                                   const std::vector<bool>& rung_up) {
    Layout lay = layout_of(track);
    if (line_dir.size() != lay.levels.size() || rung_up.size() != track.rungs.size())
        throw StructuralError("orientation data does not match the ladder");
    for (std::size_t l = 0; l < lay.levels.size(); ++l) {
        for (const auto& e : lay.levels[l]) {
            bool outgoing = e.lower == rung_up[e.rung];
            // the line runs from the two-branch side into the cusp direction
            // exactly when the rung flows in
            bool ok = line_dir[l] == e.cusp ? !outgoing : outgoing;
            if (!ok)
                return SwitchConflict{lay.k_min + static_cast<long long>(l), e.x};
        }
    }
    return std::nullopt;
}

OrientedLadder orient_ladder(const LadderTrack& track) {
    validate_ladder(track);
    OrientedLadder o;
    o.track = track;
    for (long long k = track.k_min; k <= track.k_max; ++k)
        o.line_dir.push_back(k % 2 == 0 ? line_orientation(k) : -line_orientation(k));
    for (const auto& g : track.rungs)
        o.rung_up.push_back(g.level % 2 != 0);
    if (auto bad = orientation_conflict(track, o.line_dir, o.rung_up))
        throw StructuralError("not a tau_l-type track: cusp at " + level_position(bad->level, bad->position) +
                              " disagrees with the level orientation");
    return o;
}

std::vector<long long> CarriedPath::lines() const {
    std::vector<long long> out;
    for (const auto& s : steps) {
        if (!s.rung && std::find(out.begin(), out.end(), s.level) == out.end())
            out.push_back(s.level);
    }
    return out;
}

std::vector<CarriedPath> enumerate_carried_paths(const OrientedLadder& ladder, long long step_bound) {
    const LadderTrack& track = ladder.track;
    Layout lay = layout_of(track);
    std::vector<PathStep> sources;
    for (long long k = track.k_min; k <= track.k_max; ++k) {
        int d = ladder.line_dir[static_cast<std::size_t>(k - track.k_min)];
        sources.push_back(PathStep{false, k, d > 0 ? 0 : lay.at(k).size(), d > 0});
    }
    auto arrive = [&](const PathStep& s) { return arrival_of(lay, track, s); };
    auto options = [&](const Arrival& a) {
        int d = ladder.line_dir[static_cast<std::size_t>(a.level - track.k_min)];
        const End& e = lay.at(a.level)[a.idx];
        std::vector<PathStep> next{line_step(a.level, a.idx, d)};
        bool outgoing = e.lower == ladder.rung_up[e.rung];
        if (!a.from_rung && outgoing)
            next.push_back(rung_step(e));
        return next;
    };
    return enumerate_from(sources, step_bound, arrive, options);
}

namespace {

std::vector<PathStep> smooth_sources(const Layout& lay, const LadderTrack& track) {
    std::vector<PathStep> sources;
    for (long long k = track.k_min; k <= track.k_max; ++k) {
        sources.push_back(PathStep{false, k, 0, true});
        sources.push_back(PathStep{false, k, lay.at(k).size(), false});
    }
    return sources;
}

std::vector<PathStep> smooth_options(const Layout& lay, const Arrival& a) {
    const End& e = lay.at(a.level)[a.idx];
    if (a.from_rung)
        return {line_step(a.level, a.idx, e.cusp)};
    std::vector<PathStep> next{line_step(a.level, a.idx, a.moving)};
    if (a.moving == -e.cusp)
        next.push_back(rung_step(e));
    return next;
}

}  // namespace

std::vector<CarriedPath> enumerate_smooth_paths(const LadderTrack& track, long long step_bound) {
    Layout lay = layout_of(track);
    auto arrive = [&](const PathStep& s) { return arrival_of(lay, track, s); };
    auto options = [&](const Arrival& a) { return smooth_options(lay, a); };
    return enumerate_from(smooth_sources(lay, track), step_bound, arrive, options);
}

std::optional<CarriedPath> smooth_path_over_two_lines(const LadderTrack& track) {
    Layout lay = layout_of(track);
    // breadth-first over (step, levels met so far); two recorded levels suffice
    using Met = std::pair<long long, long long>;  // second is first when only one
    using State = std::pair<PathStep, Met>;
    std::map<State, std::optional<State>> parent;
    std::vector<State> queue;
    auto meet = [](const Met& m, const PathStep& s, bool& third) -> Met {
        third = false;
        if (s.rung || s.level == m.first || s.level == m.second)
            return m;
        if (m.first == m.second)
            return {m.first, s.level};
        third = true;
        return m;
    };
    for (const auto& s : smooth_sources(lay, track)) {
        State st{s, {s.level, s.level}};
        if (parent.emplace(st, std::nullopt).second)
            queue.push_back(st);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        State cur = queue[head];
        auto a = arrival_of(lay, track, cur.first);
        if (!a)
            continue;
        for (const auto& s : smooth_options(lay, *a)) {
            bool third = false;
            Met m = meet(cur.second, s, third);
            if (third) {
                CarriedPath p;
                p.steps.push_back(s);
                std::optional<State> at = cur;
                while (at) {
                    p.steps.push_back(at->first);
                    at = parent[*at];
                }
                std::reverse(p.steps.begin(), p.steps.end());
                return p;
            }
            State next{s, m};
            if (parent.emplace(next, cur).second)
                queue.push_back(next);
        }
    }
    return std::nullopt;
}

std::optional<std::string> two_line_violation(const CarriedPath& path) {
    auto lines = path.lines();
    long long even = 0, odd = 0;
    for (auto k : lines)
        (k % 2 == 0 ? even : odd) += 1;
    if (even > 1 || odd > 1) {
        std::string s = "meets levels";
        for (auto k : lines)
            s += " " + std::to_string(k);
        return s;
    }
    const auto& st = path.steps;
    for (std::size_t i = 0; i < st.size(); ++i) {
        if (!st[i].rung && st[i].level % 2 == 0) {
            for (std::size_t j = i; j < st.size(); ++j) {
                if (st[j].rung || st[j].level != st[i].level)
                    return "leaves even level " + std::to_string(st[i].level);
            }
            break;
        }
    }
    for (std::size_t i = st.size(); i-- > 0;) {
        if (!st[i].rung && st[i].level % 2 != 0) {
            for (std::size_t j = 0; j <= i; ++j) {
                if (st[j].rung || st[j].level != st[i].level)
                    return "arrives on odd level " + std::to_string(st[i].level);
            }
            break;
        }
    }
    return std::nullopt;
}

TwoLineResult check_two_line_property(const OrientedLadder& ladder, long long step_bound) {
    TwoLineResult res;
    auto paths = enumerate_carried_paths(ladder, step_bound);
    res.paths = paths.size();
    for (const auto& p : paths) {
        if (auto why = two_line_violation(p)) {
            res.ok = false;
            res.witness = p;
            res.reason = *why;
            break;
        }
    }
    return res;
}

bool separation_check(const LadderTrack& track, const CarriedPath& path) {
    auto met = path.lines();
    if (met.empty())
        throw PreconditionError("path meets no level");
    Layout lay = layout_of(track);

    std::set<std::pair<long long, std::size_t>> removed;
    std::map<long long, std::vector<std::pair<Rational, Rational>>> cuts;  // band -> (lower, upper) of path rungs
    for (const auto& s : path.steps) {
        if (s.rung) {
            const auto& g = track.rungs[s.index];
            cuts[g.level].emplace_back(g.lower, g.upper);
        } else {
            removed.insert({s.level, s.index});
        }
    }

    // nodes: segments of every level, then band pieces
    std::vector<std::size_t> seg_base;
    std::size_t count = 0;
    for (long long k = track.k_min; k <= track.k_max; ++k) {
        seg_base.push_back(count);
        count += lay.segments(k);
    }
    std::map<long long, std::size_t> band_base;
    for (long long k = track.k_min; k < track.k_max; ++k) {
        band_base[k] = count;
        count += cuts[k].size() + 1;
    }
    std::vector<std::size_t> parent(count);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

    for (long long k = track.k_min; k <= track.k_max; ++k) {
        const auto& sw = lay.at(k);
        for (std::size_t i = 0; i < lay.segments(k); ++i) {
            if (removed.count({k, i}))
                continue;
            std::size_t node = seg_base[static_cast<std::size_t>(k - track.k_min)] + i;
            // the segment ends before switch i (or runs to +infinity)
            auto piece = [&](long long band, bool use_lower) {
                std::size_t n = 0;
                for (const auto& [lo, up] : cuts[band]) {
                    const Rational& x = use_lower ? lo : up;
                    if (i == sw.size() || x < sw[i].x)
                        ++n;
                }
                return band_base[band] + n;
            };
            if (k < track.k_max)
                unite(node, piece(k, true));
            if (k > track.k_min)
                unite(node, piece(k - 1, false));
        }
    }

    for (long long j : met) {
        std::set<std::size_t> below;
        for (long long k = track.k_min; k < j - 1; ++k) {
            for (std::size_t i = 0; i < lay.segments(k); ++i) {
                if (!removed.count({k, i}))
                    below.insert(find(seg_base[static_cast<std::size_t>(k - track.k_min)] + i));
            }
        }
        for (long long k = j + 2; k <= track.k_max; ++k) {
            for (std::size_t i = 0; i < lay.segments(k); ++i) {
                if (!removed.count({k, i}) && below.count(find(seg_base[static_cast<std::size_t>(k - track.k_min)] + i)))
                    return false;
            }
        }
    }
    return true;
}

LadderTrack random_ladder(std::mt19937_64& rng, long long max_levels, long long max_rungs, bool leaf_type) {
    if (max_levels < 1 || max_rungs < 0)
        throw PreconditionError("need at least one level and a nonnegative rung count");
    auto uniform = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
    LadderTrack t;
    long long n = uniform(1, max_levels);
    t.k_min = uniform(-4, 4);
    t.k_max = t.k_min + n - 1;
    const long long pool = 8 * (max_rungs + 1);
    std::map<long long, std::set<long long>> used;
    auto pick = [&](long long level, long long r) {
        std::vector<long long> xs;
        while (static_cast<long long>(xs.size()) < r) {
            long long x = uniform(0, pool - 1);
            if (used[level].insert(x).second)
                xs.push_back(x);
        }
        std::sort(xs.begin(), xs.end());
        return xs;
    };
    for (long long k = t.k_min; k < t.k_max; ++k) {
        long long r = uniform(0, max_rungs);
        auto lo = pick(k, r);
        auto up = pick(k + 1, r);
        for (long long i = 0; i < r; ++i) {
            LadderRung g;
            g.level = k;
            g.lower = Rational(lo[static_cast<std::size_t>(i)]) / 4;
            g.upper = Rational(up[static_cast<std::size_t>(i)]) / 4;
            if (leaf_type) {
                g.lower_cusp = line_orientation(k);
                g.upper_cusp = line_orientation(k + 1);
            } else {
                g.lower_cusp = uniform(0, 1) ? 1 : -1;
                g.upper_cusp = uniform(0, 1) ? 1 : -1;
            }
            t.rungs.push_back(g);
        }
    }
    return t;
}

LadderSummary verify_ladders(long long max_levels, long long max_rungs, long long cases, std::uint64_t seed) {
    if (cases < 0)
        throw PreconditionError("case count must be nonnegative");
    if (max_levels < 1 || max_levels > 64 || max_rungs < 0 || max_rungs > 64)
        throw PreconditionError("levels must lie in [1, 64] and rungs in [0, 64]");
    LadderSummary sum;
    sum.cases = cases;
    sum.max_levels = max_levels;
    sum.max_rungs = max_rungs;
    sum.seed = seed;
    for (long long i = 0; i < cases; ++i) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
        LadderTrack t = random_ladder(rng, max_levels, max_rungs, true);
        OrientedLadder o = orient_ladder(t);
        auto paths = enumerate_carried_paths(o, 10000);
        sum.total_paths += paths.size();
        sum.max_paths = std::max(sum.max_paths, paths.size());
        for (const auto& p : paths) {
            if (p.truncated) {
                ++sum.truncated_paths;
                continue;
            }
            if (two_line_violation(p)) {
                ++sum.violations;
                if (!sum.first_violation_case)
                    sum.first_violation_case = i;
            }
            ++sum.separation_checks;
            if (!separation_check(t, p))
                ++sum.separation_failures;
        }
        if (!t.rungs.empty()) {
            std::vector<bool> flipped(o.rung_up.size());
            for (std::size_t r = 0; r < flipped.size(); ++r)
                flipped[r] = !o.rung_up[r];
            if (!orientation_conflict(t, o.line_dir, flipped))
                ++sum.alternative_orientation_accepted;
        }

        std::mt19937_64 crng(~(seed + static_cast<std::uint64_t>(i)));
        LadderTrack c = random_ladder(crng, max_levels, max_rungs, false);
        if (smooth_path_over_two_lines(c))
            ++sum.control_over_two_lines;
    }
    return sum;
}

}  // namespace dfill
