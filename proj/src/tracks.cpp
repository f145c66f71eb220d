#include "dfill/tracks.hpp"

#include "dfill/arcs.hpp"
#include "dfill/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace dfill {

void validate_track(const TorusTrainTrack& track) {
    const std::size_t n = track.branches.size();
    // attached[b][0] tail, [1] head: index of the switch, or -1
    std::vector<std::array<long long, 2>> attached(n, {-1, -1});
    for (std::size_t s = 0; s < track.switches.size(); ++s) {
        const auto& sw = track.switches[s];
        for (const EndRef* e : {&sw.one, &sw.two[0], &sw.two[1]}) {
            if (e->branch >= n)
                throw StructuralError("switch '" + sw.id + "' references a missing branch");
            auto& slot = attached[e->branch][e->end == BranchEnd::Head ? 1 : 0];
            if (slot >= 0)
                throw StructuralError("branch '" + track.branches[e->branch].id + "' has an end attached twice");
            slot = static_cast<long long>(s);
        }
        bool one_in = sw.one.end == BranchEnd::Head;
        for (const auto& e : sw.two) {
            bool in = e.end == BranchEnd::Head;
            if (in == one_in)
                throw StructuralError("switch '" + sw.id + "' is not consistently oriented");
        }
    }
    std::vector<std::size_t> parent(track.switches.size() + n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    const std::size_t S = track.switches.size();
    for (std::size_t b = 0; b < n; ++b) {
        bool tail = attached[b][0] >= 0;
        bool head = attached[b][1] >= 0;
        if (tail != head)
            throw StructuralError("branch '" + track.branches[b].id + "' has a free end");
        if (tail) {
            parent[find(S + b)] = find(static_cast<std::size_t>(attached[b][0]));
            parent[find(static_cast<std::size_t>(attached[b][1]))] = find(static_cast<std::size_t>(attached[b][0]));
        }
    }
    std::set<std::size_t> roots;
    for (std::size_t x = 0; x < parent.size(); ++x)
        roots.insert(find(x));
    if (roots.size() > 1)
        throw StructuralError("train track is not connected (" + std::to_string(roots.size()) + " components)");
}

std::vector<std::vector<Integer>> switch_matrix(const TorusTrainTrack& track) {
    std::vector<std::vector<Integer>> rows;
    for (const auto& sw : track.switches) {
        std::vector<Integer> row(track.branches.size(), 0);
        row[sw.one.branch] += 1;
        row[sw.two[0].branch] -= 1;
        row[sw.two[1].branch] -= 1;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::size_t matrix_rank(std::vector<std::vector<Integer>> rows, std::size_t columns) {
    std::vector<std::vector<Rational>> m;
    for (auto& r : rows) {
        std::vector<Rational> row;
        for (auto& x : r)
            row.emplace_back(x);
        m.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < columns && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][col] == 0)
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0)
                continue;
            Rational f = m[r][col] / m[rank][col];
            for (std::size_t k = col; k < columns; ++k)
                m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

namespace {

using Bits = std::vector<std::uint64_t>;

Bits zero_set(const WeightVector& w) {
    Bits bits((w.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0)
            bits[i / 64] |= std::uint64_t(1) << (i % 64);
    }
    return bits;
}

bool superset(const Bits& big, const Bits& small) {
    for (std::size_t i = 0; i < big.size(); ++i) {
        if ((big[i] & small[i]) != small[i])
            return false;
    }
    return true;
}

void make_primitive(WeightVector& w) {
    Integer g = 0;
    for (const auto& x : w)
        g = gcd(g, x);
    if (g > 1) {
        for (auto& x : w)
            x /= g;
    }
}

}  // namespace

WeightCone weight_cone(const TorusTrainTrack& track) {
    validate_track(track);
    const std::size_t n = track.branches.size();
    auto rows = switch_matrix(track);

    WeightCone cone;
    cone.kernel_dim = n - matrix_rank(rows, n);

    std::vector<WeightVector> rays;
    for (std::size_t i = 0; i < n; ++i) {
        WeightVector e(n, 0);
        e[i] = 1;
        rays.push_back(std::move(e));
    }

    for (const auto& h : rows) {
        std::vector<Integer> val(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r) {
            Integer s = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (h[i] != 0 && rays[r][i] != 0)
                    s += h[i] * rays[r][i];
            }
            val[r] = s;
        }
        std::vector<Bits> zeros;
        zeros.reserve(rays.size());
        for (const auto& r : rays)
            zeros.push_back(zero_set(r));

        std::set<WeightVector> next;
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (val[r] == 0)
                next.insert(rays[r]);
            else
                (val[r] > 0 ? pos : neg).push_back(r);
        }
        for (std::size_t ip : pos) {
            for (std::size_t in : neg) {
                Bits common(zeros[ip].size());
                for (std::size_t k = 0; k < common.size(); ++k)
                    common[k] = zeros[ip][k] & zeros[in][k];
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r != ip && r != in && superset(zeros[r], common))
                        adjacent = false;
                }
                if (!adjacent)
                    continue;
                WeightVector w(n);
                Integer a = val[ip];
                Integer b = -val[in];
                for (std::size_t i = 0; i < n; ++i)
                    w[i] = a * rays[in][i] + b * rays[ip][i];
                make_primitive(w);
                next.insert(std::move(w));
            }
        }
        rays.assign(next.begin(), next.end());
    }
    cone.rays = std::move(rays);
    return cone;
}

std::pair<Integer, Integer> carried_class(const TorusTrainTrack& track, const WeightVector& w) {
    if (w.size() != track.branches.size())
        throw StructuralError("weight vector length does not match the branch count");
    Integer a = 0, b = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        a += w[i] * track.branches[i].a;
        b += w[i] * track.branches[i].b;
    }
    return {a, b};
}

std::string to_string(CarriedSlopes::Kind kind) {
    switch (kind) {
    case CarriedSlopes::Kind::Empty: return "empty";
    case CarriedSlopes::Kind::Single: return "single";
    case CarriedSlopes::Kind::Arc: return "arc";
    case CarriedSlopes::Kind::All: return "all";
    }
    return "?";
}

bool CarriedSlopes::contains(const Slope& s) const {
    switch (kind) {
    case Kind::Empty: return false;
    case Kind::Single: return *single == s;
    case Kind::All: return true;
    case Kind::Arc:
        if (arc->contains(s))
            return true;
        return (end_a_attained && s == arc->end_a()) || (end_b_attained && s == arc->end_b());
    }
    return false;
}

std::string CarriedSlopes::to_string() const {
    switch (kind) {
    case Kind::Empty: return "carries nothing";
    case Kind::Single: return single->to_string();
    case Kind::All: return "all slopes";
    case Kind::Arc: {
        std::string a = (end_a_attained ? "[" : "(") + arc->end_a().to_string();
        std::string b = arc->end_b().to_string() + (end_b_attained ? "]" : ")");
        return a + ", " + b + " avoiding " + arc->excluded().to_string();
    }
    }
    return "?";
}

CarriedSlopes carried_slopes(const TorusTrainTrack& track) {
    return carried_slopes(track, weight_cone(track));
}

CarriedSlopes carried_slopes(const TorusTrainTrack& track, const WeightCone& cone) {
    struct V {
        Integer x, y;
    };
    std::vector<V> vs;
    for (const auto& r : cone.rays) {
        auto [a, b] = carried_class(track, r);
        if (a != 0 || b != 0)
            vs.push_back({a, b});
    }
    CarriedSlopes out;
    if (vs.empty())
        return out;

    auto cross = [](const V& u, const V& v) { return Integer(u.x * v.y - u.y * v.x); };
    auto dot = [](const V& u, const V& v) { return Integer(u.x * v.x + u.y * v.y); };
    auto slope_of = [](const V& v) { return Slope(v.x, v.y); };

    // Clockwise edge: every vector lies weakly counterclockwise of it, within pi.
    auto edge = [&](int orientation) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < vs.size(); ++i) {
            bool ok = true;
            for (const auto& v : vs) {
                Integer c = cross(vs[i], v) * orientation;
                if (c < 0 || (c == 0 && dot(vs[i], v) < 0)) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                return i;
        }
        return std::nullopt;
    };
    auto right = edge(+1);
    if (!right) {
        bool all_parallel = std::all_of(vs.begin(), vs.end(), [&](const V& v) { return cross(vs[0], v) == 0; });
        if (all_parallel) {
            out.kind = CarriedSlopes::Kind::Single;
            out.single = slope_of(vs[0]);
        } else {
            out.kind = CarriedSlopes::Kind::All;
        }
        return out;
    }
    auto left = edge(-1);
    const V& v1 = vs[*right];
    const V& v2 = vs[*left];
    if (cross(v1, v2) == 0) {
        out.kind = CarriedSlopes::Kind::Single;
        out.single = slope_of(v1);
        return out;
    }
    out.kind = CarriedSlopes::Kind::Arc;
    out.arc = SlopeInterval(slope_of(v1), slope_of(v2), slope_of(V{v1.x - v2.x, v1.y - v2.y}));
    out.end_a_attained = true;
    out.end_b_attained = true;
    return out;
}

namespace {

// Depth-first search over weights in [0, bound] with constraint propagation.
// Calls visit(w) for every nonzero solution, in lexicographic order.
void search_weights(const TorusTrainTrack& track, long long bound,
                    const std::function<void(const std::vector<long long>&)>& visit) {
    validate_track(track);
    const std::size_t n = track.branches.size();
    std::vector<std::vector<std::pair<std::size_t, long long>>> rows;
    std::vector<std::vector<std::size_t>> rows_of(n);
    for (const auto& sw : track.switches) {
        std::map<std::size_t, long long> coeff;
        coeff[sw.one.branch] += 1;
        coeff[sw.two[0].branch] -= 1;
        coeff[sw.two[1].branch] -= 1;
        std::vector<std::pair<std::size_t, long long>> row;
        for (auto [b, k] : coeff) {
            if (k != 0)
                row.emplace_back(b, k);
        }
        for (auto [b, k] : row)
            rows_of[b].push_back(rows.size());
        rows.push_back(std::move(row));
    }

    std::vector<long long> w(n, -1);
    std::vector<std::size_t> trail;

    // Returns false on contradiction; forced assignments are pushed on trail.
    std::function<bool(std::size_t)> propagate = [&](std::size_t start_var) {
        std::vector<std::size_t> queue(rows_of[start_var].begin(), rows_of[start_var].end());
        while (!queue.empty()) {
            std::size_t r = queue.back();
            queue.pop_back();
            long long known = 0, lo = 0, hi = 0;
            std::size_t unknown_count = 0, unknown_var = 0;
            long long unknown_coeff = 0;
            for (auto [b, k] : rows[r]) {
                if (w[b] >= 0) {
                    known += k * w[b];
                } else {
                    ++unknown_count;
                    unknown_var = b;
                    unknown_coeff = k;
                    (k > 0 ? hi : lo) += k * bound;
                }
            }
            // need known + sum(unknown) = 0 with sum(unknown) in [lo, hi]
            if (-known < lo || -known > hi)
                return false;
            if (unknown_count == 1) {
                if ((-known) % unknown_coeff != 0)
                    return false;
                long long v = -known / unknown_coeff;
                if (v < 0 || v > bound)
                    return false;
                w[unknown_var] = v;
                trail.push_back(unknown_var);
                for (std::size_t r2 : rows_of[unknown_var])
                    queue.push_back(r2);
            }
        }
        return true;
    };

    std::function<void(std::size_t)> go = [&](std::size_t i) {
        while (i < n && w[i] >= 0)
            ++i;
        if (i == n) {
            if (std::any_of(w.begin(), w.end(), [](long long x) { return x != 0; }))
                visit(w);
            return;
        }
        for (long long v = 0; v <= bound; ++v) {
            std::size_t mark = trail.size();
            w[i] = v;
            trail.push_back(i);
            if (propagate(i))
                go(i + 1);
            while (trail.size() > mark) {
                w[trail.back()] = -1;
                trail.pop_back();
            }
        }
    };
    go(0);
}

}  // namespace

std::vector<IntegralClass> integral_carried_classes(const TorusTrainTrack& track, long long weight_bound,
                                                    std::size_t max_results) {
    if (weight_bound < 0 || weight_bound > 12)
        throw PreconditionError("weight bound must lie in [0, 12]");
    std::vector<IntegralClass> out;
    search_weights(track, weight_bound, [&](const std::vector<long long>& w) {
        if (out.size() == max_results)
            throw PreconditionError("more than " + std::to_string(max_results) + " carried weight vectors");
        IntegralClass c;
        c.weights.assign(w.begin(), w.end());
        auto [a, b] = carried_class(track, c.weights);
        c.a = a;
        c.b = b;
        out.push_back(std::move(c));
    });
    return out;
}

std::size_t count_integral_carried(const TorusTrainTrack& track, long long weight_bound) {
    if (weight_bound < 0 || weight_bound > 12)
        throw PreconditionError("weight bound must lie in [0, 12]");
    std::size_t count = 0;
    search_weights(track, weight_bound, [&](const std::vector<long long>&) { ++count; });
    return count;
}

EndpointConfig default_config(const DegeneracyLocus& locus, long long c) {
    if (c < 1)
        throw PreconditionError("orbit length c must be positive");
    const long long p = locus.p();
    const long long q = locus.q();
    if ((q + c) % 2 != 0)
        throw PreconditionError("q + c is odd: start and end slots cannot alternate consistently around the orbit");
    EndpointConfig config;
    config.name = "default";
    for (long long j = 0; j < c; ++j) {
        long long shift = j == c - 1 ? q : 0;
        std::vector<RungSpec> level;
        for (long long m = 0; m < p; ++m) {
            bool start = ((m - j) % 2 + 2) % 2 == 0;
            long long target = ((m + shift) % p + p) % p;
            RungSpec r;
            r.lower = Rational(m) + Rational(1, 4);
            r.upper = Rational(target) + Rational(3, 8);
            r.endpoint = start ? 'S' : 'E';
            r.lower_cusp = start ? -1 : +1;
            r.upper_cusp = start ? +1 : -1;
            level.push_back(r);
        }
        config.levels.push_back(std::move(level));
    }
    return config;
}

EndpointConfig uniform_config(const DegeneracyLocus& locus, long long c) {
    EndpointConfig config = default_config(locus, c);
    config.name = "uniform";
    for (auto& level : config.levels) {
        for (auto& r : level) {
            r.lower_cusp = -1;
            r.upper_cusp = +1;
        }
    }
    return config;
}

EndpointConfig mirrored_config(const EndpointConfig& config, long long p) {
    EndpointConfig out = config;
    out.name = config.name + "-mirror";
    for (auto& level : out.levels) {
        for (auto& r : level) {
            r.lower = mod_circle(-r.lower, p);
            r.upper = mod_circle(-r.upper, p);
            r.lower_cusp = -r.lower_cusp;
            r.upper_cusp = -r.upper_cusp;
        }
    }
    return out;
}

EndpointConfig named_config(const std::string& name, const DegeneracyLocus& locus, long long c) {
    if (name == "default")
        return default_config(locus, c);
    if (name == "uniform")
        return uniform_config(locus, c);
    throw PreconditionError("unknown endpoint config '" + name + "' (expected default or uniform)");
}

TorusTrainTrack build_boundary_track(const DegeneracyLocus& locus, long long c, const EndpointConfig& config) {
    if (classify_coorientation(locus) != Coorientation::Reversing)
        throw PreconditionError("co-orientation preserving locus " + locus.to_string() +
                                ": the boundary track is defined for reversing monodromy only");
    if (c < 1)
        throw PreconditionError("orbit length c must be positive");
    const long long p = locus.p();
    const long long q = locus.q();
    if (static_cast<long long>(config.levels.size()) != c)
        throw StructuralError("config has " + std::to_string(config.levels.size()) + " levels, expected " +
                              std::to_string(c));
    for (const auto& level : config.levels) {
        if (static_cast<long long>(level.size()) != p)
            throw StructuralError("config level has " + std::to_string(level.size()) + " rungs, expected " +
                                  std::to_string(p));
        for (const auto& r : level) {
            if ((r.lower_cusp != 1 && r.lower_cusp != -1) || (r.upper_cusp != 1 && r.upper_cusp != -1))
                throw StructuralError("cusp sides must be +1 or -1");
            if (r.lower_cusp == r.upper_cusp)
                throw StructuralError("a rung with equal cusp sides at both ends makes the track non-orientable");
        }
    }

    TorusTrainTrack track;
    const Rational P(p);
    auto lattice_class = [&](const Rational& dx, long long dt) {
        // (dx, dt) = a (-q, c) + b (p, 0)
        if (dt % c != 0)
            throw StructuralError("internal: vertical displacement not a multiple of c");
        long long a = dt / c;
        Rational b = (dx + Rational(q * a)) / P;
        if (denominator(b) != 1)
            throw StructuralError("internal: displacement is not a lattice vector");
        return std::pair<Integer, Integer>(Integer(a), numerator(b));
    };

    struct Point {
        Rational x;
        std::size_t rung;  // global rung branch index
        bool lower;
        int cusp;
        char endpoint;
    };
    std::vector<std::vector<Point>> points(static_cast<std::size_t>(c));
    std::vector<bool> rung_up;
    std::vector<std::size_t> rung_branch;

    // Rungs first so their branch indices are known; arcs appended per level.
    for (long long j = 0; j < c; ++j) {
        long long shift = j == c - 1 ? q : 0;
        long long up_level = (j + 1) % c;
        long long dt = j + 1 == c ? c : 0;
        const auto& level = config.levels[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < level.size(); ++k) {
            const RungSpec& r = level[k];
            Rational x = mod_circle(r.lower, p);
            Rational y = mod_circle(r.upper, p);
            Rational d = mod_circle(y - x - Rational(shift), p);
            if (d * 2 > P)
                d -= P;
            auto [a, b] = lattice_class(x + d - y, dt);
            bool up = r.lower_cusp == -1;
            TrackBranch br;
            br.id = "L" + std::to_string(j) + ".rung" + std::to_string(k);
            br.kind = std::string("rung:") + r.endpoint;
            br.a = up ? a : Integer(-a);
            br.b = up ? b : Integer(-b);
            std::size_t idx = track.branches.size();
            track.branches.push_back(std::move(br));
            rung_up.push_back(up);
            points[static_cast<std::size_t>(j)].push_back({x, idx, true, r.lower_cusp, r.endpoint});
            points[static_cast<std::size_t>(up_level)].push_back({y, idx, false, r.upper_cusp, r.endpoint});
        }
    }

    for (long long j = 0; j < c; ++j) {
        auto& pts = points[static_cast<std::size_t>(j)];
        std::sort(pts.begin(), pts.end(), [](const Point& u, const Point& v) { return u.x < v.x; });
        for (std::size_t k = 1; k < pts.size(); ++k) {
            if (pts[k].x == pts[k - 1].x)
                throw StructuralError("two rung ends at position " + rational_to_string(pts[k].x) + " on level " +
                                      std::to_string(j));
        }
        const std::size_t m = pts.size();
        // arc k runs from point k down to point k-1 (cyclically), oriented -X
        std::vector<std::size_t> arc(m);
        for (std::size_t k = 0; k < m; ++k) {
            TrackBranch br;
            br.id = "L" + std::to_string(j) + ".arc" + std::to_string(k);
            br.kind = "arc";
            br.a = 0;
            br.b = k == 0 ? -1 : 0;  // the arc through position 0 wraps once around
            arc[k] = track.branches.size();
            track.branches.push_back(std::move(br));
        }
        for (std::size_t k = 0; k < m; ++k) {
            const Point& pt = pts[k];
            EndRef minus{arc[k], BranchEnd::Tail};
            EndRef plus{arc[(k + 1) % m], BranchEnd::Head};
            bool up = rung_up[pt.rung];
            EndRef rung{pt.rung, (pt.lower == up) ? BranchEnd::Tail : BranchEnd::Head};
            TrackSwitch sw;
            sw.id = "L" + std::to_string(j) + ".s" + std::to_string(k);
            sw.cusp_sign = pt.cusp;
            sw.role = std::string(pt.lower ? "lower:" : "upper:") + pt.endpoint;
            if (pt.cusp > 0) {
                sw.one = minus;
                sw.two = {rung, plus};
            } else {
                sw.one = plus;
                sw.two = {rung, minus};
            }
            track.switches.push_back(std::move(sw));
        }
    }
    validate_track(track);
    return track;
}

}  // namespace dfill
