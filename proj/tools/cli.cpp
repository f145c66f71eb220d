#include "cli.hpp"

#include "dfill/errors.hpp"
#include "dfill/json_io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dfill {

namespace {

// Raised after output has been written, when a check failed.
struct VerificationFailed {};

struct Options {
    std::string output = "json";
    std::string locus;
    long long orbit_length = 1;
    std::vector<std::string> slopes;
    std::string input;
    std::string name;
    std::string config_file;
    std::string config_name = "default";
    long long check_bound = -1;
    long long levels = 8;
    long long rungs = 6;
    long long cases = 1000;
    std::uint64_t seed = 0;
    std::string delta;
};

// "p,q" with optional spaces.
DegeneracyLocus parse_locus(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw ParseError("locus must be written p,q", text.size());
    auto number = [&](std::size_t from, std::size_t to) {
        std::size_t i = from;
        while (i < to && text[i] == ' ')
            ++i;
        std::size_t start = i;
        if (i < to && (text[i] == '-' || text[i] == '+'))
            ++i;
        if (i == to || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError("expected an integer in locus", i);
        long long v = 0;
        for (; i < to && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            if (v > 1'000'000'000'000LL)
                throw ParseError("locus entry too large", i);
            v = v * 10 + (text[i] - '0');
        }
        while (i < to && text[i] == ' ')
            ++i;
        if (i != to)
            throw ParseError("unexpected character in locus", i);
        return text[start] == '-' ? -v : v;
    };
    long long p = number(0, comma);
    long long q = number(comma + 1, text.size());
    return DegeneracyLocus(p, q);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw PreconditionError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string arc_text(const SlopeInterval& j) {
    return "(" + j.end_a().to_string() + ", " + j.end_b().to_string() + ") avoiding " + j.excluded().to_string();
}

BoundaryOrbit single_orbit(const DegeneracyLocus& locus, long long c) {
    if (c < 1)
        throw PreconditionError("orbit length must be positive");
    BoundaryOrbit o;
    o.c = c;
    o.locus = locus;
    for (long long i = 0; i < c; ++i)
        o.circles.push_back("C" + std::to_string(i));
    return o;
}

std::vector<Slope> parse_slopes(const std::vector<std::string>& texts) {
    std::vector<Slope> out;
    for (const auto& t : texts)
        out.push_back(parse_slope(t).slope);
    return out;
}

void print_report_text(std::ostream& out, const FillingReport& t, const MultislopeReport& r) {
    out << "slope " << (t.slope ? t.slope->to_string() : "-") << ": in J " << yes_no(t.in_J) << ", distance "
        << t.dist_to_locus << ", prongs " << t.prong_count << ", fried " << yes_no(t.fried_ok) << "\n";
    for (auto g : r.guarantees)
        out << "  " << to_string(g) << ": " << citation(g, t.parity) << "\n";
    for (const auto& n : t.notes)
        out << "  note: " << n << "\n";
    for (const auto& n : r.notes)
        out << "  note: " << n << "\n";
}

void emit(std::ostream& out, const Options& o, const Json& j, const std::string& text) {
    if (o.output == "json")
        out << j.dump(2) << "\n";
    else
        out << text;
}

void cmd_analyze(const Options& o, std::ostream& out) {
    if (!o.input.empty()) {
        auto action = action_from_json(read_json_file(o.input));
        auto orbits = boundary_orbits(action);
        auto report = analyze_multislope(orbits, parse_slopes(o.slopes));
        std::ostringstream text;
        text << "verdict " << yes_no(report.verdict) << "\n";
        for (const auto& t : report.tori)
            print_report_text(text, t, MultislopeReport{});
        for (auto g : report.guarantees)
            text << "  " << to_string(g) << "\n";
        for (const auto& n : report.notes)
            text << "  note: " << n << "\n";
        emit(out, o, multislope_report_json(orbits, report), text.str());
        return;
    }
    if (o.locus.empty())
        throw PreconditionError("analyze needs --locus or --input");
    auto orbit = single_orbit(parse_locus(o.locus), o.orbit_length);
    std::vector<MultislopeReport> per;
    std::ostringstream text;
    text << "locus " << orbit.locus.to_string() << ", c = " << orbit.c << ", J = "
         << arc_text(interval_J(orbit.locus, orbit.c)) << "\n";
    for (const auto& s : parse_slopes(o.slopes)) {
        per.push_back(analyze_multislope({orbit}, {s}));
        print_report_text(text, per.back().tori.at(0), per.back());
    }
    emit(out, o, filling_report_json(orbit, per), text.str());
}

void cmd_interval(const Options& o, std::ostream& out) {
    auto locus = parse_locus(o.locus);
    if (o.orbit_length < 1)
        throw PreconditionError("orbit length must be positive");
    auto j = interval_J(locus, o.orbit_length);
    Json doc;
    doc["schema"] = "interval_v1";
    doc["locus"] = locus.to_string();
    doc["c"] = o.orbit_length;
    doc["J"] = to_json(j);
    emit(out, o, doc, arc_text(j) + "\n");
}

void cmd_census_list(const Options& o, std::ostream& out) {
    std::ostringstream text;
    for (const auto& e : census_entries())
        text << e.name << "  delta " << e.degeneracy_slope.to_string() << "  " << e.locus.to_string() << "  "
             << e.i_nls.text << "\n";
    emit(out, o, census_json(census_entries()), text.str());
}

void cmd_census_show(const Options& o, std::ostream& out) {
    const auto& e = census_entry(o.name);
    auto r = verify_entry(e);
    Json doc = to_json(e);
    doc["verification"] = to_json(r);
    std::ostringstream text;
    text << e.name << "\n  genus " << (e.genus ? std::to_string(*e.genus) : "-") << "\n  delta "
         << e.degeneracy_slope.to_string() << "\n  locus " << e.locus.to_string() << ", c = " << e.c
         << "\n  printed " << e.i_nls.text << "\n  J " << arc_text(r.computed_J) << "\n  " << to_string(r.status)
         << ": " << r.detail << "\n  " << e.citation << "\n";
    if (!e.notes.empty())
        text << "  " << e.notes << "\n";
    emit(out, o, doc, text.str());
}

void cmd_census_verify(const Options& o, std::ostream& out) {
    auto records = census_verify();
    Json doc;
    doc["schema"] = "census_verification_v1";
    doc["records"] = Json::array();
    bool ok = true;
    std::ostringstream text;
    for (const auto& r : records) {
        doc["records"].push_back(to_json(r));
        ok = ok && r.status != MatchStatus::Mismatch;
        text << r.name << "  " << to_string(r.status) << "  J = " << arc_text(r.computed_J) << "\n";
    }
    doc["ok"] = ok;
    emit(out, o, doc, text.str());
    if (!ok)
        throw VerificationFailed{};
}

void cmd_arcs_refine(const Options& o, std::ostream& out) {
    auto action = action_from_json(read_json_file(o.input));
    auto coords = coordinates_from_action(action);
    auto map = boundary_map_from_action(action);
    auto pol = alternating_polarity(coords);
    auto sys = refined_matching(coords, map, pol, default_matching(coords, pol));
    std::ostringstream text;
    for (const auto& a : sys.arcs)
        text << a.start.circle << "@" << rational_to_string(a.start.position) << " -> " << a.end.circle << "@"
             << rational_to_string(a.end.position) << "\n";
    emit(out, o, to_json(sys), text.str());
}

void cmd_arcs_validate(const Options& o, std::ostream& out) {
    auto sys = arc_system_from_json(read_json_file(o.input));
    auto v = validate_system(sys);
    Json doc;
    doc["schema"] = "arc_validation_v1";
    doc["admissible"] = v.empty();
    doc["violations"] = to_json(v);
    std::ostringstream text;
    text << (v.empty() ? "admissible\n" : "not admissible\n");
    for (const auto& x : v)
        text << "  " << to_string(x.kind) << " " << x.circle << " " << rational_to_string(x.position) << ": "
             << x.detail << "\n";
    emit(out, o, doc, text.str());
    if (!v.empty())
        throw VerificationFailed{};
}

void cmd_track_build(const Options& o, std::ostream& out) {
    auto locus = parse_locus(o.locus);
    EndpointConfig cfg = o.config_file.empty() ? named_config(o.config_name, locus, o.orbit_length)
                                               : config_from_json(read_json_file(o.config_file));
    auto t = build_boundary_track(locus, o.orbit_length, cfg);
    std::ostringstream text;
    text << t.switches.size() << " switches, " << t.branches.size() << " branches\n";
    for (const auto& b : t.branches)
        text << "  " << b.id << "  " << b.kind << "  (" << b.a << ", " << b.b << ")\n";
    emit(out, o, to_json(t), text.str());
}

void cmd_track_slopes(const Options& o, std::ostream& out) {
    auto t = track_from_json(read_json_file(o.input));
    auto cone = weight_cone(t);
    auto slopes = carried_slopes(t, cone);
    Json doc = to_json(slopes, cone);
    std::ostringstream text;
    text << slopes.to_string() << "\n" << cone.rays.size() << " extreme rays, kernel dimension " << cone.kernel_dim
         << "\n";
    bool ok = true;
    if (o.check_bound >= 0) {
        std::size_t checked = 0, outside = 0;
        for (const auto& c : integral_carried_classes(t, o.check_bound)) {
            if (c.a == 0 && c.b == 0)
                continue;
            ++checked;
            if (!slopes.contains(Slope(c.a, c.b)))
                ++outside;
        }
        doc["check"] = {{"weight_bound", o.check_bound}, {"classes", checked}, {"outside", outside}};
        text << checked << " integral classes with weights <= " << o.check_bound << ", " << outside
             << " outside\n";
        ok = outside == 0;
    }
    emit(out, o, doc, text.str());
    if (!ok)
        throw VerificationFailed{};
}

void cmd_ladder_verify(const Options& o, std::ostream& out) {
    auto s = verify_ladders(o.levels, o.rungs, o.cases, o.seed);
    std::ostringstream text;
    text << s.cases << " ladders, " << s.total_paths << " paths (max " << s.max_paths << " per ladder), "
         << s.violations << " violations, " << s.separation_failures << "/" << s.separation_checks
         << " separation failures\n"
         << "negative control: " << s.control_over_two_lines << " random-cusp ladders with a path over three levels\n";
    emit(out, o, to_json(s), text.str());
    if (!s.ok())
        throw VerificationFailed{};
}

void cmd_coords(const Options& o, std::ostream& out) {
    Slope delta = parse_slope(o.delta).slope;
    auto m = canonical_meridian(delta);
    Json doc;
    doc["schema"] = "canonical_meridian_v1";
    doc["delta"] = delta.to_string();
    doc["k"] = m.k.str();
    doc["meridian"] = Slope(Integer(1), m.k).to_string();
    doc["new_delta"] = m.new_delta.to_string();
    emit(out, o, doc,
         "meridian mu0 + " + m.k.str() + " lambda, delta becomes " + m.new_delta.to_string() + "\n");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dehn filling intervals, boundary train tracks and ladder checks", "dfill"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--output", o.output, "Output format")->check(CLI::IsMember({"json", "text"}));

    auto add_locus = [&](CLI::App* sub) {
        sub->add_option("--locus", o.locus, "Degeneracy locus p,q");
        sub->add_option("--orbit-length", o.orbit_length, "Number of boundary circles in the orbit");
    };

    auto* analyze = app.add_subcommand("analyze", "Filling report for slopes on a boundary orbit");
    add_locus(analyze);
    analyze->add_option("--slope", o.slopes, "Filling slope (repeatable)");
    analyze->add_option("--input", o.input, "monodromy_boundary_v1 file, one --slope per orbit");

    auto* interval = app.add_subcommand("interval", "The interval J of a locus");
    add_locus(interval);
    interval->get_option("--locus")->required();

    auto* census = app.add_subcommand("census", "Worked examples");
    census->require_subcommand(1);
    auto* census_list = census->add_subcommand("list", "List entries");
    auto* census_show = census->add_subcommand("show", "Show one entry");
    census_show->add_option("name", o.name, "Entry name")->required();
    auto* census_verify_cmd = census->add_subcommand("verify", "Compare every entry with J");

    auto* arcs = app.add_subcommand("arcs", "Admissible arc systems");
    arcs->require_subcommand(1);
    auto* arcs_refine = arcs->add_subcommand("refine", "Arc system from a boundary action");
    arcs_refine->add_option("--input", o.input, "monodromy_boundary_v1 file")->required();
    auto* arcs_validate = arcs->add_subcommand("validate", "Check an arc system");
    arcs_validate->add_option("--input", o.input, "arc_system_v1 file")->required();

    auto* track = app.add_subcommand("track", "Boundary train tracks");
    track->require_subcommand(1);
    auto* track_build = track->add_subcommand("build", "Build the boundary track of a locus");
    add_locus(track_build);
    track_build->get_option("--locus")->required();
    auto* cfg_file = track_build->add_option("--config", o.config_file, "endpoint_config_v1 file");
    track_build->add_option("--config-name", o.config_name, "default or uniform")->excludes(cfg_file);
    auto* track_slopes = track->add_subcommand("slopes", "Carried slopes of a track");
    track_slopes->add_option("--input", o.input, "torus_track_v1 file")->required();
    track_slopes->add_option("--check-bound", o.check_bound,
                             "Also enumerate integral weights up to this bound and check their classes")
        ->check(CLI::Range(0, 12));

    auto* ladder = app.add_subcommand("ladder", "Ladder tracks");
    ladder->require_subcommand(1);
    auto* ladder_verify = ladder->add_subcommand("verify", "Random ladder sweep");
    ladder_verify->add_option("--levels", o.levels, "Maximum number of levels")->check(CLI::Range(1, 64));
    ladder_verify->add_option("--rungs", o.rungs, "Maximum rungs per band")->check(CLI::Range(0, 64));
    ladder_verify->add_option("--cases", o.cases, "Number of ladders")->check(CLI::Range(0, 10'000'000));
    ladder_verify->add_option("--seed", o.seed, "Seed");

    auto* coords = app.add_subcommand("coords", "Boundary coordinates");
    coords->require_subcommand(1);
    auto* coords_canonical = coords->add_subcommand("canonical", "Canonical meridian for a degeneracy slope");
    coords_canonical->add_option("--delta", o.delta, "Degeneracy slope u/v")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed())
            cmd_analyze(o, out);
        else if (interval->parsed())
            cmd_interval(o, out);
        else if (census_list->parsed())
            cmd_census_list(o, out);
        else if (census_show->parsed())
            cmd_census_show(o, out);
        else if (census_verify_cmd->parsed())
            cmd_census_verify(o, out);
        else if (arcs_refine->parsed())
            cmd_arcs_refine(o, out);
        else if (arcs_validate->parsed())
            cmd_arcs_validate(o, out);
        else if (track_build->parsed())
            cmd_track_build(o, out);
        else if (track_slopes->parsed())
            cmd_track_slopes(o, out);
        else if (ladder_verify->parsed())
            cmd_ladder_verify(o, out);
        else if (coords_canonical->parsed())
            cmd_coords(o, out);
    } catch (const VerificationFailed&) {
        return 1;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const StructuralError& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace dfill
