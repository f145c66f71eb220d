#include "dfill/json_io.hpp"

#include "dfill/errors.hpp"

#include <limits>

namespace dfill {

namespace {

std::string slope_text(const Slope& s) { return s.to_string(); }

Slope slope_from(const Json& j, const char* what) {
    if (!j.is_string())
        throw StructuralError(std::string(what) + ": expected a slope string");
    return parse_slope(j.get<std::string>()).slope;
}

Json integer_json(const Integer& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return Json(x.convert_to<long long>());
    return Json(x.str());
}

Integer integer_from(const Json& j, const char* what) {
    if (j.is_number_integer())
        return Integer(j.get<long long>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw StructuralError(std::string(what) + ": expected an integer");
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw StructuralError(std::string("missing field '") + key + "'");
    return j.at(key);
}

long long int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer())
        throw StructuralError(std::string("field '") + key + "' must be an integer");
    return v.get<long long>();
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string())
        throw StructuralError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

bool bool_field(const Json& j, const char* key, bool fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_boolean())
        throw StructuralError(std::string("field '") + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

Rational rational_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (v.is_number_integer())
        return Rational(v.get<long long>());
    if (!v.is_string())
        throw StructuralError(std::string("field '") + key + "' must be a fraction string");
    return parse_rational(v.get<std::string>());
}

void check_schema(const Json& j, const char* schema) {
    if (!j.is_object())
        throw StructuralError(std::string("expected a ") + schema + " object");
    if (j.contains("schema") && j.at("schema") != schema)
        throw StructuralError(std::string("expected schema ") + schema + ", got " + j.at("schema").dump());
}

Json locus_json(const DegeneracyLocus& l) {
    Json j;
    j["p"] = l.p();
    j["q"] = l.q();
    j["text"] = l.to_string();
    j["degeneracy_slope"] = slope_text(l.degeneracy_slope());
    j["multiplicity"] = l.multiplicity();
    j["parity"] = to_string(classify_coorientation(l));
    return j;
}

Json orbit_json(const BoundaryOrbit& o) {
    Json j;
    j["circles"] = o.circles;
    j["c"] = o.c;
    j["locus"] = locus_json(o.locus);
    j["J"] = to_json(interval_J(o.locus, o.c));
    return j;
}

Json guarantees_json(const std::vector<Guarantee>& gs, Coorientation parity) {
    Json arr = Json::array();
    for (auto g : gs) {
        Json x;
        x["label"] = to_string(g);
        x["citation"] = citation(g, parity);
        arr.push_back(x);
    }
    return arr;
}

Json torus_json(const FillingReport& t) {
    Json j;
    j["slope"] = t.slope ? Json(slope_text(*t.slope)) : Json(nullptr);
    j["in_J"] = t.in_J;
    j["at_J_endpoint"] = t.at_J_endpoint;
    j["dist_to_locus"] = integer_json(t.dist_to_locus);
    j["fried_ok"] = t.fried_ok;
    j["prong_count"] = integer_json(t.prong_count);
    j["special_no_singular"] = t.special_no_singular;
    j["parity"] = to_string(t.parity);
    j["notes"] = t.notes;
    return j;
}

Coorientation report_parity(const MultislopeReport& r) {
    return r.tori.empty() ? Coorientation::Reversing : r.tori.front().parity;
}

Json printed_json(const PrintedInterval& i) {
    Json j;
    j["text"] = i.text;
    j["end_a"] = slope_text(i.arc.end_a());
    j["end_b"] = slope_text(i.arc.end_b());
    j["excluded"] = slope_text(i.arc.excluded());
    j["end_a_included"] = i.end_a_included;
    j["end_b_included"] = i.end_b_included;
    return j;
}

std::string end_name(BranchEnd e) { return e == BranchEnd::Tail ? "tail" : "head"; }

Json end_json(const EndRef& r) {
    Json j;
    j["branch"] = r.branch;
    j["end"] = end_name(r.end);
    return j;
}

EndRef end_from(const Json& j) {
    long long b = int_field(j, "branch");
    if (b < 0)
        throw StructuralError("branch index must be nonnegative");
    std::string e = string_field(j, "end");
    if (e != "tail" && e != "head")
        throw StructuralError("branch end must be 'tail' or 'head'");
    return EndRef{static_cast<std::size_t>(b), e == "tail" ? BranchEnd::Tail : BranchEnd::Head};
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
    }
}

Json to_json(const SlopeInterval& arc) {
    Json j;
    j["end_a"] = slope_text(arc.end_a());
    j["end_b"] = slope_text(arc.end_b());
    j["excluded"] = slope_text(arc.excluded());
    return j;
}

Json to_json(const MonodromyBoundaryAction& action) {
    Json j;
    j["schema"] = "monodromy_boundary_v1";
    Json circles = Json::array();
    for (const auto& c : action.circles) {
        Json x;
        x["id"] = c.id;
        x["stable_sings"] = c.stable_sing_count;
        circles.push_back(x);
    }
    j["circles"] = circles;
    j["permutation"] = Json::object();
    for (const auto& [a, b] : action.permutation)
        j["permutation"][a] = b;
    j["shifts"] = Json::object();
    for (const auto& [a, s] : action.shifts)
        j["shifts"][a] = s;
    return j;
}

MonodromyBoundaryAction action_from_json(const Json& j) {
    check_schema(j, "monodromy_boundary_v1");
    MonodromyBoundaryAction a;
    const Json& circles = field(j, "circles");
    if (!circles.is_array())
        throw StructuralError("'circles' must be an array");
    for (const auto& c : circles)
        a.circles.push_back({string_field(c, "id"), int_field(c, "stable_sings")});
    const Json& perm = field(j, "permutation");
    if (!perm.is_object())
        throw StructuralError("'permutation' must be an object");
    for (auto it = perm.begin(); it != perm.end(); ++it) {
        if (!it.value().is_string())
            throw StructuralError("permutation targets must be circle ids");
        a.permutation[it.key()] = it.value().get<std::string>();
    }
    const Json& shifts = field(j, "shifts");
    if (!shifts.is_object())
        throw StructuralError("'shifts' must be an object");
    for (auto it = shifts.begin(); it != shifts.end(); ++it) {
        if (!it.value().is_number_integer())
            throw StructuralError("shifts must be integers");
        a.shifts[it.key()] = it.value().get<long long>();
    }
    return a;
}

Json to_json(const MultislopeReport& report) {
    Json j;
    j["verdict"] = report.verdict;
    j["guarantees"] = guarantees_json(report.guarantees, report_parity(report));
    Json tori = Json::array();
    for (const auto& t : report.tori)
        tori.push_back(torus_json(t));
    j["tori"] = tori;
    j["notes"] = report.notes;
    return j;
}

Json filling_report_json(const BoundaryOrbit& orbit, const std::vector<MultislopeReport>& per_slope) {
    Json j;
    j["schema"] = "filling_report_v1";
    j["orbits"] = Json::array({orbit_json(orbit)});
    Json reports = Json::array();
    for (const auto& r : per_slope) {
        Json x = torus_json(r.tori.at(0));
        x["verdict"] = r.verdict;
        x["guarantees"] = guarantees_json(r.guarantees, report_parity(r));
        for (const auto& n : r.notes)
            x["notes"].push_back(n);
        reports.push_back(x);
    }
    j["reports"] = reports;
    return j;
}

Json multislope_report_json(const std::vector<BoundaryOrbit>& orbits, const MultislopeReport& report) {
    Json j;
    j["schema"] = "filling_report_v1";
    Json os = Json::array();
    for (const auto& o : orbits)
        os.push_back(orbit_json(o));
    j["orbits"] = os;
    j["multislope"] = to_json(report);
    return j;
}

Json to_json(const AdmissibleArcSystem& sys) {
    Json j;
    j["schema"] = "arc_system_v1";
    Json circles = Json::array();
    for (const auto& c : sys.coords.circles) {
        Json x;
        x["id"] = c.id;
        x["p"] = c.p;
        circles.push_back(x);
    }
    j["circles"] = circles;
    Json mono = Json::array();
    for (const auto& [id, img] : sys.monodromy.images) {
        Json x;
        x["circle"] = id;
        x["target"] = img.target;
        x["shift"] = rational_to_string(img.shift);
        mono.push_back(x);
    }
    j["monodromy"] = mono;
    Json arcs = Json::array();
    for (const auto& a : sys.arcs) {
        Json x;
        x["start"] = {{"circle", a.start.circle}, {"position", rational_to_string(a.start.position)}};
        x["end"] = {{"circle", a.end.circle}, {"position", rational_to_string(a.end.position)}};
        x["pos_transverse_Fs"] = a.pos_transverse_Fs;
        x["pos_transverse_Fu"] = a.pos_transverse_Fu;
        arcs.push_back(x);
    }
    j["arcs"] = arcs;
    return j;
}

AdmissibleArcSystem arc_system_from_json(const Json& j) {
    check_schema(j, "arc_system_v1");
    AdmissibleArcSystem sys;
    for (const auto& c : field(j, "circles"))
        sys.coords.circles.push_back({string_field(c, "id"), int_field(c, "p")});
    for (const auto& m : field(j, "monodromy"))
        sys.monodromy.images[string_field(m, "circle")] = {string_field(m, "target"), rational_field(m, "shift")};
    for (const auto& a : field(j, "arcs")) {
        CombinatorialArc arc;
        const Json& s = field(a, "start");
        const Json& e = field(a, "end");
        arc.start = {string_field(s, "circle"), rational_field(s, "position")};
        arc.end = {string_field(e, "circle"), rational_field(e, "position")};
        arc.pos_transverse_Fs = bool_field(a, "pos_transverse_Fs", false);
        arc.pos_transverse_Fu = bool_field(a, "pos_transverse_Fu", false);
        sys.arcs.push_back(arc);
    }
    return sys;
}

Json to_json(const std::vector<Violation>& violations) {
    Json arr = Json::array();
    for (const auto& v : violations) {
        Json x;
        x["kind"] = to_string(v.kind);
        x["circle"] = v.circle;
        x["position"] = rational_to_string(v.position);
        x["detail"] = v.detail;
        arr.push_back(x);
    }
    return arr;
}

Json to_json(const TorusTrainTrack& track) {
    Json j;
    j["schema"] = "torus_track_v1";
    Json sws = Json::array();
    for (const auto& s : track.switches) {
        Json x;
        x["id"] = s.id;
        x["one"] = end_json(s.one);
        x["two"] = Json::array({end_json(s.two[0]), end_json(s.two[1])});
        x["cusp_sign"] = s.cusp_sign;
        x["role"] = s.role;
        sws.push_back(x);
    }
    j["switches"] = sws;
    Json brs = Json::array();
    for (const auto& b : track.branches) {
        Json x;
        x["id"] = b.id;
        x["a"] = integer_json(b.a);
        x["b"] = integer_json(b.b);
        x["kind"] = b.kind;
        brs.push_back(x);
    }
    j["branches"] = brs;
    return j;
}

TorusTrainTrack track_from_json(const Json& j) {
    check_schema(j, "torus_track_v1");
    TorusTrainTrack t;
    for (const auto& s : field(j, "switches")) {
        TrackSwitch sw;
        sw.id = string_field(s, "id");
        sw.one = end_from(field(s, "one"));
        const Json& two = field(s, "two");
        if (!two.is_array() || two.size() != 2)
            throw StructuralError("switch '" + sw.id + "' needs exactly two ends on its two-branch side");
        sw.two = {end_from(two[0]), end_from(two[1])};
        sw.cusp_sign = s.contains("cusp_sign") ? static_cast<int>(int_field(s, "cusp_sign")) : 0;
        sw.role = s.contains("role") ? string_field(s, "role") : "";
        t.switches.push_back(sw);
    }
    for (const auto& b : field(j, "branches")) {
        TrackBranch br;
        br.id = string_field(b, "id");
        br.a = integer_from(field(b, "a"), "branch class a");
        br.b = integer_from(field(b, "b"), "branch class b");
        br.kind = b.contains("kind") ? string_field(b, "kind") : "";
        t.branches.push_back(br);
    }
    validate_track(t);
    return t;
}

Json to_json(const CarriedSlopes& slopes, const WeightCone& cone) {
    Json j;
    j["schema"] = "carried_slopes_v1";
    j["kind"] = to_string(slopes.kind);
    j["text"] = slopes.to_string();
    if (slopes.single)
        j["slope"] = slope_text(*slopes.single);
    if (slopes.arc) {
        j["arc"] = to_json(*slopes.arc);
        j["end_a_attained"] = slopes.end_a_attained;
        j["end_b_attained"] = slopes.end_b_attained;
    }
    j["rays"] = cone.rays.size();
    j["kernel_dim"] = cone.kernel_dim;
    return j;
}

Json to_json(const EndpointConfig& config) {
    Json j;
    j["schema"] = "endpoint_config_v1";
    j["name"] = config.name;
    Json levels = Json::array();
    for (const auto& level : config.levels) {
        Json l = Json::array();
        for (const auto& r : level) {
            Json x;
            x["lower"] = rational_to_string(r.lower);
            x["upper"] = rational_to_string(r.upper);
            x["lower_cusp"] = r.lower_cusp;
            x["upper_cusp"] = r.upper_cusp;
            x["endpoint"] = std::string(1, r.endpoint);
            l.push_back(x);
        }
        levels.push_back(l);
    }
    j["levels"] = levels;
    return j;
}

EndpointConfig config_from_json(const Json& j) {
    check_schema(j, "endpoint_config_v1");
    EndpointConfig c;
    c.name = j.contains("name") ? string_field(j, "name") : "custom";
    for (const auto& level : field(j, "levels")) {
        if (!level.is_array())
            throw StructuralError("each config level must be an array of rungs");
        std::vector<RungSpec> rs;
        for (const auto& x : level) {
            RungSpec r;
            r.lower = rational_field(x, "lower");
            r.upper = rational_field(x, "upper");
            r.lower_cusp = static_cast<int>(int_field(x, "lower_cusp"));
            r.upper_cusp = static_cast<int>(int_field(x, "upper_cusp"));
            std::string e = x.contains("endpoint") ? string_field(x, "endpoint") : "S";
            if (e != "S" && e != "E")
                throw StructuralError("rung endpoint must be 'S' or 'E'");
            r.endpoint = e[0];
            rs.push_back(r);
        }
        c.levels.push_back(rs);
    }
    return c;
}

Json to_json(const CensusEntry& e) {
    Json j;
    j["name"] = e.name;
    j["genus"] = e.genus ? Json(*e.genus) : Json(nullptr);
    j["degeneracy_slope"] = slope_text(e.degeneracy_slope);
    j["locus"] = {{"p", e.locus.p()}, {"q", e.locus.q()}};
    j["c"] = e.c;
    j["i_nls"] = printed_json(e.i_nls);
    j["citation"] = e.citation;
    j["notes"] = e.notes;
    return j;
}

Json census_json(const std::vector<CensusEntry>& entries) {
    Json j;
    j["schema"] = "census_v1";
    Json rows = Json::array();
    for (const auto& e : entries)
        rows.push_back(to_json(e));
    j["entries"] = rows;
    Json sym = Json::array();
    for (const auto& r : symbolic_rows()) {
        Json x;
        x["family"] = r.family;
        x["i_nls"] = r.i_nls;
        x["citation"] = r.citation;
        sym.push_back(x);
    }
    j["symbolic"] = sym;
    return j;
}

std::vector<CensusEntry> census_from_json(const Json& j) {
    check_schema(j, "census_v1");
    std::vector<CensusEntry> out;
    for (const auto& x : field(j, "entries")) {
        const Json& l = field(x, "locus");
        const Json& i = field(x, "i_nls");
        PrintedInterval pi{SlopeInterval(slope_from(field(i, "end_a"), "end_a"), slope_from(field(i, "end_b"), "end_b"),
                                         slope_from(field(i, "excluded"), "excluded")),
                           bool_field(i, "end_a_included", false), bool_field(i, "end_b_included", false),
                           string_field(i, "text")};
        CensusEntry e{string_field(x, "name"),
                      field(x, "genus").is_null() ? std::nullopt : std::optional<long long>(int_field(x, "genus")),
                      slope_from(field(x, "degeneracy_slope"), "degeneracy_slope"),
                      DegeneracyLocus(int_field(l, "p"), int_field(l, "q")),
                      int_field(x, "c"),
                      pi,
                      string_field(x, "citation"),
                      string_field(x, "notes")};
        out.push_back(e);
    }
    return out;
}

Json to_json(const VerificationRecord& r) {
    Json j;
    j["name"] = r.name;
    j["J"] = to_json(r.computed_J);
    j["status"] = to_string(r.status);
    j["detail"] = r.detail;
    j["citation"] = r.citation;
    return j;
}

Json to_json(const LadderSummary& s) {
    Json j;
    j["schema"] = "ladder_summary_v1";
    j["cases"] = s.cases;
    j["levels"] = s.max_levels;
    j["rungs"] = s.max_rungs;
    j["seed"] = s.seed;
    j["total_paths"] = s.total_paths;
    j["max_paths"] = s.max_paths;
    j["truncated_paths"] = s.truncated_paths;
    j["violations"] = s.violations;
    j["first_violation_case"] = s.first_violation_case ? Json(*s.first_violation_case) : Json(nullptr);
    j["separation_checks"] = s.separation_checks;
    j["separation_failures"] = s.separation_failures;
    j["alternative_orientation_accepted"] = s.alternative_orientation_accepted;
    j["negative_control_over_two_lines"] = s.control_over_two_lines;
    j["ok"] = s.ok();
    return j;
}

}  // namespace dfill
