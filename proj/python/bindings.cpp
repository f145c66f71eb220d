#include "cli.hpp"
#include "dfill/errors.hpp"
#include "dfill/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace dfill;

namespace {

DegeneracyLocus locus(long long p, long long q) { return DegeneracyLocus(p, q); }

std::vector<Slope> slopes_of(const std::vector<std::string>& texts) {
    std::vector<Slope> out;
    for (const auto& t : texts)
        out.push_back(parse_slope(t).slope);
    return out;
}

BoundaryOrbit orbit_of(long long p, long long q, long long c) {
    if (c < 1)
        throw PreconditionError("orbit length must be positive");
    BoundaryOrbit o;
    o.c = c;
    o.locus = locus(p, q);
    for (long long i = 0; i < c; ++i)
        o.circles.push_back("C" + std::to_string(i));
    return o;
}

}  // namespace

// Functions return JSON text; the Python package decodes it.
PYBIND11_MODULE(_core, m) {
    m.doc() = "Dehn filling intervals, boundary train tracks and ladder checks";

    py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::set_error(PyExc_ValueError, e.what());
        }
    });

    m.def("normalize_slope", [](const std::string& s) { return parse_slope(s).slope.to_string(); });
    m.def("slope_distance", [](const std::string& a, const std::string& b) {
        return distance(parse_slope(a).slope, parse_slope(b).slope).str();
    });
    m.def("interval_j", [](long long p, long long q, long long c) {
        if (c < 1)
            throw PreconditionError("orbit length must be positive");
        return to_json(interval_J(locus(p, q), c)).dump();
    });
    m.def("analyze", [](long long p, long long q, long long c, const std::vector<std::string>& slopes) {
        auto o = orbit_of(p, q, c);
        std::vector<MultislopeReport> per;
        for (const auto& s : slopes_of(slopes))
            per.push_back(analyze_multislope({o}, {s}));
        return filling_report_json(o, per).dump();
    });
    m.def("analyze_action", [](const std::string& action_json, const std::vector<std::string>& slopes) {
        auto orbits = boundary_orbits(action_from_json(parse_json_text(action_json)));
        return multislope_report_json(orbits, analyze_multislope(orbits, slopes_of(slopes))).dump();
    });
    m.def("canonical_meridian", [](const std::string& delta) {
        auto mc = canonical_meridian(parse_slope(delta).slope);
        Json j;
        j["k"] = mc.k.str();
        j["new_delta"] = mc.new_delta.to_string();
        return j.dump();
    });
    m.def("census", [] { return census_json(census_entries()).dump(); });
    m.def("census_verify", [] {
        Json arr = Json::array();
        for (const auto& r : census_verify())
            arr.push_back(to_json(r));
        return arr.dump();
    });
    m.def("refine_arcs", [](const std::string& action_json) {
        auto action = action_from_json(parse_json_text(action_json));
        auto coords = coordinates_from_action(action);
        auto pol = alternating_polarity(coords);
        return to_json(refined_matching(coords, boundary_map_from_action(action), pol, default_matching(coords, pol)))
            .dump();
    });
    m.def("validate_arcs", [](const std::string& sys_json) {
        return to_json(validate_system(arc_system_from_json(parse_json_text(sys_json)))).dump();
    });
    m.def(
        "build_track",
        [](long long p, long long q, long long c, const std::string& config) {
            auto l = locus(p, q);
            return to_json(build_boundary_track(l, c, named_config(config, l, c))).dump();
        },
        py::arg("p"), py::arg("q"), py::arg("c"), py::arg("config") = "default");
    m.def("carried_slopes", [](const std::string& track_json) {
        auto t = track_from_json(parse_json_text(track_json));
        auto cone = weight_cone(t);
        return to_json(carried_slopes(t, cone), cone).dump();
    });
    m.def("verify_ladders", [](long long levels, long long rungs, long long cases, std::uint64_t seed) {
        py::gil_scoped_release release;
        return to_json(verify_ladders(levels, rungs, cases, seed)).dump();
    });
    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
