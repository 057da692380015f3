#include "lgrowth/config.hpp"

#include "lgrowth/error.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lgrowth {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::Config, "config " + where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        fail(where, std::string("missing required field '") + key + "'");
    }
    return obj.at(key);
}

double get_number(const json& v, const std::string& where) {
    if (!v.is_number()) {
        fail(where, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        fail(where, "expected a finite number");
    }
    return x;
}

long get_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) {
        fail(where, "expected an integer");
    }
    return v.get<long>();
}

bool get_bool(const json& v, const std::string& where) {
    if (!v.is_boolean()) {
        fail(where, "expected true or false");
    }
    return v.get<bool>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            fail(where, "unknown field '" + key + "'");
        }
    }
}

std::vector<double> get_real_list(const json& v, const std::string& where) {
    if (!v.is_array()) {
        fail(where, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(get_number(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<cplx> get_coeffs(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) {
        fail(where, "expected a non-empty array of [re, im] pairs");
    }
    std::vector<cplx> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != 2) {
            fail(w, "expected an [re, im] pair");
        }
        out.emplace_back(get_number(v[i][0], w + "[0]"), get_number(v[i][1], w + "[1]"));
    }
    return out;
}

Driver parse_driver(const json& d, const std::string& where) {
    if (!d.is_object()) {
        fail(where, "expected an object");
    }
    reject_unknown(d, {"kind", "nu_cos", "nu_sin", "p0"}, where);
    const json& kind = require(d, "kind", where);
    if (!kind.is_string()) {
        fail(where + ".kind", "expected a string");
    }
    if (kind == "laplacian-growth") {
        return Driver::laplacian_growth();
    }
    if (kind != "custom") {
        fail(where + ".kind", "expected 'laplacian-growth' or 'custom'");
    }
    const std::vector<double> a = d.contains("nu_cos") ? get_real_list(d["nu_cos"], where + ".nu_cos")
                                                      : std::vector<double>{};
    const std::vector<double> b = d.contains("nu_sin") ? get_real_list(d["nu_sin"], where + ".nu_sin")
                                                      : std::vector<double>{};
    const double p0 = get_number(require(d, "p0", where), where + ".p0");
    if (!(p0 > 0.0)) {
        fail(where + ".p0", "must be positive");
    }
    // nu(theta) = sum_k a_k cos k theta + b_k sin k theta, independent of t.
    auto nu = [a, b](double theta, double) {
        double acc = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            acc += a[k] * std::cos(static_cast<double>(k) * theta);
        }
        for (std::size_t k = 0; k < b.size(); ++k) {
            acc += b[k] * std::sin(static_cast<double>(k) * theta);
        }
        return acc;
    };
    return Driver::custom(nu, [p0](double) { return p0; });
}

Scenario parse_scenario(const json& s, const std::string& where) {
    if (!s.is_object()) {
        fail(where, "expected an object");
    }
    reject_unknown(s, {"initial", "t0", "N", "M", "dt", "t_end", "driver", "stops", "fd"}, where);
    Scenario sc;
    const long N = get_integer(require(s, "N", where), where + ".N");
    if (N < 2 || N > 4096) {
        fail(where + ".N", "must lie in [2, 4096]");
    }
    const double t0 = s.contains("t0") ? get_number(s["t0"], where + ".t0") : 0.0;
    const std::vector<cplx> coeffs = get_coeffs(require(s, "initial", where), where + ".initial");
    if (static_cast<long>(coeffs.size()) > N) {
        fail(where + ".initial", "more coefficients than the degree N");
    }
    try {
        sc.initial = MapState::from_coeffs(coeffs, static_cast<int>(N), t0);
    } catch (const Error& e) {
        fail(where + ".initial", e.what());
    }
    if (s.contains("M")) {
        const long M = get_integer(s["M"], where + ".M");
        if (M < 1 || M > (1L << 24)) {
            fail(where + ".M", "out of range");
        }
        sc.M = static_cast<int>(M);
    }
    sc.dt = get_number(require(s, "dt", where), where + ".dt");
    if (!(sc.dt > 0.0)) {
        fail(where + ".dt", "must be > 0 (backward evolution is not supported)");
    }
    sc.t_end = get_number(require(s, "t_end", where), where + ".t_end");
    if (!(sc.t_end > t0)) {
        fail(where + ".t_end", "must exceed t0");
    }
    if (s.contains("driver")) {
        sc.driver = parse_driver(s["driver"], where + ".driver");
    }
    if (s.contains("stops")) {
        const json& st = s["stops"];
        const std::string w = where + ".stops";
        if (!st.is_object()) {
            fail(w, "expected an object");
        }
        reject_unknown(st, {"cusp_threshold", "max_steps"}, w);
        if (st.contains("cusp_threshold")) {
            sc.cusp_threshold = get_number(st["cusp_threshold"], w + ".cusp_threshold");
            if (!(sc.cusp_threshold > 0.0)) {
                fail(w + ".cusp_threshold", "must be > 0");
            }
        }
        if (st.contains("max_steps")) {
            sc.max_steps = get_integer(st["max_steps"], w + ".max_steps");
            if (sc.max_steps < 1) {
                fail(w + ".max_steps", "must be >= 1");
            }
        }
    }
    if (s.contains("fd")) {
        const json& fd = s["fd"];
        const std::string w = where + ".fd";
        if (!fd.is_object()) {
            fail(w, "expected an object");
        }
        reject_unknown(fd, {"h", "richardson"}, w);
        if (fd.contains("h")) {
            sc.fd_h = get_number(fd["h"], w + ".h");
            if (!(sc.fd_h >= 10.0 * sc.dt * (1.0 - 1e-9))) {
                fail(w + ".h", "must be >= 10 dt");
            }
        }
        if (fd.contains("richardson")) {
            sc.fd_richardson = get_bool(fd["richardson"], w + ".richardson");
        }
    }
    try {
        sc.validate();
    } catch (const Error& e) {
        fail(where, e.what());
    }
    return sc;
}

OutputOptions parse_outputs(const json& o, const std::string& where) {
    if (!o.is_object()) {
        fail(where, "expected an object");
    }
    reject_unknown(o, {"stride", "directory", "formats", "boundary_every", "boundary_points"}, where);
    OutputOptions out;
    if (o.contains("stride")) {
        const long k = get_integer(o["stride"], where + ".stride");
        if (k < 1) {
            fail(where + ".stride", "must be >= 1");
        }
        out.stride = static_cast<int>(k);
    }
    if (o.contains("directory")) {
        if (!o["directory"].is_string()) {
            fail(where + ".directory", "expected a string");
        }
        out.directory = o["directory"].get<std::string>();
    }
    if (o.contains("formats")) {
        const json& f = o["formats"];
        if (!f.is_array()) {
            fail(where + ".formats", "expected an array of strings");
        }
        out.timeseries = out.boundary = out.summary = false;
        for (const auto& item : f) {
            if (item == "timeseries") {
                out.timeseries = true;
            } else if (item == "boundary") {
                out.boundary = true;
            } else if (item == "summary") {
                out.summary = true;
            } else {
                fail(where + ".formats", "unknown format " + item.dump());
            }
        }
    }
    if (o.contains("boundary_every")) {
        const long k = get_integer(o["boundary_every"], where + ".boundary_every");
        if (k < 0) {
            fail(where + ".boundary_every", "must be >= 0");
        }
        out.boundary_every = static_cast<int>(k);
    }
    if (o.contains("boundary_points")) {
        const long k = get_integer(o["boundary_points"], where + ".boundary_points");
        if (k < 8 || k > (1L << 20)) {
            fail(where + ".boundary_points", "must lie in [8, 2^20]");
        }
        out.boundary_points = static_cast<int>(k);
    }
    return out;
}

CheckOptions parse_checks(const json& c, const std::string& where) {
    if (!c.is_object()) {
        fail(where, "expected an object");
    }
    reject_unknown(c, {"tolerances"}, where);
    CheckOptions out;
    if (c.contains("tolerances")) {
        const json& t = c["tolerances"];
        if (!t.is_object()) {
            fail(where + ".tolerances", "expected an object");
        }
        for (const auto& [key, value] : t.items()) {
            const double tol = get_number(value, where + ".tolerances." + key);
            if (!(tol > 0.0)) {
                fail(where + ".tolerances." + key, "must be > 0");
            }
            out.tolerances[key] = tol;
        }
    }
    return out;
}

} // namespace

RunConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Config, std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail("(root)", "expected an object");
    }
    reject_unknown(doc, {"schema_version", "name", "scenario", "outputs", "checks"}, "(root)");
    const long version = get_integer(require(doc, "schema_version", "(root)"), "schema_version");
    if (version != kConfigSchemaVersion) {
        fail("schema_version", "unsupported version " + std::to_string(version));
    }
    RunConfig cfg;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) {
            fail("name", "expected a string");
        }
        cfg.name = doc["name"].get<std::string>();
    }
    cfg.scenario = parse_scenario(require(doc, "scenario", "(root)"), "scenario");
    if (doc.contains("outputs")) {
        cfg.outputs = parse_outputs(doc["outputs"], "outputs");
    }
    cfg.scenario.output_stride = cfg.outputs.stride;
    if (doc.contains("checks")) {
        cfg.checks = parse_checks(doc["checks"], "checks");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace lgrowth
