#include "config.hpp"

#include <cmath>
#include <limits>

namespace wflow::cli {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object())
        throw ConfigError(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(join(path, key), "missing required field");
    return *it;
}

const json* maybe(const json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double as_num(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    return v.get<int>();
}

std::string as_str(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
    return v.get<std::string>();
}

Field parse_field(const std::string& s, const std::string& path) {
    if (s == "R") return Field::Real;
    if (s == "C") return Field::Complex;
    if (s == "K") return Field::Quaternion;
    if (s == "O") return Field::Octonion;
    throw ConfigError(path, "field must be one of R, C, K, O");
}

AmbientSpace parse_ambient(const json& a, const std::string& path) {
    const std::string kind = as_str(need(a, "kind", path), join(path, "kind"));
    if (kind == "space_form") {
        Epsilon eps;
        try {
            eps = epsilon_from_int(as_int(need(a, "epsilon", path), join(path, "epsilon")));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(join(path, "epsilon"), e.what());
        }
        const int dim = as_int(need(a, "dim", path), join(path, "dim"));
        try {
            return AmbientSpace::space_form(eps, dim);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(join(path, "dim"), e.what());
        }
    }
    if (kind == "hyperbolic_field") {
        const Field f =
            parse_field(as_str(need(a, "field", path), join(path, "field")),
                        join(path, "field"));
        const int m = as_int(need(a, "m", path), join(path, "m"));
        try {
            return AmbientSpace::hyperbolic(f, m);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(join(path, "m"), e.what());
        }
    }
    throw ConfigError(join(path, "kind"),
                      "ambient kind must be space_form or hyperbolic_field");
}

IsoparametricFamily parse_family(const json& doc) {
    const json& fam = need(doc, "family", "");
    const std::string kind = as_str(need(fam, "kind", "family"), "family.kind");

    if (kind == "sphere_munzner") {
        const int g = as_int(need(fam, "g", "family"), "family.g");
        const json& mj = need(fam, "multiplicities", "family");
        if (!mj.is_array() || mj.empty())
            throw ConfigError("family.multiplicities", "expected a non-empty array");
        std::vector<int> mults;
        int n = 0;
        for (size_t i = 0; i < mj.size(); ++i) {
            mults.push_back(as_int(mj[i], "family.multiplicities"));
            n += mults.back();
        }
        if (const json* ambient = maybe(doc, "ambient")) {
            const AmbientSpace a = parse_ambient(*ambient, "ambient");
            if (a.kind != AmbientSpace::Kind::SpaceForm || a.eps != Epsilon::Spherical)
                throw ConfigError("ambient.epsilon",
                                  "sphere_munzner lives in the eps = 1 space form");
            if (a.n() != n)
                throw ConfigError("family.multiplicities",
                                  "multiplicities must sum to n = ambient.dim - 1");
        }
        try {
            return IsoparametricFamily::sphere_munzner(g, std::move(mults));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("family.multiplicities", e.what());
        }
    }

    const AmbientSpace ambient = parse_ambient(need(doc, "ambient", ""), "ambient");
    const bool is_space_form = ambient.kind == AmbientSpace::Kind::SpaceForm;

    try {
        if (kind == "geodesic_sphere") {
            if (!is_space_form)
                return IsoparametricFamily::hf_geodesic_sphere(ambient.field, ambient.m);
            return IsoparametricFamily::geodesic_sphere(ambient);
        }
        if (kind == "horosphere") {
            if (!is_space_form)
                return IsoparametricFamily::hf_horosphere(ambient.field, ambient.m);
            if (ambient.eps != Epsilon::Hyperbolic)
                throw ConfigError("ambient.epsilon", "horospheres require epsilon = -1");
            return IsoparametricFamily::horosphere(ambient.n());
        }
        if (kind == "equidistant") {
            if (!is_space_form || ambient.eps != Epsilon::Hyperbolic)
                throw ConfigError("ambient.epsilon",
                                  "equidistant hypersurfaces require the eps = -1 space form");
            return IsoparametricFamily::equidistant(ambient.n());
        }
        if (kind == "generalized_cylinder") {
            if (!is_space_form)
                throw ConfigError("ambient.kind",
                                  "generalized_cylinder requires a space form ambient");
            const int k = as_int(need(fam, "k", "family"), "family.k");
            try {
                return IsoparametricFamily::generalized_cylinder(ambient, k);
            } catch (const std::invalid_argument& e) {
                throw ConfigError("family.k", e.what());
            }
        }
        if (kind == "hf_geodesic_sphere" || kind == "hf_horosphere") {
            if (is_space_form)
                throw ConfigError("ambient.kind",
                                  "hf_* families require a hyperbolic_field ambient");
            return kind == "hf_geodesic_sphere"
                       ? IsoparametricFamily::hf_geodesic_sphere(ambient.field, ambient.m)
                       : IsoparametricFamily::hf_horosphere(ambient.field, ambient.m);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError("family", e.what());
    }
    throw ConfigError("family.kind", "unknown family kind: " + kind);
}

WeingartenSpec parse_spec(const json& w, const std::string& path) {
    const std::string kind = as_str(need(w, "kind", path), join(path, "kind"));
    try {
        if (kind == "mean_curvature")
            return WeingartenSpec::mean_curvature(
                as_int(need(w, "r", path), join(path, "r")));
        if (kind == "squared_norm") return WeingartenSpec::squared_norm();
        if (kind == "gauss") return WeingartenSpec::gauss();
        if (kind == "power") {
            WeingartenSpec base = parse_spec(need(w, "base", path), join(path, "base"));
            const double p = as_num(need(w, "p", path), join(path, "p"));
            return WeingartenSpec::power(std::move(base), p);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(join(path, "kind"), "unknown weingarten kind: " + kind);
}

SolverConfig parse_solver(const json& doc) {
    SolverConfig s;
    if (const json* sj = maybe(doc, "solver")) {
        if (const json* v = maybe(*sj, "rtol")) s.rtol = as_num(*v, "solver.rtol");
        if (const json* v = maybe(*sj, "atol")) s.atol = as_num(*v, "solver.atol");
        if (const json* v = maybe(*sj, "max_step")) s.max_step = as_num(*v, "solver.max_step");
        if (const json* v = maybe(*sj, "collapse_margin"))
            s.collapse_margin = as_num(*v, "solver.collapse_margin");
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("solver", e.what());
    }
    return s;
}

OutputSpec parse_output(const json& doc) {
    OutputSpec o;
    if (const json* oj = maybe(doc, "output")) {
        if (const json* v = maybe(*oj, "path")) o.path = as_str(*v, "output.path");
        if (const json* v = maybe(*oj, "format")) o.format = as_str(*v, "output.format");
        if (const json* v = maybe(*oj, "samples")) o.samples = as_int(*v, "output.samples");
    }
    if (o.format != "csv" && o.format != "json")
        throw ConfigError("output.format", "format must be csv or json");
    if (o.samples < 2) throw ConfigError("output.samples", "samples must be >= 2");
    return o;
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& doc) {
    IsoparametricFamily family = parse_family(doc);
    WeingartenSpec spec = parse_spec(need(doc, "weingarten", ""), "weingarten");
    const double tau0 = as_num(need(doc, "tau0", ""), "tau0");

    double t_max = std::numeric_limits<double>::infinity();
    if (const json* v = maybe(doc, "t_max")) {
        t_max = as_num(*v, "t_max");
        if (!(t_max > 0.0)) throw ConfigError("t_max", "t_max must be positive");
    }

    return RunConfig{std::move(family), std::move(spec), tau0, t_max,
                     parse_solver(doc), parse_output(doc), doc};
}

AvoidanceConfig parse_avoidance_config(const nlohmann::json& doc) {
    const json& sj = need(doc, "scenario", "");
    avoid::PairScenario s;
    const std::string kind = as_str(need(sj, "kind", "scenario"), "scenario.kind");
    if (kind == "concentric_spheres")
        s.kind = avoid::ScenarioKind::ConcentricSpheres;
    else if (kind == "collinear_disjoint_spheres")
        s.kind = avoid::ScenarioKind::CollinearDisjointSpheres;
    else if (kind == "sphere_inside_horosphere")
        s.kind = avoid::ScenarioKind::SphereInsideHorosphere;
    else
        throw ConfigError("scenario.kind", "unknown scenario kind: " + kind);

    s.ambient = parse_ambient(need(doc, "ambient", ""), "ambient");
    s.spec = parse_spec(need(doc, "weingarten", ""), "weingarten");

    if (const json* v = maybe(sj, "tau1")) s.tau1 = as_num(*v, "scenario.tau1");
    if (const json* v = maybe(sj, "tau2")) s.tau2 = as_num(*v, "scenario.tau2");
    if (const json* v = maybe(sj, "center_distance"))
        s.center_distance = as_num(*v, "scenario.center_distance");
    if (const json* v = maybe(sj, "gap")) s.gap = as_num(*v, "scenario.gap");
    if (const json* v = maybe(sj, "regime")) {
        const std::string r = as_str(*v, "scenario.regime");
        if (r == "odd")
            s.regime = avoid::OrientationRegime::OddSpeed;
        else if (r == "inward_embedding")
            s.regime = avoid::OrientationRegime::InwardEmbedding;
        else
            throw ConfigError("scenario.regime", "regime must be odd or inward_embedding");
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("scenario", e.what());
    }

    AvoidanceConfig cfg{std::move(s), parse_solver(doc), 400, 1e-9, parse_output(doc), doc};
    if (const json* v = maybe(doc, "grid")) {
        cfg.grid = as_int(*v, "grid");
        if (cfg.grid < 1) throw ConfigError("grid", "grid must be >= 1");
    }
    if (const json* v = maybe(doc, "tol")) {
        cfg.tol = as_num(*v, "tol");
        if (!(cfg.tol > 0.0)) throw ConfigError("tol", "tol must be positive");
    }
    return cfg;
}

void apply_override(nlohmann::json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("", "override must have the form dotted.path=value: " + assignment);
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    nlohmann::json value;
    try {
        value = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error&) {
        value = raw;
    }

    nlohmann::json* node = &doc;
    size_t start = 0;
    while (true) {
        const size_t dot = path.find('.', start);
        const std::string part = path.substr(start, dot - start);
        if (part.empty()) throw ConfigError(path, "empty path segment in override");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

std::vector<std::pair<std::string, nlohmann::json>> sweep_axes(const nlohmann::json& doc) {
    std::vector<std::pair<std::string, nlohmann::json>> axes;
    const json& sweep = need(doc, "sweep", "");
    if (!sweep.is_object() || sweep.empty())
        throw ConfigError("sweep", "expected a non-empty object of path -> value arrays");
    for (auto it = sweep.begin(); it != sweep.end(); ++it) {
        if (!it.value().is_array() || it.value().empty())
            throw ConfigError("sweep." + it.key(), "expected a non-empty array of values");
        axes.emplace_back(it.key(), it.value());
    }
    return axes;
}

}  // namespace wflow::cli
