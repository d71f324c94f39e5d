#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"
#include "wflow/flow.hpp"

using namespace wflow;
using namespace wflow::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("wflow_cli_test_" + std::to_string(static_cast<long>(::getpid())));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

json sphere_config() {
    return json{
        {"ambient", {{"kind", "space_form"}, {"epsilon", 0}, {"dim", 3}}},
        {"family", {{"kind", "geodesic_sphere"}}},
        {"weingarten", {{"kind", "squared_norm"}}},
        {"tau0", 1.0},
    };
}

const char* cli_path() { return std::getenv("WFLOW_CLI"); }

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(cli_path()) + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string write_config(const json& doc, const std::string& name) {
    const fs::path p = tmp_dir() / name;
    std::ofstream(p) << doc.dump(2);
    return p.string();
}

}  // namespace

TEST_CASE("run config parses into domain values") {
    const RunConfig cfg = parse_run_config(sphere_config());
    CHECK(cfg.family.kind() == FamilyKind::GeodesicSphere);
    CHECK(cfg.family.dimension() == 2);
    CHECK(cfg.spec.kind() == SpeedKind::SquaredNorm);
    CHECK(cfg.tau0 == 1.0);
    CHECK(cfg.solver.rtol == 1e-10);
    CHECK(cfg.output.format == "csv");
}

TEST_CASE("field-path errors") {
    SUBCASE("multiplicities not summing to n") {
        json doc = sphere_config();
        doc["ambient"] = {{"kind", "space_form"}, {"epsilon", 1}, {"dim", 5}};
        doc["family"] = {{"kind", "sphere_munzner"},
                         {"g", 2},
                         {"multiplicities", {2, 3}}};  // sums to 5, n = 4
        try {
            parse_run_config(doc);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.path() == "family.multiplicities");
        }
    }
    SUBCASE("unknown weingarten kind") {
        json doc = sphere_config();
        doc["weingarten"] = {{"kind", "harmonic"}};
        try {
            parse_run_config(doc);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.path() == "weingarten.kind");
        }
    }
    SUBCASE("missing tau0") {
        json doc = sphere_config();
        doc.erase("tau0");
        try {
            parse_run_config(doc);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.path() == "tau0");
        }
    }
    SUBCASE("bad output format") {
        json doc = sphere_config();
        doc["output"]["format"] = "xml";
        try {
            parse_run_config(doc);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.path() == "output.format");
        }
    }
}

TEST_CASE("overrides win over the document") {
    json doc = sphere_config();
    apply_override(doc, "tau0=0.25");
    apply_override(doc, "solver.rtol=1e-8");
    apply_override(doc, "family.kind=geodesic_sphere");
    const RunConfig cfg = parse_run_config(doc);
    CHECK(cfg.tau0 == 0.25);
    CHECK(cfg.solver.rtol == 1e-8);
    CHECK_THROWS_AS(apply_override(doc, "no-equals-sign"), ConfigError);
}

TEST_CASE("floating-point output round-trips at 17 significant digits") {
    const double values[] = {1.0 / 3.0, 0.1, 1e-17, 6.02214076e23, -0.4342944819032518};
    for (double v : values) CHECK(std::stod(format_double(v)) == v);

    json doc;
    doc["x"] = 1.0 / 3.0;
    doc["nested"] = {{"y", 0.2063494896439148}};
    doc["inf"] = std::numeric_limits<double>::infinity();
    const json back = json::parse(dump_json(doc));
    CHECK(back["x"].get<double>() == 1.0 / 3.0);
    CHECK(back["nested"]["y"].get<double>() == 0.2063494896439148);
    CHECK(back["inf"].is_null());
}

TEST_CASE("trajectory CSV layout") {
    const RunConfig cfg = parse_run_config(json{
        {"ambient", {{"kind", "space_form"}, {"epsilon", -1}, {"dim", 4}}},
        {"family", {{"kind", "horosphere"}}},
        {"weingarten", {{"kind", "mean_curvature"}, {"r", 1}}},
        {"tau0", 0.0},
        {"t_max", 10.0},
    });
    const FlowProblem problem(cfg.family, cfg.spec, cfg.tau0, cfg.t_max);
    const FlowTrajectory traj = integrate(problem, cfg.solver);
    const std::string csv = trajectory_csv(traj, cfg.family, cfg.spec, 20);

    CHECK(csv.rfind("t,tau,phi,speed,k1_m3\n", 0) == 0);
    CHECK(csv.find("# terminal verdict=non-collapsing") != std::string::npos);

    // mid rows satisfy tau = n t for the horosphere flow
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        ++rows;
        double t, tau;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &t, &tau) == 2);
        CHECK(std::abs(tau - 3.0 * t) <= 1e-9 * (1.0 + 3.0 * t));
    }
    CHECK(rows == 20);
}

TEST_CASE("cli binary end to end") {
    if (!cli_path()) {
        MESSAGE("WFLOW_CLI not set; skipping binary tests");
        return;
    }
    const std::string cfg = write_config(sphere_config(), "sphere.json");

    SUBCASE("exit codes") {
        CHECK(run_cli("families") == 0);
        CHECK(run_cli("collapse --config " + cfg) == 0);
        CHECK(run_cli("collapse --config /no/such/file.json") == 4);

        json bad = sphere_config();
        bad["ambient"] = {{"kind", "space_form"}, {"epsilon", 1}, {"dim", 5}};
        bad["family"] = {{"kind", "sphere_munzner"}, {"g", 2}, {"multiplicities", {2, 3}}};
        CHECK(run_cli("collapse --config " + write_config(bad, "bad.json")) == 2);

        const fs::path garbled = tmp_dir() / "garbled.json";
        std::ofstream(garbled) << "{not json";
        CHECK(run_cli("collapse --config " + garbled.string()) == 2);

        // Gauss curvature of a Euclidean cylinder vanishes identically, so
        // the collapse quadrature reports a stalled flow.
        json stalled = sphere_config();
        stalled["ambient"] = {{"kind", "space_form"}, {"epsilon", 0}, {"dim", 4}};
        stalled["family"] = {{"kind", "generalized_cylinder"}, {"k", 1}};
        stalled["weingarten"] = {{"kind", "gauss"}};
        CHECK(run_cli("collapse --config " + write_config(stalled, "stalled.json")) == 3);

        CHECK(run_cli("verify --suite axioms") == 0);
    }

    SUBCASE("collapse result schema and oracle difference") {
        const std::string out = (tmp_dir() / "collapse.json").string();
        REQUIRE(run_cli("collapse --config " + cfg + " --output " + out) == 0);
        const json result = json::parse(read_text_file(out));
        for (const char* key : {"config_echo", "verdict", "T", "end", "error_estimate",
                                "closed_form", "abs_diff", "wall_time_s"})
            CHECK(result.contains(key));
        CHECK(result["verdict"] == "collapsed");
        CHECK(result["T"].get<double>() == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
        CHECK(result["closed_form"].get<double>() ==
              doctest::Approx(1.0 / 6.0).epsilon(1e-14));
        CHECK(result["abs_diff"].get<double>() <= 1e-8);
    }

    SUBCASE("deterministic outputs") {
        // bit-identical runs need the identical config, including the path
        const std::string out = (tmp_dir() / "det.json").string();
        REQUIRE(run_cli("collapse --config " + cfg + " --output " + out) == 0);
        json a = json::parse(read_text_file(out));
        REQUIRE(run_cli("collapse --config " + cfg + " --output " + out) == 0);
        json b = json::parse(read_text_file(out));
        a.erase("wall_time_s");
        b.erase("wall_time_s");
        CHECK(a == b);

        const std::string csv = (tmp_dir() / "det.csv").string();
        REQUIRE(run_cli("simulate --config " + cfg + " --output " + csv) == 0);
        const std::string first = read_text_file(csv);
        REQUIRE(run_cli("simulate --config " + cfg + " --output " + csv) == 0);
        CHECK(first == read_text_file(csv));
    }

    SUBCASE("simulate json output re-parses") {
        const std::string out = (tmp_dir() / "traj.json").string();
        REQUIRE(run_cli("simulate --config " + cfg + " --format json --samples 25 --output " +
                        out) == 0);
        const json doc = json::parse(read_text_file(out));
        for (const char* key : {"config_echo", "samples", "terminal"}) CHECK(doc.contains(key));
        CHECK(doc["samples"].size() == 25);
        CHECK(doc["samples"][0]["phi"].get<double>() == 0.0);
        CHECK(doc["terminal"]["verdict"] == "collapsed");
        CHECK(doc["terminal"]["T"].get<double>() ==
              doctest::Approx(1.0 / 6.0).epsilon(1e-8));
    }

    SUBCASE("simulate override changes the run") {
        const std::string out = (tmp_dir() / "override.csv").string();
        REQUIRE(run_cli("simulate --config " + cfg + " --set tau0=0.5 --output " + out) ==
                0);
        const std::string csv = read_text_file(out);
        CHECK(csv.find("0.5") != std::string::npos);
    }

    SUBCASE("sweep produces one record per cell") {
        json doc = sphere_config();
        doc["sweep"] = {{"tau0", {0.5, 1.0}}, {"ambient.dim", {3, 4}}};
        const std::string out = (tmp_dir() / "sweep.csv").string();
        REQUIRE(run_cli("sweep --config " + write_config(doc, "sweep.json") +
                        " --jobs 2 --output " + out) == 0);
        const std::string table = read_text_file(out);
        int lines = 0;
        for (char c : table)
            if (c == '\n') ++lines;
        CHECK(lines == 5);  // header + 4 cells
        CHECK(table.rfind("ambient.dim,tau0,verdict,T,end,", 0) == 0);
    }

    SUBCASE("avoidance command") {
        const json doc = {
            {"ambient", {{"kind", "space_form"}, {"epsilon", 0}, {"dim", 3}}},
            {"weingarten", {{"kind", "mean_curvature"}, {"r", 1}}},
            {"scenario",
             {{"kind", "concentric_spheres"}, {"tau1", 2.0}, {"tau2", 1.0}}},
            {"grid", 100},
        };
        const std::string out = (tmp_dir() / "avoid.csv").string();
        CHECK(run_cli("avoidance --config " + write_config(doc, "avoid.json") +
                      " --output " + out) == 0);
        const std::string curve = read_text_file(out);
        CHECK(curve.rfind("t,D\n", 0) == 0);
        CHECK(curve.find("# verdict=pass") != std::string::npos);
    }
}
