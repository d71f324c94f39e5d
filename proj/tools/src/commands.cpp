#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <thread>

#include "config.hpp"
#include "output.hpp"
#include "wflow/errors.hpp"
#include "wflow/oracle.hpp"
#include "wflow/verify.hpp"

namespace wflow::cli {

namespace {

using nlohmann::json;

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_text_file(path, content);
}

FlowProblem make_problem(const RunConfig& cfg) {
    return FlowProblem(cfg.family, cfg.spec, cfg.tau0, cfg.t_max);
}

json collapse_record(const RunConfig& cfg, const CollapseResult& res, double wall_s) {
    const auto cf = oracle::closed_form_T(make_problem(cfg));
    const bool collapsed = res.verdict == Verdict::Collapsed;
    json out;
    out["config_echo"] = cfg.echo;
    out["verdict"] = verdict_name(res.verdict);
    out["T"] = collapsed ? json(res.time) : json(nullptr);
    if (collapsed)
        out["end"] = res.end;
    else if (res.verdict == Verdict::NonCollapsing)
        out["end"] = reason_name(res.reason);
    else
        out["end"] = nullptr;
    out["error_estimate"] = res.error_estimate;
    out["closed_form"] = cf ? json(cf->T) : json(nullptr);
    out["abs_diff"] =
        (cf && collapsed) ? json(std::abs(res.time - cf->T)) : json(nullptr);
    out["wall_time_s"] = wall_s;
    return out;
}

// Cartesian product of the sweep axes, lexicographic in axis order.
std::vector<std::vector<size_t>> cells_of(
    const std::vector<std::pair<std::string, json>>& axes) {
    std::vector<std::vector<size_t>> cells;
    std::vector<size_t> idx(axes.size(), 0);
    while (true) {
        cells.push_back(idx);
        size_t k = axes.size();
        while (k > 0) {
            --k;
            if (++idx[k] < axes[k].second.size()) break;
            idx[k] = 0;
            if (k == 0) return cells;
        }
    }
}

}  // namespace

json load_config(const CommonOptions& opts) {
    if (opts.config_path.empty())
        throw ConfigError("", "no config file given (--config PATH)");
    json doc;
    try {
        doc = json::parse(read_text_file(opts.config_path));
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    for (const auto& o : opts.overrides) apply_override(doc, o);
    if (!opts.output_path.empty()) doc["output"]["path"] = opts.output_path;
    if (!opts.format.empty()) doc["output"]["format"] = opts.format;
    return doc;
}

int cmd_simulate(const CommonOptions& opts) {
    const RunConfig cfg = parse_run_config(load_config(opts));
    const FlowTrajectory traj = integrate(make_problem(cfg), cfg.solver);

    std::string content;
    if (cfg.output.format == "csv") {
        content = trajectory_csv(traj, cfg.family, cfg.spec, cfg.output.samples);
    } else {
        json out;
        out["config_echo"] = cfg.echo;
        out["samples"] = trajectory_json_samples(traj, cfg.family, cfg.spec,
                                                 cfg.output.samples);
        out["terminal"] = terminal_json(traj.terminal);
        content = dump_json(out);
    }
    write_or_print(cfg.output.path, content);
    if (!cfg.output.path.empty())
        std::cout << "wrote " << cfg.output.path << " ("
                  << verdict_name(traj.terminal.verdict) << ")\n";
    return 0;
}

int cmd_collapse(const CommonOptions& opts) {
    json doc = load_config(opts);
    if (!doc.contains("output") || !doc["output"].contains("format"))
        doc["output"]["format"] = "json";
    const RunConfig cfg = parse_run_config(doc);
    const double tol = opts.tol > 0.0 ? opts.tol : 1e-10;

    const auto t0 = std::chrono::steady_clock::now();
    const CollapseResult res = collapse_time(make_problem(cfg), tol);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_or_print(cfg.output.path, dump_json(collapse_record(cfg, res, wall)));
    if (!cfg.output.path.empty())
        std::cout << "wrote " << cfg.output.path << " (" << verdict_name(res.verdict)
                  << ")\n";
    return 0;
}

int cmd_verify(const CommonOptions& opts, const std::vector<std::string>& suites) {
    const verify::Report report = verify::run(suites, opts.seed);
    for (const auto& suite : report.suites) {
        for (const auto& c : suite.cases) {
            if (c.passed) {
                std::printf("[ok]   %s\n", c.name.c_str());
            } else {
                std::printf("[FAIL] %s expected=%.17g actual=%.17g diff=%.3g tol=%.3g %s\n",
                            c.name.c_str(), c.expected, c.actual, c.difference,
                            c.tolerance, c.detail.c_str());
            }
        }
    }
    std::printf("verify: %d cases, %d failures, %.2f s\n", report.total_cases(),
                report.total_failures(), report.wall_time_s);

    if (!opts.output_path.empty()) {
        json out;
        out["wall_time_s"] = report.wall_time_s;
        out["all_passed"] = report.all_passed();
        json suites_json = json::array();
        for (const auto& suite : report.suites) {
            json sj;
            sj["suite"] = suite.suite;
            json cases = json::array();
            for (const auto& c : suite.cases)
                cases.push_back({{"name", c.name},
                                 {"passed", c.passed},
                                 {"expected", c.expected},
                                 {"actual", c.actual},
                                 {"difference", c.difference},
                                 {"tolerance", c.tolerance},
                                 {"detail", c.detail}});
            sj["cases"] = std::move(cases);
            suites_json.push_back(std::move(sj));
        }
        out["suites"] = std::move(suites_json);
        write_text_file(opts.output_path, dump_json(out));
    }
    return report.all_passed() ? 0 : 1;
}

int cmd_sweep(const CommonOptions& opts) {
    json doc = load_config(opts);
    const auto axes = sweep_axes(doc);
    json base = doc;
    base.erase("sweep");
    const auto cells = cells_of(axes);

    struct RowResult {
        std::vector<std::string> axis_values;
        std::string verdict, end, detail;
        double T = 0.0, error_estimate = 0.0;
        bool has_T = false;
        double closed_form = 0.0, abs_diff = 0.0;
        bool has_cf = false;
        int error_kind = 0;  // 0 ok, 2 config, 3 numerical
    };
    std::vector<RowResult> rows(cells.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            RowResult& row = rows[i];
            json cell_doc = base;
            for (size_t a = 0; a < axes.size(); ++a) {
                const json& value = axes[a].second[cells[i][a]];
                apply_override(cell_doc, axes[a].first + "=" + value.dump());
                row.axis_values.push_back(value.is_string()
                                              ? value.get<std::string>()
                                              : value.dump());
            }
            try {
                const RunConfig cfg = parse_run_config(cell_doc);
                const CollapseResult res = collapse_time(make_problem(cfg), 1e-10);
                row.verdict = verdict_name(res.verdict);
                row.error_estimate = res.error_estimate;
                if (res.verdict == Verdict::Collapsed) {
                    row.T = res.time;
                    row.has_T = true;
                    row.end = res.end;
                } else if (res.verdict == Verdict::NonCollapsing) {
                    row.end = reason_name(res.reason);
                }
                if (const auto cf = oracle::closed_form_T(make_problem(cfg))) {
                    row.closed_form = cf->T;
                    row.has_cf = true;
                    if (row.has_T) row.abs_diff = std::abs(row.T - cf->T);
                }
            } catch (const ConfigError& e) {
                row.verdict = "error";
                row.detail = e.what();
                row.error_kind = 2;
            } catch (const std::invalid_argument& e) {
                row.verdict = "error";
                row.detail = e.what();
                row.error_kind = 2;
            } catch (const std::exception& e) {
                row.verdict = "error";
                row.detail = e.what();
                row.error_kind = 3;
            }
        }
    };

    const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(cells.size())));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::string out;
    for (const auto& axis : axes) out += axis.first + ",";
    out += "verdict,T,end,error_estimate,closed_form,abs_diff\n";
    int exit_code = 0;
    for (const auto& row : rows) {
        for (const auto& v : row.axis_values) out += v + ",";
        out += row.verdict + ",";
        out += (row.has_T ? format_double(row.T) : "") + std::string(",");
        out += row.end + ",";
        out += format_double(row.error_estimate) + ",";
        out += (row.has_cf ? format_double(row.closed_form) : "") + std::string(",");
        out += (row.has_cf && row.has_T ? format_double(row.abs_diff) : "");
        if (!row.detail.empty()) out += ",\"" + row.detail + "\"";
        out += "\n";
        if (row.error_kind != 0 && (exit_code == 0 || row.error_kind < exit_code))
            exit_code = row.error_kind;
    }

    std::string path;
    if (doc.contains("output") && doc["output"].contains("path") &&
        doc["output"]["path"].is_string())
        path = doc["output"]["path"].get<std::string>();
    write_or_print(path, out);
    if (!path.empty())
        std::cout << "wrote " << path << " (" << rows.size() << " cells)\n";
    return exit_code;
}

int cmd_avoidance(const CommonOptions& opts) {
    const AvoidanceConfig cfg = parse_avoidance_config(load_config(opts));
    const double tol = opts.tol > 0.0 ? opts.tol : cfg.tol;

    const avoid::DistanceCurve curve =
        avoid::distance_curve(cfg.scenario, cfg.solver, cfg.grid);
    const avoid::MonotoneVerdict verdict = avoid::check_monotone(curve, tol);

    std::string out = "t,D\n";
    for (const auto& [t, d] : curve.samples)
        out += format_double(t) + "," + format_double(d) + "\n";
    out += "# verdict=" + std::string(verdict.passed ? "pass" : "fail");
    if (!verdict.passed) {
        out += " worst_violation=" + format_double(verdict.worst_violation);
        out += " interval=[" + format_double(verdict.t_lo) + "," +
               format_double(verdict.t_hi) + "]";
    }
    if (curve.extension_case) out += " extension=sphere_inside_horosphere";
    out += "\n";

    write_or_print(cfg.output.path, out);
    std::cout << "avoidance " << scenario_kind_name(cfg.scenario.kind) << " ("
              << regime_name(cfg.scenario.regime) << " regime): "
              << (verdict.passed ? "monotone" : "VIOLATED") << "\n";
    return verdict.passed ? 0 : 1;
}

int cmd_families() {
    std::printf("%-22s %-22s %-46s %-16s %s\n", "family", "ambient", "principal curvatures",
                "tau domain", "collapse ends (lower | upper)");
    const char* rows[][5] = {
        {"geodesic_sphere", "Q_eps^{n+1}", "(cot_eps tau, n)",
         "(0, pi) eps=1; else (0, inf)", "center | antipodal-point (eps=1) / unbounded"},
        {"horosphere", "H^{n+1}", "(1, n)", "(-inf, inf)", "unbounded | ideal-point"},
        {"equidistant", "H^{n+1}", "(tanh tau, n)", "(0, inf)", "hyperplane-Pi | unbounded"},
        {"generalized_cylinder", "Q_eps^{n+1}, eps<=0",
         "(cot_eps tau, k), (0 or tanh tau, n-k)", "(0, inf)", "axis | unbounded"},
        {"sphere_munzner", "S^{n+1}", "(cot(tau+(i-1)pi/g), m_i), i=1..g", "(0, pi/g)",
         "F+ | F-"},
        {"hf_geodesic_sphere", "H_F^m", "(coth tau, q), (coth(tau/2)/2, n-q)", "(0, inf)",
         "center | unbounded"},
        {"hf_horosphere", "H_F^m", "(1, q), (1/2, n-q)", "(-inf, inf)",
         "unbounded | ideal-point"},
    };
    for (const auto& r : rows)
        std::printf("%-22s %-22s %-46s %-16s %s\n", r[0], r[1], r[2], r[3], r[4]);
    std::printf("\nq = n (F=R), 1 (F=C), 3 (F=K), 7 (F=O); drift: tau' = -W except "
                "horospheres (tau' = +W)\n");
    return 0;
}

int run_guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
}

}  // namespace wflow::cli
