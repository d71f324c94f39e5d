#include "wflow/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "wflow/avoidance.hpp"
#include "wflow/errors.hpp"
#include "wflow/oracle.hpp"

namespace wflow::verify {

namespace {

// Pinned suite tolerances.
constexpr double kOracleRel = 1e-8;        // |T_quad - T_closed| <= kOracleRel * (1 + T)
constexpr double kResidualTol = 1e-6;      // implicit relation residual along trajectories
constexpr double kAgreementRtol = 1e-10;   // ODE-vs-quadrature comparison runs
constexpr double kAgreementAtol = 1e-12;
constexpr double kAgreementFactor = 10.0;  // |T_quad - T_ode| <= factor*(rtol*T + atol)
constexpr double kLinearTol = 1e-9;        // horosphere tau(t) linearity
constexpr double kConvexTol = 1e-9;        // phi second-divided-difference slack
constexpr double kEquidistantHorizon = 50.0;
constexpr double kEquidistantSpeedCap = 1e-3;
constexpr double kAvoidanceTol = 1e-9;
constexpr double kAvoidanceClosedFormTol = 1e-8;
constexpr int kAxiomSamples = 100;
constexpr int kAvoidanceGrid = 400;

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

CaseResult make_case(std::string name, double expected, double actual, double tol) {
    CaseResult c;
    c.name = std::move(name);
    c.expected = expected;
    c.actual = actual;
    c.difference = std::abs(actual - expected);
    c.tolerance = tol;
    c.passed = c.difference <= tol;
    return c;
}

CaseResult make_flag(std::string name, bool passed, std::string detail = "") {
    CaseResult c;
    c.name = std::move(name);
    c.passed = passed;
    c.detail = std::move(detail);
    return c;
}

SolverConfig agreement_config() {
    SolverConfig cfg;
    cfg.rtol = kAgreementRtol;
    cfg.atol = kAgreementAtol;
    return cfg;
}

double refined_quadrature_T(const FlowProblem& p) {
    const CollapseResult rough = collapse_time(p, 1e-6);
    if (rough.verdict != Verdict::Collapsed)
        throw NumericalFailure("expected a collapsing flow in the verification grid");
    const double tol = 0.5 * (kAgreementRtol * rough.time + kAgreementAtol);
    return collapse_time(p, tol).time;
}

SuiteResult run_axioms(std::uint64_t seed) {
    SuiteResult suite{"axioms", {}};
    struct Entry {
        WeingartenSpec spec;
        const char* label;
    };
    const Entry entries[] = {
        {WeingartenSpec::mean_curvature(1), "H_1"},
        {WeingartenSpec::mean_curvature(2), "H_2"},
        {WeingartenSpec::mean_curvature(3), "H_3"},
        {WeingartenSpec::squared_norm(), "A2"},
        {WeingartenSpec::gauss(), "K"},
    };
    for (const int n : {3, 5}) {
        for (const auto& e : entries) {
            const AxiomReport report = validate_axioms(e.spec, n, kAxiomSamples, seed);
            for (const auto& check : report.checks) {
                if (check.skipped) continue;
                suite.cases.push_back(make_flag(
                    std::string("axioms/") + e.label + "/n=" + std::to_string(n) + "/" +
                        check.axiom,
                    check.passed, check.counterexample));
            }
        }
    }
    return suite;
}

SuiteResult run_oracle() {
    SuiteResult suite{"oracle", {}};
    const SolverConfig cfg = agreement_config();
    for (const FlowProblem& p : oracle_grid()) {
        const auto cf = oracle::closed_form_T(p);
        if (!cf) continue;
        const std::string base = "oracle/" + std::string(cf->case_name) + "/" +
                                 p.family.name() + "/" + p.spec.name() +
                                 fmt("/R=%g", p.tau0);

        const CollapseResult quad = collapse_time(p, 1e-12);
        CaseResult tcase = make_case(base + "/T", cf->T, quad.time,
                                     kOracleRel * (1.0 + std::abs(cf->T)));
        if (quad.verdict != Verdict::Collapsed) {
            tcase.passed = false;
            tcase.detail = "quadrature verdict: " + verdict_name(quad.verdict);
        }
        suite.cases.push_back(tcase);

        const FlowTrajectory traj = integrate(p, cfg);
        double worst = 0.0;
        for (const auto& s : traj.samples) {
            const auto g = oracle::implicit_phi_residual(p, s.t, s.phi);
            if (g) worst = std::max(worst, std::abs(*g));
        }
        suite.cases.push_back(make_case(base + "/residual", 0.0, worst, kResidualTol));
    }
    return suite;
}

SuiteResult run_agreement() {
    SuiteResult suite{"agreement", {}};
    const SolverConfig cfg = agreement_config();
    for (const FlowProblem& p : oracle_grid()) {
        const std::string base =
            "agreement/" + p.family.name() + "/" + p.spec.name() + fmt("/R=%g", p.tau0);
        const double t_quad = refined_quadrature_T(p);
        const FlowTrajectory traj = integrate(p, cfg);
        CaseResult c = make_case(base, t_quad, traj.terminal.time,
                                 kAgreementFactor * (kAgreementRtol * t_quad + kAgreementAtol));
        if (traj.terminal.verdict != Verdict::Collapsed) {
            c.passed = false;
            c.detail = "integrate verdict: " + verdict_name(traj.terminal.verdict);
        }
        suite.cases.push_back(c);
    }

    // Non-collapsing flows must agree on the verdict across both routes.
    struct NC {
        FlowProblem problem;
        NonCollapseReason reason;
        const char* label;
    };
    const std::vector<NC> noncollapse = {
        {FlowProblem(IsoparametricFamily::horosphere(2), WeingartenSpec::mean_curvature(1),
                     0.0, kEquidistantHorizon),
         NonCollapseReason::ConstantSpeedHorosphere, "horosphere-H1"},
        {FlowProblem(IsoparametricFamily::hf_horosphere(Field::Complex, 2),
                     WeingartenSpec::mean_curvature(1), 0.0, kEquidistantHorizon),
         NonCollapseReason::ConstantSpeedHorosphere, "hf-horosphere-H1"},
        {FlowProblem(IsoparametricFamily::equidistant(2), WeingartenSpec::mean_curvature(1),
                     1.0, kEquidistantHorizon),
         NonCollapseReason::AsymptoticToBoundary, "equidistant-H1"},
    };
    for (const auto& nc : noncollapse) {
        const CollapseResult quad = collapse_time(nc.problem, 1e-10);
        const bool ok =
            quad.verdict == Verdict::NonCollapsing && quad.reason == nc.reason;
        suite.cases.push_back(make_flag(std::string("agreement/verdict/") + nc.label, ok,
                                        verdict_name(quad.verdict)));
    }
    return suite;
}

bool second_differences_above(const FlowTrajectory& traj, double floor) {
    const auto& s = traj.samples;
    for (size_t i = 0; i + 2 < s.size(); ++i) {
        const double d1 = (s[i + 1].phi - s[i].phi) / (s[i + 1].t - s[i].t);
        const double d2 = (s[i + 2].phi - s[i + 1].phi) / (s[i + 2].t - s[i + 1].t);
        if (d2 - d1 < floor) return false;
    }
    return true;
}

SuiteResult run_qualitative() {
    SuiteResult suite{"qualitative", {}};
    SolverConfig cfg;

    // Horosphere flows: non-collapsing, exactly linear tau(t).
    struct Horo {
        FlowProblem problem;
        const char* label;
    };
    const std::vector<Horo> horos = {
        {FlowProblem(IsoparametricFamily::horosphere(2), WeingartenSpec::mean_curvature(1),
                     0.0, 20.0),
         "horosphere/H_1/n=2"},
        {FlowProblem(IsoparametricFamily::horosphere(3), WeingartenSpec::squared_norm(),
                     0.5, 20.0),
         "horosphere/A2/n=3"},
        {FlowProblem(IsoparametricFamily::hf_horosphere(Field::Quaternion, 2),
                     WeingartenSpec::mean_curvature(1), 0.0, 20.0),
         "hf-horosphere/H_1/K-m=2"},
    };
    for (const auto& h : horos) {
        const double w = speed(h.problem.family, h.problem.spec, h.problem.tau0);
        const FlowTrajectory traj = integrate(h.problem, cfg);
        double worst = 0.0;
        for (const auto& s : traj.samples)
            worst = std::max(worst, std::abs(s.tau - (h.problem.tau0 + w * s.t)));
        const bool verdict_ok =
            traj.terminal.verdict == Verdict::NonCollapsing &&
            traj.terminal.reason == NonCollapseReason::ConstantSpeedHorosphere;
        suite.cases.push_back(make_flag(std::string("qualitative/") + h.label + "/verdict",
                                        verdict_ok, verdict_name(traj.terminal.verdict)));
        suite.cases.push_back(make_case(std::string("qualitative/") + h.label + "/linear",
                                        0.0, worst,
                                        kLinearTol * (1.0 + std::abs(w) * 20.0)));
    }

    // Equidistant flows: non-collapsing; phi increasing, concave, bounded by
    // tau0; speed at t_max below the cap.
    struct Equi {
        FlowProblem problem;
        const char* label;
    };
    const std::vector<Equi> equis = {
        {FlowProblem(IsoparametricFamily::equidistant(2), WeingartenSpec::mean_curvature(1),
                     1.0, kEquidistantHorizon),
         "equidistant/H_1/n=2"},
        {FlowProblem(IsoparametricFamily::equidistant(3), WeingartenSpec::squared_norm(),
                     0.7, kEquidistantHorizon),
         "equidistant/A2/n=3"},
        {FlowProblem(IsoparametricFamily::equidistant(4), WeingartenSpec::mean_curvature(3),
                     1.2, kEquidistantHorizon),
         "equidistant/H_3/n=4"},
    };
    for (const auto& e : equis) {
        const std::string base = std::string("qualitative/") + e.label;
        const CollapseResult quad = collapse_time(e.problem, 1e-10);
        suite.cases.push_back(make_flag(
            base + "/verdict",
            quad.verdict == Verdict::NonCollapsing &&
                quad.reason == NonCollapseReason::AsymptoticToBoundary,
            verdict_name(quad.verdict)));
        const FlowTrajectory traj = integrate(e.problem, cfg);
        // strict growth of phi is only resolvable while tau has not
        // underflown relative to tau0
        bool increasing = true, bounded = true;
        for (size_t i = 0; i + 1 < traj.samples.size(); ++i) {
            if (traj.samples[i + 1].phi < traj.samples[i].phi) increasing = false;
            if (traj.samples[i].tau > 1e-12 &&
                traj.samples[i + 1].phi <= traj.samples[i].phi)
                increasing = false;
        }
        for (const auto& s : traj.samples)
            if (s.phi > e.problem.tau0 * (1.0 + 1e-12)) bounded = false;
        bool concave = true;
        for (size_t i = 0; i + 2 < traj.samples.size(); ++i) {
            const auto& s = traj.samples;
            const double d1 = (s[i + 1].phi - s[i].phi) / (s[i + 1].t - s[i].t);
            const double d2 = (s[i + 2].phi - s[i + 1].phi) / (s[i + 2].t - s[i + 1].t);
            if (d2 - d1 > kConvexTol) concave = false;
        }
        std::string shape_detail;
        if (!increasing) shape_detail += "not increasing; ";
        if (!concave) shape_detail += "not concave; ";
        if (!bounded) shape_detail += "exceeds tau0; ";
        suite.cases.push_back(make_flag(base + "/phi-shape",
                                        increasing && concave && bounded, shape_detail));
        suite.cases.push_back(make_case(base + "/speed-at-horizon", 0.0,
                                        std::abs(traj.samples.back().speed),
                                        kEquidistantSpeedCap));
    }

    // Sphere-type flows: collapse in finite time with strictly convex phi.
    std::vector<std::pair<FlowProblem, std::string>> spheres;
    for (const int eps : {0, 1, -1}) {
        const auto ambient = AmbientSpace::space_form(epsilon_from_int(eps), 4);
        spheres.emplace_back(
            FlowProblem(IsoparametricFamily::geodesic_sphere(ambient),
                        WeingartenSpec::mean_curvature(1), 1.0),
            fmt("sphere/H_1/eps=%g", eps));
        spheres.emplace_back(
            FlowProblem(IsoparametricFamily::geodesic_sphere(ambient),
                        WeingartenSpec::squared_norm(), 0.8),
            fmt("sphere/A2/eps=%g", eps));
    }
    spheres.emplace_back(
        FlowProblem(IsoparametricFamily::generalized_cylinder(
                        AmbientSpace::space_form(Epsilon::Euclidean, 5), 2),
                    WeingartenSpec::mean_curvature(1), 1.0),
        "cylinder/H_1/eps=0");
    spheres.emplace_back(
        FlowProblem(IsoparametricFamily::generalized_cylinder(
                        AmbientSpace::space_form(Epsilon::Hyperbolic, 4), 2),
                    WeingartenSpec::mean_curvature(2), 0.9),
        "cylinder/H_2/eps=-1");
    for (const Field f : {Field::Real, Field::Complex, Field::Quaternion, Field::Octonion})
        spheres.emplace_back(
            FlowProblem(IsoparametricFamily::hf_geodesic_sphere(f, 2),
                        WeingartenSpec::mean_curvature(1), 1.0),
            "hf-sphere/H_1/" + field_name(f));
    spheres.emplace_back(
        FlowProblem(IsoparametricFamily::sphere_munzner(2, {3, 2}), WeingartenSpec::gauss(),
                    0.6),
        "munzner/K/(3,2)");
    spheres.emplace_back(
        FlowProblem(IsoparametricFamily::sphere_munzner(4, {2, 2, 2, 2}),
                    WeingartenSpec::mean_curvature(1), 0.2),
        "munzner/H_1/g=4");

    for (const auto& [problem, label] : spheres) {
        const FlowTrajectory traj = integrate(problem, cfg);
        const bool collapsed = traj.terminal.verdict == Verdict::Collapsed;
        const bool convex = second_differences_above(traj, -kConvexTol);
        suite.cases.push_back(make_flag("qualitative/" + label + "/collapse+convex",
                                        collapsed && convex,
                                        verdict_name(traj.terminal.verdict)));
    }
    return suite;
}

SuiteResult run_avoidance() {
    SuiteResult suite{"avoidance", {}};
    SolverConfig cfg;

    using avoid::OrientationRegime;
    using avoid::PairScenario;
    using avoid::ScenarioKind;

    auto sphere_amb = [](int eps, int dim) {
        return AmbientSpace::space_form(epsilon_from_int(eps), dim);
    };

    std::vector<std::pair<PairScenario, std::string>> scenarios;
    {
        PairScenario s;
        s.kind = ScenarioKind::ConcentricSpheres;
        s.ambient = sphere_amb(0, 3);
        s.spec = WeingartenSpec::mean_curvature(1);
        s.tau1 = 2.0;
        s.tau2 = 1.0;
        scenarios.emplace_back(s, "concentric/eps=0/H_1");
    }
    {
        PairScenario s;
        s.kind = ScenarioKind::ConcentricSpheres;
        s.ambient = sphere_amb(0, 4);
        s.spec = WeingartenSpec::mean_curvature(3);
        s.tau1 = 1.5;
        s.tau2 = 0.8;
        scenarios.emplace_back(s, "concentric/eps=0/H_3");
    }
    {
        PairScenario s;
        s.kind = ScenarioKind::ConcentricSpheres;
        s.ambient = sphere_amb(-1, 4);
        s.spec = WeingartenSpec::mean_curvature(1);
        s.tau1 = 1.5;
        s.tau2 = 0.7;
        scenarios.emplace_back(s, "concentric/eps=-1/H_1");
    }
    {
        PairScenario s;
        s.kind = ScenarioKind::ConcentricSpheres;
        s.ambient = sphere_amb(1, 3);
        s.spec = WeingartenSpec::mean_curvature(1);
        s.tau1 = 1.2;
        s.tau2 = 0.6;
        scenarios.emplace_back(s, "concentric/eps=1/H_1");
    }
    {
        PairScenario s;
        s.kind = ScenarioKind::ConcentricSpheres;
        s.ambient = AmbientSpace::hyperbolic(Field::Complex, 2);
        s.spec = WeingartenSpec::mean_curvature(1);
        s.tau1 = 1.5;
        s.tau2 = 0.8;
        scenarios.emplace_back(s, "concentric/H_C^2/H_1");
    }
    {
        PairScenario s;
        s.kind = ScenarioKind::CollinearDisjointSpheres;
        s.ambient = sphere_amb(0, 3);
        s.spec = WeingartenSpec::mean_curvature(1);
        s.tau1 = 1.0;
        s.tau2 = 1.0;
        s.center_distance = 10.0;
        scenarios.emplace_back(s, "collinear/eps=0/H_1");
    }
    {
        PairScenario s;
        s.kind = ScenarioKind::CollinearDisjointSpheres;
        s.ambient = sphere_amb(-1, 4);
        s.spec = WeingartenSpec::mean_curvature(3);
        s.tau1 = 1.2;
        s.tau2 = 0.9;
        s.center_distance = 6.0;
        scenarios.emplace_back(s, "collinear/eps=-1/H_3");
    }
    {
        PairScenario s;
        s.kind = ScenarioKind::CollinearDisjointSpheres;
        s.ambient = sphere_amb(1, 3);
        s.spec = WeingartenSpec::mean_curvature(1);
        s.tau1 = 0.4;
        s.tau2 = 0.35;
        s.center_distance = 1.3;
        scenarios.emplace_back(s, "collinear/eps=1/H_1");
    }
    {
        PairScenario s;
        s.kind = ScenarioKind::SphereInsideHorosphere;
        s.ambient = sphere_amb(-1, 3);
        s.spec = WeingartenSpec::mean_curvature(1);
        s.tau1 = 1.0;
        s.gap = 0.5;
        scenarios.emplace_back(s, "sphere-in-horosphere/H_1");
    }
    {
        PairScenario s;
        s.kind = ScenarioKind::SphereInsideHorosphere;
        s.ambient = sphere_amb(-1, 4);
        s.spec = WeingartenSpec::mean_curvature(3);
        s.tau1 = 1.2;
        s.gap = 0.3;
        scenarios.emplace_back(s, "sphere-in-horosphere/H_3");
    }

    for (const auto& [scenario, label] : scenarios) {
        const avoid::DistanceCurve curve =
            avoid::distance_curve(scenario, cfg, kAvoidanceGrid);
        const avoid::MonotoneVerdict mv = avoid::check_monotone(curve, kAvoidanceTol);
        double min_d = curve.samples.front().second;
        for (const auto& [t, d] : curve.samples) min_d = std::min(min_d, d);
        const double d0 = curve.samples.front().second;
        const bool disjoint = min_d >= d0 - kAvoidanceTol;
        suite.cases.push_back(make_flag(
            "avoidance/" + label, mv.passed && disjoint,
            mv.passed ? "" : fmt("violation %.3g in [%g, ...]", mv.worst_violation, mv.t_lo)));
    }

    // Concentric Euclidean H_1 against its exact distance curve.
    {
        PairScenario s;
        s.kind = ScenarioKind::ConcentricSpheres;
        s.ambient = sphere_amb(0, 3);
        s.spec = WeingartenSpec::mean_curvature(1);
        s.tau1 = 2.0;
        s.tau2 = 1.0;
        const int n = s.ambient.n();
        const avoid::DistanceCurve curve = avoid::distance_curve(s, cfg, kAvoidanceGrid);
        double worst = 0.0;
        for (const auto& [t, d] : curve.samples) {
            const double r1 = std::sqrt(s.tau1 * s.tau1 - 2.0 * n * t);
            const double r2 = std::sqrt(s.tau2 * s.tau2 - 2.0 * n * t);
            worst = std::max(worst, std::abs(d - (r1 - r2) * (r1 - r2)));
        }
        suite.cases.push_back(make_case("avoidance/concentric-closed-form", 0.0, worst,
                                        kAvoidanceClosedFormTol));
    }
    return suite;
}

}  // namespace

bool SuiteResult::all_passed() const {
    return std::all_of(cases.begin(), cases.end(),
                       [](const CaseResult& c) { return c.passed; });
}

bool Report::all_passed() const {
    return std::all_of(suites.begin(), suites.end(),
                       [](const SuiteResult& s) { return s.all_passed(); });
}

int Report::total_cases() const {
    int n = 0;
    for (const auto& s : suites) n += static_cast<int>(s.cases.size());
    return n;
}

int Report::total_failures() const {
    int n = 0;
    for (const auto& s : suites)
        for (const auto& c : s.cases)
            if (!c.passed) ++n;
    return n;
}

std::vector<std::string> suite_names() {
    return {"axioms", "oracle", "agreement", "qualitative", "avoidance"};
}

std::vector<FlowProblem> oracle_grid() {
    std::vector<FlowProblem> grid;
    const double radii[] = {0.25, 0.5, 1.0};
    for (const int eps : {0, 1, -1}) {
        for (const int n : {2, 3, 5}) {
            const auto ambient = AmbientSpace::space_form(epsilon_from_int(eps), n + 1);
            const auto sphere = IsoparametricFamily::geodesic_sphere(ambient);
            for (const double R : radii) {
                grid.emplace_back(sphere, WeingartenSpec::squared_norm(), R);
                const int r_max = eps == 0 ? std::min(n, 3) : 2;
                for (int r = 1; r <= r_max; ++r)
                    grid.emplace_back(sphere, WeingartenSpec::mean_curvature(r), R);
            }
        }
    }
    for (const Field f : {Field::Real, Field::Complex, Field::Quaternion}) {
        for (const int m : {2, 3}) {
            const auto sphere = IsoparametricFamily::hf_geodesic_sphere(f, m);
            for (const double R : {0.5, 1.0})
                grid.emplace_back(sphere, WeingartenSpec::mean_curvature(1), R);
        }
    }
    {
        const auto sphere = IsoparametricFamily::hf_geodesic_sphere(Field::Octonion, 2);
        for (const double R : {0.5, 1.0})
            grid.emplace_back(sphere, WeingartenSpec::mean_curvature(1), R);
    }
    for (const double tau0 : {0.3, 0.6}) {
        grid.emplace_back(IsoparametricFamily::sphere_munzner(2, {2, 2}),
                          WeingartenSpec::gauss(), tau0);
        grid.emplace_back(IsoparametricFamily::sphere_munzner(2, {3, 2}),
                          WeingartenSpec::gauss(), tau0);
    }
    return grid;
}

Report run(const std::vector<std::string>& suites, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> wanted = suites.empty() ? suite_names() : suites;

    Report report;
    for (const auto& name : wanted) {
        if (name == "axioms")
            report.suites.push_back(run_axioms(seed));
        else if (name == "oracle")
            report.suites.push_back(run_oracle());
        else if (name == "agreement")
            report.suites.push_back(run_agreement());
        else if (name == "qualitative")
            report.suites.push_back(run_qualitative());
        else if (name == "avoidance")
            report.suites.push_back(run_avoidance());
        else
            throw std::invalid_argument("unknown verification suite: " + name);
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace wflow::verify
