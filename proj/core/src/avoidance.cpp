#include "wflow/avoidance.hpp"

#include <cmath>
#include <stdexcept>

#include "wflow/errors.hpp"

namespace wflow::avoid {

namespace {

constexpr double kPi = 3.14159265358979323846;

IsoparametricFamily sphere_family(const AmbientSpace& ambient) {
    if (ambient.kind == AmbientSpace::Kind::SpaceForm)
        return IsoparametricFamily::geodesic_sphere(ambient);
    return IsoparametricFamily::hf_geodesic_sphere(ambient.field, ambient.m);
}

}  // namespace

std::string scenario_kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::ConcentricSpheres: return "concentric_spheres";
        case ScenarioKind::CollinearDisjointSpheres: return "collinear_disjoint_spheres";
        case ScenarioKind::SphereInsideHorosphere: return "sphere_inside_horosphere";
    }
    return "?";
}

std::string regime_name(OrientationRegime r) {
    switch (r) {
        case OrientationRegime::OddSpeed: return "odd";
        case OrientationRegime::InwardEmbedding: return "inward_embedding";
    }
    return "?";
}

void PairScenario::validate() const {
    const int n = ambient.n();
    if (regime == OrientationRegime::OddSpeed && !spec.odd(n))
        throw std::invalid_argument(
            "scenario speed function is not odd; declare the inward-embedding regime");
    switch (kind) {
        case ScenarioKind::ConcentricSpheres:
            if (!(tau2 > 0.0) || !(tau1 >= tau2))
                throw std::invalid_argument("concentric spheres need tau1 >= tau2 > 0");
            if (ambient.kind == AmbientSpace::Kind::SpaceForm &&
                ambient.eps == Epsilon::Spherical && !(tau1 < kPi / 2.0))
                throw std::invalid_argument(
                    "spherical concentric scenario must stay inside a hemisphere");
            break;
        case ScenarioKind::CollinearDisjointSpheres:
            if (!(tau1 > 0.0) || !(tau2 > 0.0) || !(tau1 + tau2 < center_distance))
                throw std::invalid_argument(
                    "collinear spheres need tau1, tau2 > 0 and tau1 + tau2 < center_distance");
            if (ambient.kind == AmbientSpace::Kind::SpaceForm &&
                ambient.eps == Epsilon::Spherical && !(center_distance < kPi / 2.0))
                throw std::invalid_argument(
                    "spherical collinear scenario must stay inside a hemisphere");
            break;
        case ScenarioKind::SphereInsideHorosphere:
            if (ambient.kind != AmbientSpace::Kind::SpaceForm ||
                ambient.eps != Epsilon::Hyperbolic)
                throw std::invalid_argument(
                    "sphere_inside_horosphere requires the real hyperbolic space form");
            if (!(tau1 > 0.0) || !(gap > 0.0))
                throw std::invalid_argument(
                    "sphere_inside_horosphere needs sphere radius tau1 > 0 and gap > 0");
            break;
    }
}

DistanceCurve distance_curve(const PairScenario& scenario, const SolverConfig& config,
                             int grid, double horizon_fraction) {
    scenario.validate();
    if (grid < 1) throw std::invalid_argument("grid must be >= 1");
    if (!(horizon_fraction > 0.0 && horizon_fraction < 1.0))
        throw std::invalid_argument("horizon_fraction must lie in (0, 1)");

    const IsoparametricFamily sphere = sphere_family(scenario.ambient);
    const double quad_tol = 1e-12;

    DistanceCurve curve;
    curve.extension_case = scenario.kind == ScenarioKind::SphereInsideHorosphere;

    // Dense sampling keeps the Hermite reconstruction of the radii well
    // below the distance tolerances even where the flow is slow and smooth.
    auto run_sphere = [&](double radius, double horizon) {
        FlowProblem p(sphere, scenario.spec, radius, horizon);
        SolverConfig member = config;
        member.max_step = std::min(config.max_step, horizon / 256.0);
        return integrate(p, member);
    };
    auto radius_at = [](const FlowTrajectory& traj, double radius0, double t) {
        return radius0 - phi_of_t(traj, t);  // drift -1: tau = tau0 - phi
    };

    switch (scenario.kind) {
        case ScenarioKind::ConcentricSpheres:
        case ScenarioKind::CollinearDisjointSpheres: {
            const CollapseResult inner =
                collapse_time(FlowProblem(sphere, scenario.spec,
                                          std::min(scenario.tau1, scenario.tau2)),
                              quad_tol);
            if (inner.verdict != Verdict::Collapsed)
                throw NumericalFailure("member flow does not collapse; no finite horizon");
            const double horizon = horizon_fraction * inner.time;
            const FlowTrajectory f1 = run_sphere(scenario.tau1, horizon);
            const FlowTrajectory f2 = run_sphere(scenario.tau2, horizon);
            const double covered = horizon * (1.0 - 1e-12);
            if (f1.samples.back().t < covered || f2.samples.back().t < covered)
                throw NumericalFailure("member flow left its validity domain before the grid end");
            curve.horizon = horizon;
            curve.samples.reserve(static_cast<size_t>(grid) + 1);
            for (int j = 0; j <= grid; ++j) {
                const double t = horizon * j / grid;
                const double r1 = radius_at(f1, scenario.tau1, t);
                const double r2 = radius_at(f2, scenario.tau2, t);
                const double sep = scenario.kind == ScenarioKind::ConcentricSpheres
                                       ? r1 - r2
                                       : scenario.center_distance - r1 - r2;
                curve.samples.emplace_back(t, sep * sep);
            }
            return curve;
        }
        case ScenarioKind::SphereInsideHorosphere: {
            const int n = scenario.ambient.n();
            const IsoparametricFamily horo = IsoparametricFamily::horosphere(n);
            const double w_h = speed(horo, scenario.spec, 0.0);
            const CollapseResult sphere_T =
                collapse_time(FlowProblem(sphere, scenario.spec, scenario.tau1), quad_tol);
            if (sphere_T.verdict != Verdict::Collapsed)
                throw NumericalFailure("sphere member flow does not collapse");
            const double horizon = horizon_fraction * sphere_T.time;
            const FlowTrajectory fs = run_sphere(scenario.tau1, horizon);
            if (fs.samples.back().t < horizon * (1.0 - 1e-12))
                throw NumericalFailure("member flow left its validity domain before the grid end");
            curve.horizon = horizon;
            curve.samples.reserve(static_cast<size_t>(grid) + 1);
            for (int j = 0; j <= grid; ++j) {
                const double t = horizon * j / grid;
                // The horosphere advances into its horoball (toward the
                // sphere) while the sphere radius shrinks.
                const double shrink = scenario.tau1 - radius_at(fs, scenario.tau1, t);
                const double sep = scenario.gap + shrink - w_h * t;
                curve.samples.emplace_back(t, sep * sep);
            }
            return curve;
        }
    }
    throw std::logic_error("unknown scenario kind");
}

MonotoneVerdict check_monotone(const DistanceCurve& curve, double tol) {
    if (curve.samples.empty()) throw std::invalid_argument("empty distance curve");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    MonotoneVerdict v;
    for (size_t j = 0; j + 1 < curve.samples.size(); ++j) {
        const double d0 = curve.samples[j].second;
        const double d1 = curve.samples[j + 1].second;
        const double diff = d1 - d0;
        if (diff < -tol * (1.0 + std::abs(d0))) {
            if (v.passed) {
                v.passed = false;
                v.t_lo = curve.samples[j].first;
                v.t_hi = curve.samples[j + 1].first;
            }
            v.worst_violation = std::min(v.worst_violation, diff);
        }
    }
    return v;
}

}  // namespace wflow::avoid
