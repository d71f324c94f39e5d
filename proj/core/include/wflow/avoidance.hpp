#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wflow/flow.hpp"

namespace wflow::avoid {

enum class ScenarioKind {
    ConcentricSpheres,         // D = (tau1(t) - tau2(t))^2
    CollinearDisjointSpheres,  // D = (d - tau1(t) - tau2(t))^2
    SphereInsideHorosphere,    // H^{n+1} only; D = gap(t)^2
};

std::string scenario_kind_name(ScenarioKind k);

// Which hypothesis justifies running the pair: an odd speed function, or
// both flows inward-oriented sphere embeddings.
enum class OrientationRegime { OddSpeed, InwardEmbedding };

std::string regime_name(OrientationRegime r);

struct PairScenario {
    ScenarioKind kind = ScenarioKind::ConcentricSpheres;
    AmbientSpace ambient = AmbientSpace::space_form(Epsilon::Euclidean, 3);
    WeingartenSpec spec = WeingartenSpec::mean_curvature(1);
    double tau1 = 0.0;             // outer radius / first radius / sphere radius
    double tau2 = 0.0;             // inner radius / second radius
    double center_distance = 0.0;  // CollinearDisjointSpheres
    double gap = 0.0;              // SphereInsideHorosphere
    OrientationRegime regime = OrientationRegime::OddSpeed;

    void validate() const;  // throws std::invalid_argument
};

struct DistanceCurve {
    std::vector<std::pair<double, double>> samples;  // (t, D(t))
    double horizon = 0.0;        // last sampled time
    bool extension_case = false; // configuration beyond the radially classical ones
};

struct MonotoneVerdict {
    bool passed = true;
    double worst_violation = 0.0;  // most negative consecutive difference
    double t_lo = 0.0, t_hi = 0.0; // first violating interval
};

// Integrates both member flows and recombines the squared distance in closed
// form on a uniform grid covering [0, horizon_fraction * min collapse time].
DistanceCurve distance_curve(const PairScenario& scenario, const SolverConfig& config,
                             int grid, double horizon_fraction = 0.99);

// Nondecreasing up to tol * (1 + |D|) per consecutive difference.
MonotoneVerdict check_monotone(const DistanceCurve& curve, double tol);

}  // namespace wflow::avoid
