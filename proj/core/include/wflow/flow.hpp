#pragma once

#include <limits>
#include <string>
#include <vector>

#include "wflow/families.hpp"
#include "wflow/weingarten.hpp"

namespace wflow {

struct SolverConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 10.0;
    double collapse_margin = 1e-6;  // distance to a tau boundary treated as collapsed

    void validate() const;  // throws std::invalid_argument
};

// A parallel flow instance reduced to the scalar ODE tau' = delta * W(tau),
// tau(0) = tau0.
struct FlowProblem {
    FlowProblem(IsoparametricFamily family, WeingartenSpec spec, double tau0,
                double t_max = std::numeric_limits<double>::infinity());

    IsoparametricFamily family;
    WeingartenSpec spec;
    double tau0;
    double t_max;
};

enum class Verdict { Collapsed, NonCollapsing, Truncated };

enum class NonCollapseReason {
    None,
    ConstantSpeedHorosphere,  // tau-independent speed, unbounded run
    AsymptoticToBoundary,     // boundary approached but never reached (divergent time integral)
};

std::string verdict_name(Verdict v);
std::string reason_name(NonCollapseReason r);

struct CollapseResult {
    Verdict verdict = Verdict::Truncated;
    double time = 0.0;       // T when Collapsed; the stop time when Truncated
    std::string end;         // boundary label when Collapsed
    NonCollapseReason reason = NonCollapseReason::None;
    double error_estimate = 0.0;
    // |W| sampled non-decreasing along the traversed tau interval.
    bool speed_monotone = true;
};

struct TrajectorySample {
    double t = 0.0;
    double tau = 0.0;
    double phi = 0.0;  // delta * (tau - tau0); phi(0) = 0, phi' = W
    double speed = 0.0;
    CurvatureProfile curvatures;
};

struct FlowTrajectory {
    std::vector<TrajectorySample> samples;
    CollapseResult terminal;
    int drift = -1;
    double tau0 = 0.0;
};

// Integrates the flow ODE with an adaptive embedded Runge-Kutta 5(4) pair.
// Stops at t_max or when tau comes within collapse_margin of a finite domain
// boundary; in the latter case the collapse time is refined by quadrature of
// the remaining d tau / |W|.  If that remaining integral diverges the flow is
// asymptotic: integration continues to t_max (Truncated) or, for unbounded
// t_max, stops with a NonCollapsing verdict.
FlowTrajectory integrate(const FlowProblem& problem, const SolverConfig& config);

// Collapse time by adaptive quadrature of d tau / |W(tau)| over the traversed
// tau interval, independent of the ODE path.  Returns Collapsed with
// quadrature error <= tol, or NonCollapsing when the integral diverges.
// Throws NumericalFailure if W vanishes in the interior of the path.
CollapseResult collapse_time(const FlowProblem& problem, double tol);

// phi between samples by cubic Hermite interpolation with the sampled speeds
// as slopes (slope-limited to stay monotone).  Requires samples.front().t <=
// t <= samples.back().t.
double phi_of_t(const FlowTrajectory& trajectory, double t);

}  // namespace wflow
