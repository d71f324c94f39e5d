#include "wflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wflow/errors.hpp"
#include "wflow/ode.hpp"
#include "wflow/quadrature.hpp"

namespace wflow {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Sampling horizon for unbounded runs that cannot terminate on their own.
constexpr double kUnboundedHorizon = 50.0;

struct Path {
    int delta = -1;
    double w0 = 0.0;       // W(tau0)
    double v0 = 0.0;       // delta * W(tau0): sign of the tau motion
    bool moving = false;   // v0 != 0
    bool upper = false;    // boundary ahead is the upper end
    double boundary = 0.0;
    bool boundary_finite = false;
};

Path path_of(const FlowProblem& p) {
    Path path;
    path.delta = p.family.drift();
    path.w0 = speed(p.family, p.spec, p.tau0);
    path.v0 = path.delta * path.w0;
    path.moving = path.v0 != 0.0;
    const Interval dom = p.family.tau_domain();
    path.upper = path.v0 > 0.0;
    path.boundary = path.upper ? dom.hi : dom.lo;
    path.boundary_finite = std::isfinite(path.boundary);
    return path;
}

// |W| sampled non-decreasing from tau_from toward tau_to (strictly inside
// the open segment; `tau_to` may sit on the domain boundary).
bool sampled_speed_monotone(const FlowProblem& p, double tau_from, double tau_to) {
    if (tau_from == tau_to) return true;
    const int n = 33;
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        const double u = 0.9999 * static_cast<double>(i) / n;
        const double tau = tau_from + u * (tau_to - tau_from);
        const double w = std::abs(speed(p.family, p.spec, tau));
        if (w + 1e-10 * (1.0 + w) < prev) return false;
        prev = std::max(prev, w);
    }
    return true;
}

double divergence_cap(double tau0) { return 1e6 * std::max(1.0, std::abs(tau0)); }

}  // namespace

void SolverConfig::validate() const {
    if (!(rtol > 0.0 && rtol < 1.0))
        throw std::invalid_argument("solver.rtol must lie in (0, 1)");
    if (!(atol > 0.0 && atol < 1.0))
        throw std::invalid_argument("solver.atol must lie in (0, 1)");
    if (!(max_step > 0.0))
        throw std::invalid_argument("solver.max_step must be positive");
    if (!(collapse_margin > 0.0))
        throw std::invalid_argument("solver.collapse_margin must be positive");
}

FlowProblem::FlowProblem(IsoparametricFamily family_, WeingartenSpec spec_, double tau0_,
                         double t_max_)
    : family(std::move(family_)), spec(std::move(spec_)), tau0(tau0_), t_max(t_max_) {
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    if (!std::isfinite(tau0)) throw std::invalid_argument("tau0 must be finite");
    if (!family.tau_domain().contains(tau0))
        throw std::invalid_argument("tau0 must be interior to the family's tau domain");
    if (family.kind() == FamilyKind::GeodesicSphere &&
        family.ambient().eps == Epsilon::Spherical && !(tau0 < kPi / 2.0))
        throw std::invalid_argument(
            "spherical geodesic sphere flows start in the strictly convex range (0, pi/2)");
    const double w0 = speed(family, spec, tau0);
    if (!std::isfinite(w0))
        throw std::invalid_argument("speed is not finite at tau0");
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Collapsed: return "collapsed";
        case Verdict::NonCollapsing: return "non-collapsing";
        case Verdict::Truncated: return "truncated";
    }
    return "?";
}

std::string reason_name(NonCollapseReason r) {
    switch (r) {
        case NonCollapseReason::None: return "";
        case NonCollapseReason::ConstantSpeedHorosphere: return "constant-speed-horosphere";
        case NonCollapseReason::AsymptoticToBoundary: return "asymptotic-to-boundary";
    }
    return "?";
}

FlowTrajectory integrate(const FlowProblem& problem, const SolverConfig& config) {
    config.validate();
    const Interval dom = problem.family.tau_domain();
    const Path path = path_of(problem);

    auto W = [&](double tau) { return speed(problem.family, problem.spec, tau); };
    auto rhs = [&](double tau) { return path.delta * W(tau); };
    auto admissible = [&](double tau) { return dom.contains(tau); };

    const bool margin_event = path.moving && path.boundary_finite;
    const double h_floor = 1e-14 * std::max(1.0, std::abs(problem.tau0));
    std::function<bool(double)> stop;
    if (margin_event) {
        // Stop on proximity to the boundary, or when the remaining travel
        // time |tau - b| / |W| falls below the step resolution (blow-up
        // speeds of degree >= 2 cross the margin zone faster than any
        // representable step).
        const double b = path.boundary;
        const double margin = config.collapse_margin;
        const double t_res = 1e3 * h_floor;
        stop = [&rhs, b, margin, t_res](double tau) {
            const double gap = std::abs(tau - b);
            return gap <= margin || gap <= t_res * std::abs(rhs(tau));
        };
    }

    ode::Options opt;
    opt.rtol = config.rtol;
    opt.atol = config.atol;
    opt.max_step = config.max_step;
    opt.min_step = h_floor;
    opt.t_max = problem.t_max;
    if (!std::isfinite(opt.t_max) && !margin_event) opt.t_max = kUnboundedHorizon;

    ode::Solution sol = ode::integrate(rhs, 0.0, problem.tau0, opt, admissible, stop);

    CollapseResult terminal;
    terminal.error_estimate = 0.0;

    if (sol.cause == ode::StopCause::StopConditionMet) {
        const double t_stop = sol.t_end();
        const double tau_stop = sol.y_end();
        auto integrand = [&](double tau) { return 1.0 / std::abs(W(tau)); };
        const double tail_tol =
            0.1 * (config.atol + config.rtol * std::max(1.0, std::abs(t_stop)));
        const quad::TailResult tail = quad::improper(integrand, path.boundary, tau_stop,
                                                     tail_tol, divergence_cap(problem.tau0));
        if (tail.verdict == quad::TailVerdict::Converged) {
            terminal.verdict = Verdict::Collapsed;
            terminal.time = t_stop + tail.value;
            terminal.end = problem.family.boundary_label(path.upper);
            terminal.error_estimate =
                tail.error + config.atol + config.rtol * terminal.time;
        } else if (std::isfinite(problem.t_max)) {
            // The boundary is asymptotic; keep integrating to t_max.
            ode::Options opt2 = opt;
            opt2.t_max = problem.t_max;
            ode::Solution rest =
                ode::integrate(rhs, sol.t_end(), sol.y_end(), opt2, admissible, nullptr);
            sol.points.insert(sol.points.end(), rest.points.begin() + 1, rest.points.end());
            terminal.verdict = Verdict::Truncated;
            terminal.time = sol.t_end();
        } else {
            terminal.verdict = Verdict::NonCollapsing;
            terminal.reason = NonCollapseReason::AsymptoticToBoundary;
            terminal.time = sol.t_end();
        }
    } else if (problem.family.constant_profile()) {
        terminal.verdict = Verdict::NonCollapsing;
        terminal.reason = NonCollapseReason::ConstantSpeedHorosphere;
        terminal.time = sol.t_end();
    } else {
        terminal.verdict = Verdict::Truncated;
        terminal.time = sol.t_end();
    }

    terminal.speed_monotone = sampled_speed_monotone(problem, problem.tau0, sol.y_end());

    FlowTrajectory traj;
    traj.drift = path.delta;
    traj.tau0 = problem.tau0;
    traj.terminal = terminal;
    traj.samples.reserve(sol.points.size());
    for (const auto& pt : sol.points) {
        TrajectorySample s;
        s.t = pt.t;
        s.tau = pt.y;
        s.phi = path.delta * (pt.y - problem.tau0) + 0.0;  // +0.0 normalizes -0
        s.curvatures = problem.family.principal_curvatures(pt.y);
        s.speed = eval(problem.spec, s.curvatures);
        traj.samples.push_back(std::move(s));
    }
    return traj;
}

CollapseResult collapse_time(const FlowProblem& problem, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const Path path = path_of(problem);
    if (!path.moving)
        throw NumericalFailure("flow stalls: the speed vanishes at tau0");

    CollapseResult result;
    if (!path.boundary_finite) {
        result.verdict = Verdict::NonCollapsing;
        result.reason = problem.family.constant_profile()
                            ? NonCollapseReason::ConstantSpeedHorosphere
                            : NonCollapseReason::AsymptoticToBoundary;
        result.time = 0.0;
        result.speed_monotone = sampled_speed_monotone(
            problem, problem.tau0, problem.tau0 + (path.upper ? 20.0 : -20.0));
        return result;
    }

    // The speed must keep its sign strictly between tau0 and the boundary.
    const double b = path.boundary;
    const int scan = 65;
    for (int i = 1; i < scan; ++i) {
        const double tau = problem.tau0 + (b - problem.tau0) * i / scan;
        const double w = speed(problem.family, problem.spec, tau);
        if (w == 0.0 || (path.delta * w > 0.0) != (path.v0 > 0.0))
            throw NumericalFailure(
                "flow stalls: the speed vanishes in the interior of the traversed interval");
    }

    auto integrand = [&](double tau) {
        return 1.0 / std::abs(speed(problem.family, problem.spec, tau));
    };
    const quad::TailResult tail =
        quad::improper(integrand, b, problem.tau0, tol, divergence_cap(problem.tau0));

    result.speed_monotone = sampled_speed_monotone(problem, problem.tau0, b);
    if (tail.verdict == quad::TailVerdict::Converged) {
        result.verdict = Verdict::Collapsed;
        result.time = tail.value;
        result.end = problem.family.boundary_label(path.upper);
        result.error_estimate = tail.error;
    } else {
        result.verdict = Verdict::NonCollapsing;
        result.reason = NonCollapseReason::AsymptoticToBoundary;
        result.time = 0.0;
        result.error_estimate = 0.0;
    }
    return result;
}

double phi_of_t(const FlowTrajectory& trajectory, double t) {
    const auto& s = trajectory.samples;
    if (s.empty()) throw std::logic_error("empty trajectory");
    const double t0 = s.front().t;
    const double t1 = s.back().t;
    const double slack = 1e-12 * std::max(1.0, std::abs(t1));
    if (t < t0 - slack || t > t1 + slack)
        throw std::domain_error("t outside the sampled time range");
    const double tc = std::clamp(t, t0, t1);

    auto it = std::lower_bound(s.begin(), s.end(), tc,
                               [](const TrajectorySample& a, double v) { return a.t < v; });
    if (it != s.end() && it->t == tc) return it->phi;
    const auto& hi = *it;
    const auto& lo = *(it - 1);

    const double h = hi.t - lo.t;
    const double u = (tc - lo.t) / h;
    const double secant = (hi.phi - lo.phi) / h;
    // phi' = W at the samples; limit the slopes so the cubic stays monotone.
    auto limit = [&](double m) {
        if (secant == 0.0) return 0.0;
        const double a = m / secant;
        if (a < 0.0) return 0.0;
        if (a > 3.0) return 3.0 * secant;
        return m;
    };
    const double m0 = limit(lo.speed);
    const double m1 = limit(hi.speed);

    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    return h00 * lo.phi + h10 * h * m0 + h01 * hi.phi + h11 * h * m1;
}

}  // namespace wflow
