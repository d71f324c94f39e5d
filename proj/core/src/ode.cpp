#include "wflow/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wflow/errors.hpp"

namespace wflow::ode {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// Difference between the 5th- and 4th-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kShrinkLimit = 0.2;
constexpr double kGrowLimit = 10.0;
// Local error is controlled against this fraction of the requested
// tolerances so that the accumulated drift stays well inside them.
constexpr double kLocalErrorSafety = 1e-2;

}  // namespace

Solution integrate(const std::function<double(double)>& f, double t0, double y0,
                   const Options& opt,
                   const std::function<bool(double)>& admissible,
                   const std::function<bool(double)>& stop) {
    if (!(opt.rtol > 0.0 && opt.rtol < 1.0) || !(opt.atol > 0.0 && opt.atol < 1.0))
        throw std::invalid_argument("rtol and atol must lie in (0, 1)");
    if (!(opt.max_step > 0.0)) throw std::invalid_argument("max_step must be positive");

    Solution sol;
    sol.points.push_back({t0, y0});
    if (stop && stop(y0)) {
        sol.cause = StopCause::StopConditionMet;
        return sol;
    }

    const double h_floor =
        opt.min_step > 0.0 ? opt.min_step : 1e-14 * std::max(1.0, std::abs(y0));

    double t = t0;
    double y = y0;
    double k1 = f(y);
    if (!std::isfinite(k1)) throw NumericalFailure("speed evaluation failed at the start");

    double h = std::min(opt.max_step,
                        1e-2 * std::max(1.0, std::abs(y)) / std::max(1.0, std::abs(k1)));
    if (std::isfinite(opt.t_max)) h = std::min(h, opt.t_max - t);

    std::int64_t steps = 0;
    while (t < opt.t_max) {
        if (++steps > opt.max_steps)
            throw NumericalFailure("integration exceeded the step budget");
        if (std::isfinite(opt.t_max)) h = std::min(h, opt.t_max - t);
        if (h < h_floor)
            throw NumericalFailure("step size underflow near a non-integrable singularity");

        auto stage = [&](double yy, double& out) -> bool {
            if (!admissible(yy)) return false;
            out = f(yy);
            return std::isfinite(out);
        };

        double k2, k3, k4, k5, k6, k7;
        bool ok = stage(y + h * a21 * k1, k2) &&
                  stage(y + h * (a31 * k1 + a32 * k2), k3) &&
                  stage(y + h * (a41 * k1 + a42 * k2 + a43 * k3), k4) &&
                  stage(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5) &&
                  stage(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6);
        double y_new = 0.0;
        if (ok) {
            y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            ok = stage(y_new, k7);
        }
        if (!ok) {
            h *= 0.5;
            continue;
        }

        const double err = std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 +
                                         e6 * k6 + e7 * k7));
        const double scale = kLocalErrorSafety *
                             (opt.atol + opt.rtol * std::max(std::abs(y), std::abs(y_new)));
        const double ratio = err / scale;

        if (ratio <= 1.0) {
            t += h;
            if (std::isfinite(opt.t_max) &&
                opt.t_max - t <= 4.0 * std::numeric_limits<double>::epsilon() *
                                     std::max(1.0, std::abs(t)))
                t = opt.t_max;  // land exactly on the horizon
            y = y_new;
            k1 = k7;  // first-same-as-last
            sol.points.push_back({t, y});
            if (stop && stop(y)) {
                sol.cause = StopCause::StopConditionMet;
                return sol;
            }
            const double grow =
                ratio > 0.0 ? kSafety * std::pow(ratio, -0.2) : kGrowLimit;
            h = std::min(opt.max_step, h * std::clamp(grow, kShrinkLimit, kGrowLimit));
            if (std::isfinite(opt.t_max) && opt.t_max - t <= 1e-15 * std::max(1.0, std::abs(t)))
                break;
        } else {
            h *= std::clamp(kSafety * std::pow(ratio, -0.2), kShrinkLimit, 1.0);
        }
    }

    sol.cause = StopCause::TMaxReached;
    return sol;
}

}  // namespace wflow::ode
