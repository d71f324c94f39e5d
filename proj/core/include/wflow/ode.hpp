#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace wflow::ode {

struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 10.0;
    double min_step = 0.0;  // 0: derived from the initial state
    double t_max = std::numeric_limits<double>::infinity();
    std::int64_t max_steps = 4'000'000;
};

enum class StopCause {
    TMaxReached,
    StopConditionMet,
};

struct Point {
    double t = 0.0;
    double y = 0.0;
};

struct Solution {
    std::vector<Point> points;  // accepted steps, starting at (t0, y0)
    StopCause cause = StopCause::TMaxReached;
    double t_end() const { return points.back().t; }
    double y_end() const { return points.back().y; }
};

// Adaptive Dormand-Prince 5(4) for the autonomous scalar ODE y' = f(y),
// started at (t0, y0).  Stage values outside `admissible` reject the step and
// halve it; `stop` is tested on accepted states.  Throws NumericalFailure on
// step-size underflow or when max_steps is exhausted.
Solution integrate(const std::function<double(double)>& f, double t0, double y0,
                   const Options& opt,
                   const std::function<bool(double)>& admissible,
                   const std::function<bool(double)>& stop);

}  // namespace wflow::ode
