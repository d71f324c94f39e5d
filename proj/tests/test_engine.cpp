#include <doctest.h>

#include <cmath>

#include "wflow/errors.hpp"
#include "wflow/ode.hpp"
#include "wflow/quadrature.hpp"

using namespace wflow;

namespace {
bool always(double) { return true; }
}  // namespace

TEST_CASE("dopri5 on exponential decay") {
    ode::Options opt;
    opt.t_max = 5.0;
    const auto sol = ode::integrate([](double y) { return -y; }, 0.0, 1.0, opt, always,
                                    nullptr);
    CHECK(sol.cause == ode::StopCause::TMaxReached);
    CHECK(sol.t_end() == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(std::abs(sol.y_end() - std::exp(-5.0)) <= 1e-10);
}

TEST_CASE("dopri5 stop condition") {
    ode::Options opt;
    opt.t_max = 10.0;
    opt.max_step = 0.125;  // bound the overshoot past the stop threshold
    const auto sol = ode::integrate([](double) { return -1.0; }, 0.0, 1.0, opt, always,
                                    [](double y) { return y <= 0.25; });
    CHECK(sol.cause == ode::StopCause::StopConditionMet);
    CHECK(sol.y_end() <= 0.25);
    CHECK(sol.y_end() > 0.25 - 0.13);
    CHECK(sol.t_end() == doctest::Approx(1.0 - sol.y_end()).epsilon(1e-12));
}

TEST_CASE("dopri5 respects the admissible region") {
    // y' = -sqrt(y) is only defined for y >= 0; stages must never cross.
    ode::Options opt;
    opt.t_max = 10.0;
    const auto sol = ode::integrate([](double y) { return -std::sqrt(y); }, 0.0, 1.0, opt,
                                    [](double y) { return y > 0.0; },
                                    [](double y) { return y <= 1e-4; });
    CHECK(sol.cause == ode::StopCause::StopConditionMet);
    for (const auto& p : sol.points) CHECK(p.y > 0.0);
}

TEST_CASE("scaling the right-hand side rescales time") {
    // y' = -c / y reaches y = y_stop at t = (y0^2 - y_stop^2) / (2 c).
    auto time_to = [](double c) {
        ode::Options opt;
        opt.t_max = 100.0;
        const auto sol =
            ode::integrate([c](double y) { return -c / y; }, 0.0, 1.0, opt,
                           [](double y) { return y > 0.0; },
                           [](double y) { return y <= 0.125; });
        REQUIRE(sol.cause == ode::StopCause::StopConditionMet);
        // correct for the overshoot past the stop threshold
        const double y = sol.y_end();
        return sol.t_end() + (y * y - 0.125 * 0.125) / (2.0 * c);
    };
    const double t1 = time_to(1.0);
    const double t4 = time_to(4.0);
    CHECK(std::abs(4.0 * t4 - t1) <= 1e-9 * t1);
    CHECK(t1 == doctest::Approx((1.0 - 0.125 * 0.125) / 2.0).epsilon(1e-10));
}

TEST_CASE("adaptive Gauss-Kronrod on a smooth integrand") {
    const auto r = quad::adaptive([](double x) { return std::sin(x); }, 0.0,
                                  3.14159265358979323846, 1e-12);
    CHECK(std::abs(r.value - 2.0) <= 1e-12);
    CHECK(r.error <= 1e-10);
}

TEST_CASE("improper integral with an integrable singularity") {
    const auto r = quad::improper([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                                  1e-10, 1e6);
    CHECK(r.verdict == quad::TailVerdict::Converged);
    CHECK(std::abs(r.value - 2.0) <= 1e-9);
}

TEST_CASE("improper integral toward an upper singular endpoint") {
    // integral over [0, 1) of 1/sqrt(1-x) = 2, singular at x = 1.  Shells can
    // only shrink to the double spacing near 1, so the sqrt tail resolves to
    // about sqrt(eps) and the error estimate must cover the remainder.
    const auto r = quad::improper([](double x) { return 1.0 / std::sqrt(1.0 - x); }, 1.0,
                                  0.0, 1e-10, 1e6);
    CHECK(r.verdict == quad::TailVerdict::Converged);
    CHECK(std::abs(r.value - 2.0) <= 1e-7);
    CHECK(r.error >= std::abs(r.value - 2.0));
}

TEST_CASE("logarithmic and power divergences are detected") {
    const auto log_div =
        quad::improper([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10, 1e6);
    CHECK(log_div.verdict == quad::TailVerdict::Diverged);

    const auto pow_div = quad::improper([](double x) { return std::pow(x, -1.5); }, 0.0,
                                        1.0, 1e-10, 1e6);
    CHECK(pow_div.verdict == quad::TailVerdict::Diverged);
}

TEST_CASE("the absolute divergence cap trips") {
    const auto r =
        quad::improper([](double) { return 1e7; }, 0.0, 1.0, 1e-10, 1e6);
    CHECK(r.verdict == quad::TailVerdict::Diverged);
}

TEST_CASE("options are validated") {
    ode::Options bad;
    bad.rtol = 0.0;
    CHECK_THROWS_AS(
        ode::integrate([](double y) { return -y; }, 0.0, 1.0, bad, always, nullptr),
        std::invalid_argument);
}
