#include <doctest.h>

#include <cmath>

#include "wflow/oracle.hpp"
#include "wflow/verify.hpp"

using namespace wflow;

namespace {
constexpr double kPi = 3.14159265358979323846;

FlowProblem sphere(Epsilon eps, const WeingartenSpec& spec, int n, double R) {
    return FlowProblem(
        IsoparametricFamily::geodesic_sphere(AmbientSpace::space_form(eps, n + 1)), spec,
        R);
}
}  // namespace

TEST_CASE("closed-form collapse times") {
    SUBCASE("Euclidean |A|^2: R^3 / (3n)") {
        const auto cf =
            oracle::closed_form_T(sphere(Epsilon::Euclidean, WeingartenSpec::squared_norm(), 3, 1.0));
        REQUIRE(cf.has_value());
        CHECK(cf->T == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    }
    SUBCASE("Euclidean H_2 on n = 3: C(3,2)^{-1} R^3 / 3") {
        const auto cf = oracle::closed_form_T(
            sphere(Epsilon::Euclidean, WeingartenSpec::mean_curvature(2), 3, 1.0));
        REQUIRE(cf.has_value());
        CHECK(cf->T == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    }
    SUBCASE("hyperbolic H_1: (1/n) log cosh R") {
        const auto cf = oracle::closed_form_T(
            sphere(Epsilon::Hyperbolic, WeingartenSpec::mean_curvature(1), 2, 1.0));
        REQUIRE(cf.has_value());
        CHECK(cf->T == doctest::Approx(0.5 * std::log(std::cosh(1.0))).epsilon(1e-14));
        CHECK(cf->T == doctest::Approx(0.2168).epsilon(1e-3));
    }
    SUBCASE("Munzner K with m1 - m2 = 1: log sec tau0") {
        FlowProblem p(IsoparametricFamily::sphere_munzner(2, {3, 2}),
                      WeingartenSpec::gauss(), 0.5);
        const auto cf = oracle::closed_form_T(p);
        REQUIRE(cf.has_value());
        CHECK(cf->T == doctest::Approx(std::log(1.0 / std::cos(0.5))).epsilon(1e-14));
        CHECK(cf->T == doctest::Approx(0.13058424044372263).epsilon(1e-12));
    }
    SUBCASE("unmatched problems return nothing") {
        CHECK_FALSE(oracle::closed_form_T(
                        sphere(Epsilon::Spherical, WeingartenSpec::mean_curvature(3), 4, 0.5))
                        .has_value());
        CHECK_FALSE(oracle::closed_form_T(
                        sphere(Epsilon::Euclidean,
                               WeingartenSpec::power(WeingartenSpec::mean_curvature(1), 2.0),
                               3, 1.0))
                        .has_value());
        CHECK_FALSE(oracle::closed_form_T(
                        FlowProblem(IsoparametricFamily::equidistant(3),
                                    WeingartenSpec::mean_curvature(1), 1.0))
                        .has_value());
        // odd m2 is outside the positive-K catalogue
        CHECK_FALSE(oracle::closed_form_T(FlowProblem(
                                              IsoparametricFamily::sphere_munzner(2, {2, 1}),
                                              WeingartenSpec::gauss(), 0.5))
                        .has_value());
    }
}

TEST_CASE("implicit relations") {
    SUBCASE("initial condition satisfies every matched relation") {
        const FlowProblem cases[] = {
            sphere(Epsilon::Euclidean, WeingartenSpec::squared_norm(), 2, 1.0),
            sphere(Epsilon::Spherical, WeingartenSpec::mean_curvature(1), 2, kPi / 4.0),
            sphere(Epsilon::Hyperbolic, WeingartenSpec::mean_curvature(2), 3, 0.8),
            FlowProblem(IsoparametricFamily::hf_geodesic_sphere(Field::Complex, 2),
                        WeingartenSpec::mean_curvature(1), 1.0),
        };
        for (const auto& p : cases) {
            const auto g = oracle::implicit_phi_residual(p, 0.0, 0.0);
            REQUIRE(g.has_value());
            CHECK(std::abs(*g) <= 1e-14);
        }
    }
    SUBCASE("the relation closes at the collapse point") {
        const auto p = sphere(Epsilon::Spherical, WeingartenSpec::mean_curvature(1), 2,
                              kPi / 4.0);
        const double T = std::log(2.0) / 4.0;
        const auto g = oracle::implicit_phi_residual(p, T, kPi / 4.0);
        REQUIRE(g.has_value());
        CHECK(std::abs(*g) <= 1e-14);
    }
    SUBCASE("solving the Euclidean |A|^2 relation recovers phi") {
        // (1 - phi)^3 = 1 - 6 t at t = 1/12 gives phi = 1 - (1/2)^{1/3}
        const auto p = sphere(Epsilon::Euclidean, WeingartenSpec::squared_norm(), 2, 1.0);
        const double t = 1.0 / 12.0;
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            const auto g = oracle::implicit_phi_residual(p, t, mid);
            REQUIRE(g.has_value());
            (*g > 0.0 ? lo : hi) = mid;
        }
        const double phi = 0.5 * (lo + hi);
        CHECK(phi == doctest::Approx(1.0 - std::pow(0.5, 1.0 / 3.0)).epsilon(1e-9));
        CHECK(phi == doctest::Approx(0.2063).epsilon(1e-3));
    }
}

TEST_CASE("closed forms agree with quadrature over the verification grid") {
    for (const auto& p : verify::oracle_grid()) {
        const auto cf = oracle::closed_form_T(p);
        REQUIRE(cf.has_value());
        const auto quad = collapse_time(p, 1e-12);
        REQUIRE(quad.verdict == Verdict::Collapsed);
        CHECK(std::abs(quad.time - cf->T) <= 1e-8 * (1.0 + cf->T));
    }
}

TEST_CASE("residuals stay small along integrated trajectories") {
    const FlowProblem cases[] = {
        sphere(Epsilon::Euclidean, WeingartenSpec::squared_norm(), 2, 1.0),
        sphere(Epsilon::Spherical, WeingartenSpec::mean_curvature(2), 3, 0.7),
        sphere(Epsilon::Hyperbolic, WeingartenSpec::mean_curvature(1), 2, 1.0),
        FlowProblem(IsoparametricFamily::hf_geodesic_sphere(Field::Quaternion, 2),
                    WeingartenSpec::mean_curvature(1), 0.8),
        FlowProblem(IsoparametricFamily::sphere_munzner(2, {3, 2}),
                    WeingartenSpec::gauss(), 0.6),
    };
    for (const auto& p : cases) {
        const auto traj = integrate(p, SolverConfig{});
        REQUIRE(traj.terminal.verdict == Verdict::Collapsed);
        for (const auto& s : traj.samples) {
            const auto g = oracle::implicit_phi_residual(p, s.t, s.phi);
            REQUIRE(g.has_value());
            CHECK(std::abs(*g) <= 1e-6);
        }
    }
}

TEST_CASE("differentiating the curved H_1 relation reproduces its speed law") {
    // cos_eps(R - phi) = e^{eps n t} cos_eps(R) solved for phi, finite
    // differences of phi against n cot_eps(R - phi).
    for (Epsilon eps : {Epsilon::Spherical, Epsilon::Hyperbolic}) {
        const int n = 2;
        const double R = eps == Epsilon::Spherical ? kPi / 4.0 : 1.0;
        const double e = to_int(eps);
        auto phi_exact = [&](double t) {
            const double target = std::exp(e * n * t) * cos_eps(eps, R);
            return eps == Epsilon::Spherical ? R - std::acos(target)
                                             : R - std::acosh(target);
        };
        const double T = -(e / n) * std::log(cos_eps(eps, R));
        const double h = 1e-6;
        for (int i = 1; i < 20; ++i) {
            const double t = 0.9 * T * i / 20.0;
            const double fd = (phi_exact(t + h) - phi_exact(t - h)) / (2.0 * h);
            const double expect = n * cot_eps(eps, R - phi_exact(t));
            CHECK(std::abs(fd - expect) <= 1e-6 * (1.0 + std::abs(expect)));
        }
    }
}
