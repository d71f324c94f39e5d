#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "wflow/eps_trig.hpp"
#include "wflow/weingarten.hpp"

using namespace wflow;

namespace {

// Independent oracle: elementary symmetric function by explicit subset
// enumeration (exponential; for n <= 20 only).
double brute_force_hr(const std::vector<double>& k, int r) {
    const int n = static_cast<int>(k.size());
    double sum = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != r) continue;
        double prod = 1.0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) prod *= k[static_cast<size_t>(i)];
        sum += prod;
    }
    return sum;
}

CurvatureProfile profile_of(const std::vector<double>& k) {
    std::vector<CurvatureBlock> blocks(k.size());
    for (size_t i = 0; i < k.size(); ++i) blocks[i] = {k[i], 1};
    return CurvatureProfile(blocks);
}

}  // namespace

TEST_CASE("mean curvature examples") {
    CHECK(eval(WeingartenSpec::mean_curvature(1), CurvatureProfile{{1.0, 3}}) == 3.0);

    // 1*2 + 1*3 + 2*3 = 11, cross-checked by enumeration
    const std::vector<double> k{1.0, 2.0, 3.0};
    CHECK(brute_force_hr(k, 2) == 11.0);
    CHECK(eval(WeingartenSpec::mean_curvature(2), profile_of(k)) == 11.0);
}

TEST_CASE("squared norm on an umbilical profile is n cot_eps^2") {
    const double R = 0.8;
    const int n = 4;
    for (Epsilon e : {Epsilon::Euclidean, Epsilon::Spherical, Epsilon::Hyperbolic}) {
        const double c = cot_eps(e, R);
        const double got = eval(WeingartenSpec::squared_norm(), CurvatureProfile{{c, n}});
        CHECK(got == doctest::Approx(n * c * c).epsilon(1e-14));
    }
}

TEST_CASE("Gauss curvature on a two-block profile") {
    const double tau = 0.7;
    const int m1 = 3, m2 = 2;
    const double c = cot_eps(Epsilon::Spherical, tau);
    const double t = -tan_eps(Epsilon::Spherical, tau);
    const double got =
        eval(WeingartenSpec::gauss(), CurvatureProfile{{c, m1}, {t, m2}});
    CHECK(got == doctest::Approx(std::pow(c, m1) * std::pow(t, m2)).epsilon(1e-13));
    CHECK(got > 0.0);  // even m2
}

TEST_CASE("recurrence equals subset enumeration for n <= 8") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    std::uniform_int_distribution<int> pick_mult(1, 3);
    for (int n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 8; ++rep) {
            // random multiplicity structure summing to n
            std::vector<CurvatureBlock> blocks;
            int left = n;
            while (left > 0) {
                const int m = std::min(left, pick_mult(rng));
                blocks.push_back({pick(rng), m});
                left -= m;
            }
            const CurvatureProfile profile(blocks);
            const auto expanded = profile.expanded();
            for (int r = 1; r <= n; ++r) {
                const double expect = brute_force_hr(expanded, r);
                const double got = eval(WeingartenSpec::mean_curvature(r), profile);
                CHECK(std::abs(got - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
            }
        }
    }
}

TEST_CASE("gradient examples") {
    const auto g_a2 = gradient(WeingartenSpec::squared_norm(),
                               CurvatureProfile{{3.0, 1}, {4.0, 1}});
    CHECK(g_a2 == std::vector<double>{6.0, 8.0});

    const auto g_h1 = gradient(WeingartenSpec::mean_curvature(1),
                               CurvatureProfile{{0.3, 1}, {7.0, 1}, {-2.0, 1}});
    CHECK(g_h1 == std::vector<double>{1.0, 1.0, 1.0});

    // dH_2/dk_i = H_1 of the others
    const auto g_h2 = gradient(WeingartenSpec::mean_curvature(2),
                               profile_of({1.0, 2.0, 3.0}));
    CHECK(g_h2 == std::vector<double>{5.0, 4.0, 3.0});
}

TEST_CASE("gradient matches central finite differences") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> pick(0.2, 2.5);
    const WeingartenSpec specs[] = {
        WeingartenSpec::mean_curvature(1), WeingartenSpec::mean_curvature(2),
        WeingartenSpec::mean_curvature(3), WeingartenSpec::squared_norm(),
        WeingartenSpec::gauss(), WeingartenSpec::power(WeingartenSpec::mean_curvature(2), 1.5)};
    for (const auto& spec : specs) {
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<CurvatureBlock> blocks = {
                {pick(rng), 1}, {pick(rng), 2}, {pick(rng), 1}, {pick(rng), 1}};
            const CurvatureProfile profile(blocks);
            const auto g = gradient(spec, profile);
            const double h = 1e-6;
            for (size_t j = 0; j < blocks.size(); ++j) {
                auto bump = [&](double dv) {
                    auto b = blocks;
                    b[j].value += dv;
                    return eval(spec, CurvatureProfile(b));
                };
                // perturbing a block moves all of its entries together
                const double fd = (bump(h) - bump(-h)) / (2.0 * h);
                const double expect = blocks[j].multiplicity * g[j];
                CHECK(std::abs(fd - expect) <= 1e-5 * std::max(1.0, std::abs(expect)));
            }
        }
    }
}

TEST_CASE("permutation and regrouping invariance is exact") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pick(-1.5, 2.5);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> k(6);
        for (auto& v : k) v = pick(rng);
        k[3] = k[0];  // a repeated value across blocks
        const WeingartenSpec specs[] = {WeingartenSpec::mean_curvature(3),
                                        WeingartenSpec::squared_norm(),
                                        WeingartenSpec::gauss()};
        for (const auto& spec : specs) {
            const double base = eval(spec, profile_of(k));
            auto shuffled = k;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            CHECK(eval(spec, profile_of(shuffled)) == base);
        }
    }
    // grouping equal values into one block changes nothing
    const double v = 1.3748;
    CHECK(eval(WeingartenSpec::mean_curvature(2), CurvatureProfile{{v, 3}}) ==
          eval(WeingartenSpec::mean_curvature(2),
               CurvatureProfile{{v, 1}, {v, 1}, {v, 1}}));
}

TEST_CASE("homogeneity") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> pick(0.2, 2.0);
    const WeingartenSpec specs[] = {
        WeingartenSpec::mean_curvature(1), WeingartenSpec::mean_curvature(3),
        WeingartenSpec::squared_norm(), WeingartenSpec::gauss(),
        WeingartenSpec::power(WeingartenSpec::mean_curvature(2), 1.5)};
    for (const auto& spec : specs) {
        std::vector<double> k(5);
        for (auto& v : k) v = pick(rng);
        const CurvatureProfile profile = profile_of(k);
        const double w = eval(spec, profile);
        const double deg = spec.degree(5);
        for (double lambda : {0.5, 2.0, 10.0}) {
            const double scaled = eval(spec, profile.scaled(lambda));
            const double expect = std::pow(lambda, deg) * w;
            CHECK(std::abs(scaled - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST_CASE("odd specs are exactly odd") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    struct Case {
        WeingartenSpec spec;
        int n;
    };
    const Case cases[] = {{WeingartenSpec::mean_curvature(1), 5},
                          {WeingartenSpec::mean_curvature(3), 5},
                          {WeingartenSpec::gauss(), 3},
                          {WeingartenSpec::power(WeingartenSpec::mean_curvature(1), 1.0), 4}};
    for (const auto& c : cases) {
        CHECK(c.spec.odd(c.n));
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> k(static_cast<size_t>(c.n));
            for (auto& v : k) v = pick(rng);
            const CurvatureProfile p = profile_of(k);
            CHECK(eval(c.spec, p.negated()) == -eval(c.spec, p));
        }
    }
    CHECK_FALSE(WeingartenSpec::squared_norm().odd(4));
    CHECK_FALSE(WeingartenSpec::mean_curvature(2).odd(4));
    CHECK_FALSE(WeingartenSpec::gauss().odd(4));
    CHECK(WeingartenSpec::gauss().odd(5));
}

TEST_CASE("degree metadata") {
    CHECK(WeingartenSpec::mean_curvature(3).degree(5) == 3.0);
    CHECK(WeingartenSpec::squared_norm().degree(5) == 2.0);
    CHECK(WeingartenSpec::gauss().degree(5) == 5.0);
    CHECK(WeingartenSpec::power(WeingartenSpec::mean_curvature(2), 1.5).degree(5) == 3.0);
}

TEST_CASE("axiom validation") {
    SUBCASE("H_3 on n = 4: everything passes, oddness confirmed") {
        const auto report = validate_axioms(WeingartenSpec::mean_curvature(3), 4, 100, 42);
        CHECK(report.all_passed());
        const auto* odd = report.find("oddness");
        REQUIRE(odd != nullptr);
        CHECK_FALSE(odd->skipped);
        CHECK(odd->passed);
    }
    SUBCASE("|A|^2: oddness skipped, the rest passes") {
        const auto report = validate_axioms(WeingartenSpec::squared_norm(), 4, 100, 42);
        CHECK(report.all_passed());
        const auto* odd = report.find("oddness");
        REQUIRE(odd != nullptr);
        CHECK(odd->skipped);
    }
    SUBCASE("H_1 with a single sample: the Euler identity is exact") {
        const auto report = validate_axioms(WeingartenSpec::mean_curvature(1), 3, 1, 7);
        CHECK(report.all_passed());
        const auto* euler = report.find("euler_identity");
        REQUIRE(euler != nullptr);
        CHECK(euler->passed);
    }
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(eval(WeingartenSpec::mean_curvature(4), profile_of({1.0, 2.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeingartenSpec::power(WeingartenSpec::mean_curvature(1), -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeingartenSpec::mean_curvature(0), std::invalid_argument);
    CHECK_THROWS_AS(
        eval(WeingartenSpec::power(WeingartenSpec::mean_curvature(1), 0.5),
             profile_of({-1.0, -2.0})),
        std::domain_error);
    CHECK_THROWS_AS(CurvatureProfile({CurvatureBlock{1.0, 0}}), std::invalid_argument);
}
