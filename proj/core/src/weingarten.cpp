#include "wflow/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace wflow {

namespace {

void check_blocks(const std::vector<CurvatureBlock>& blocks) {
    if (blocks.empty())
        throw std::invalid_argument("curvature profile must have at least one block");
    for (const auto& b : blocks) {
        if (b.multiplicity < 1)
            throw std::invalid_argument("curvature multiplicities must be >= 1");
        if (!std::isfinite(b.value))
            throw std::invalid_argument("curvature values must be finite");
    }
}

// Sort blocks by value and merge bitwise-equal values so that any
// permutation or regrouping of the expanded entries evaluates identically.
std::vector<CurvatureBlock> canonical(const std::vector<CurvatureBlock>& blocks) {
    std::vector<CurvatureBlock> c(blocks);
    std::sort(c.begin(), c.end(), [](const CurvatureBlock& a, const CurvatureBlock& b) {
        return a.value < b.value;
    });
    std::vector<CurvatureBlock> merged;
    for (const auto& b : c) {
        if (!merged.empty() && merged.back().value == b.value)
            merged.back().multiplicity += b.multiplicity;
        else
            merged.push_back(b);
    }
    return merged;
}

bool lex_less(const std::vector<CurvatureBlock>& a, const std::vector<CurvatureBlock>& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i].value != b[i].value) return a[i].value < b[i].value;
        if (a[i].multiplicity != b[i].multiplicity)
            return a[i].multiplicity < b[i].multiplicity;
    }
    return a.size() < b.size();
}

// Sign-canonical representative: the lexicographic minimum of the canonical
// profile and its mirror.  A profile and its negation then run the recurrence
// on the very same block list, which makes W(-k) = -W(k) exact for the odd
// symmetric functions (the sign is restored analytically).
struct SignCanonical {
    std::vector<CurvatureBlock> blocks;
    bool mirrored = false;
};

SignCanonical sign_canonical(const std::vector<CurvatureBlock>& blocks) {
    std::vector<CurvatureBlock> c = canonical(blocks);
    std::vector<CurvatureBlock> m(blocks);
    for (auto& b : m) b.value = -b.value;
    m = canonical(m);
    if (lex_less(m, c)) return {std::move(m), true};
    return {std::move(c), false};
}

// Coefficients e_0..e_r of prod over blocks of (1 + v x)^m, i.e. the
// elementary symmetric functions of the expanded multiset.  Each block is
// absorbed with binomial weights C(m, i) v^i in O(r * min(m, r)) updates.
std::vector<double> elementary_prefix(const std::vector<CurvatureBlock>& blocks, int r) {
    std::vector<double> e(static_cast<size_t>(r) + 1, 0.0);
    e[0] = 1.0;
    int placed = 0;
    std::vector<double> coeff;
    std::vector<double> next(e.size());
    for (const auto& b : blocks) {
        const int cap = std::min(b.multiplicity, r);
        coeff.assign(static_cast<size_t>(cap) + 1, 0.0);
        coeff[0] = 1.0;
        double binom = 1.0;
        double vpow = 1.0;
        for (int i = 1; i <= cap; ++i) {
            binom *= static_cast<double>(b.multiplicity - i + 1) / static_cast<double>(i);
            vpow *= b.value;
            coeff[static_cast<size_t>(i)] = binom * vpow;
        }
        const int reach = std::min(r, placed + b.multiplicity);
        std::fill(next.begin(), next.end(), 0.0);
        for (int j = 0; j <= reach; ++j) {
            double acc = 0.0;
            const int top = std::min(j, cap);
            for (int i = 0; i <= top; ++i)
                acc += coeff[static_cast<size_t>(i)] * e[static_cast<size_t>(j - i)];
            next[static_cast<size_t>(j)] = acc;
        }
        e.swap(next);
        placed += b.multiplicity;
    }
    return e;
}

double elementary_symmetric(const std::vector<CurvatureBlock>& blocks, int r) {
    if (r == 0) return 1.0;
    return elementary_prefix(blocks, r)[static_cast<size_t>(r)];
}

// prod v^m by repeated multiplication; sign-exact under negation.
double block_product(const std::vector<CurvatureBlock>& blocks) {
    double p = 1.0;
    for (const auto& b : blocks)
        for (int i = 0; i < b.multiplicity; ++i) p *= b.value;
    return p;
}

bool is_integer(double x) { return x == std::floor(x); }

std::string format_samples(const std::vector<double>& k) {
    std::string s = "(";
    char buf[64];
    for (size_t i = 0; i < k.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", k[i]);
        s += buf;
        if (i + 1 < k.size()) s += ", ";
    }
    s += ")";
    return s;
}

}  // namespace

CurvatureProfile::CurvatureProfile(std::initializer_list<CurvatureBlock> blocks)
    : blocks_(blocks) {
    check_blocks(blocks_);
}

CurvatureProfile::CurvatureProfile(std::vector<CurvatureBlock> blocks)
    : blocks_(std::move(blocks)) {
    check_blocks(blocks_);
}

int CurvatureProfile::dimension() const {
    int n = 0;
    for (const auto& b : blocks_) n += b.multiplicity;
    return n;
}

std::vector<double> CurvatureProfile::expanded() const {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(dimension()));
    for (const auto& b : blocks_)
        for (int i = 0; i < b.multiplicity; ++i) out.push_back(b.value);
    return out;
}

CurvatureProfile CurvatureProfile::negated() const {
    std::vector<CurvatureBlock> nb(blocks_);
    for (auto& b : nb) b.value = -b.value;
    return CurvatureProfile(std::move(nb));
}

CurvatureProfile CurvatureProfile::scaled(double lambda) const {
    std::vector<CurvatureBlock> nb(blocks_);
    for (auto& b : nb) b.value *= lambda;
    return CurvatureProfile(std::move(nb));
}

WeingartenSpec WeingartenSpec::mean_curvature(int r) {
    if (r < 1) throw std::invalid_argument("mean curvature order r must be >= 1");
    return WeingartenSpec(SpeedKind::MeanCurvature, r, 1.0, nullptr);
}

WeingartenSpec WeingartenSpec::squared_norm() {
    return WeingartenSpec(SpeedKind::SquaredNorm, 0, 1.0, nullptr);
}

WeingartenSpec WeingartenSpec::gauss() {
    return WeingartenSpec(SpeedKind::Gauss, 0, 1.0, nullptr);
}

WeingartenSpec WeingartenSpec::power(WeingartenSpec base, double p) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("power exponent must be positive and finite");
    return WeingartenSpec(SpeedKind::Power, 0, p,
                          std::make_shared<const WeingartenSpec>(std::move(base)));
}

const WeingartenSpec& WeingartenSpec::base() const {
    if (!base_) throw std::logic_error("spec has no base");
    return *base_;
}

double WeingartenSpec::degree(int n) const {
    switch (kind_) {
        case SpeedKind::MeanCurvature: return static_cast<double>(r_);
        case SpeedKind::SquaredNorm: return 2.0;
        case SpeedKind::Gauss: return static_cast<double>(n);
        case SpeedKind::Power: return p_ * base().degree(n);
    }
    throw std::logic_error("unknown speed kind");
}

bool WeingartenSpec::odd(int n) const {
    switch (kind_) {
        case SpeedKind::MeanCurvature: return r_ % 2 == 1;
        case SpeedKind::SquaredNorm: return false;
        case SpeedKind::Gauss: return n % 2 == 1;
        case SpeedKind::Power: return p_ == 1.0 && base().odd(n);
    }
    throw std::logic_error("unknown speed kind");
}

std::string WeingartenSpec::name() const {
    char buf[64];
    switch (kind_) {
        case SpeedKind::MeanCurvature:
            std::snprintf(buf, sizeof buf, "H_%d", r_);
            return buf;
        case SpeedKind::SquaredNorm: return "|A|^2";
        case SpeedKind::Gauss: return "K";
        case SpeedKind::Power:
            std::snprintf(buf, sizeof buf, "(%s)^%g", base().name().c_str(), p_);
            return buf;
    }
    return "?";
}

double eval(const WeingartenSpec& spec, const CurvatureProfile& k) {
    const int n = k.dimension();
    if (n < 1) throw std::invalid_argument("empty curvature profile");
    switch (spec.kind()) {
        case SpeedKind::MeanCurvature: {
            if (spec.order() > n)
                throw std::invalid_argument("mean curvature order exceeds profile dimension");
            const SignCanonical sc = sign_canonical(k.blocks());
            const double e = elementary_symmetric(sc.blocks, spec.order());
            return sc.mirrored && spec.order() % 2 == 1 ? -e : e;
        }
        case SpeedKind::SquaredNorm: {
            double s = 0.0;
            for (const auto& b : canonical(k.blocks()))
                s += static_cast<double>(b.multiplicity) * b.value * b.value;
            return s;
        }
        case SpeedKind::Gauss: {
            const SignCanonical sc = sign_canonical(k.blocks());
            const double p = block_product(sc.blocks);
            return sc.mirrored && n % 2 == 1 ? -p : p;
        }
        case SpeedKind::Power: {
            const double b = eval(spec.base(), k);
            const double p = spec.exponent();
            if (p == 1.0) return b;
            if (b < 0.0 && !is_integer(p))
                throw std::domain_error("fractional power of a negative speed value");
            return std::pow(b, p);
        }
    }
    throw std::logic_error("unknown speed kind");
}

std::vector<double> gradient(const WeingartenSpec& spec, const CurvatureProfile& k) {
    const auto& blocks = k.blocks();
    const int n = k.dimension();
    std::vector<double> g(blocks.size(), 0.0);
    switch (spec.kind()) {
        case SpeedKind::MeanCurvature: {
            const int r = spec.order();
            if (r > n)
                throw std::invalid_argument("mean curvature order exceeds profile dimension");
            for (size_t j = 0; j < blocks.size(); ++j) {
                std::vector<CurvatureBlock> reduced;
                reduced.reserve(blocks.size());
                for (size_t i = 0; i < blocks.size(); ++i) {
                    CurvatureBlock b = blocks[i];
                    if (i == j) --b.multiplicity;
                    if (b.multiplicity > 0) reduced.push_back(b);
                }
                g[j] = (r == 1) ? 1.0 : elementary_symmetric(canonical(reduced), r - 1);
            }
            return g;
        }
        case SpeedKind::SquaredNorm: {
            for (size_t j = 0; j < blocks.size(); ++j) g[j] = 2.0 * blocks[j].value;
            return g;
        }
        case SpeedKind::Gauss: {
            for (size_t j = 0; j < blocks.size(); ++j) {
                double p = 1.0;
                for (size_t i = 0; i < blocks.size(); ++i) {
                    const int m = blocks[i].multiplicity - (i == j ? 1 : 0);
                    for (int c = 0; c < m; ++c) p *= blocks[i].value;
                }
                g[j] = p;
            }
            return g;
        }
        case SpeedKind::Power: {
            const double p = spec.exponent();
            auto gb = gradient(spec.base(), k);
            if (p == 1.0) return gb;
            const double b = eval(spec.base(), k);
            if (b < 0.0 && !is_integer(p - 1.0))
                throw std::domain_error("fractional power of a negative speed value");
            const double outer = p * std::pow(b, p - 1.0);
            for (auto& v : gb) v *= outer;
            return gb;
        }
    }
    throw std::logic_error("unknown speed kind");
}

bool AxiomReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.skipped && !c.passed) return false;
    return true;
}

const AxiomCheck* AxiomReport::find(const std::string& axiom) const {
    for (const auto& c : checks)
        if (c.axiom == axiom) return &c;
    return nullptr;
}

AxiomReport validate_axioms(const WeingartenSpec& spec, int n, int samples,
                            std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");

    AxiomReport report;
    AxiomCheck positivity;
    positivity.axiom = "positivity";
    AxiomCheck grad_pos;
    grad_pos.axiom = "gradient_positivity";
    AxiomCheck euler;
    euler.axiom = "euler_identity";
    AxiomCheck symmetry;
    symmetry.axiom = "symmetry";
    AxiomCheck oddness;
    oddness.axiom = "oddness";
    const bool odd = spec.odd(n);
    oddness.skipped = !odd;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(0.1, 3.0);
    const double degree = spec.degree(n);

    auto record = [](AxiomCheck& c, bool ok, const std::vector<double>& k,
                     double lhs, double rhs) {
        if (ok) return;
        ++c.failures;
        if (c.passed) {
            c.passed = false;
            char buf[96];
            std::snprintf(buf, sizeof buf, " lhs=%.9g rhs=%.9g", lhs, rhs);
            c.counterexample = "k=" + format_samples(k) + buf;
        }
    };

    std::vector<double> k(static_cast<size_t>(n));
    for (int s = 0; s < samples; ++s) {
        for (auto& v : k) v = pick(rng);
        std::vector<CurvatureBlock> blocks(k.size());
        for (size_t i = 0; i < k.size(); ++i) blocks[i] = {k[i], 1};
        CurvatureProfile profile(blocks);

        const double w = eval(spec, profile);
        record(positivity, w > 0.0, k, w, 0.0);

        const auto g = gradient(spec, profile);
        bool all_pos = true;
        double worst = g.empty() ? 0.0 : g[0];
        for (double v : g)
            if (!(v > 0.0)) { all_pos = false; worst = v; }
        record(grad_pos, all_pos, k, worst, 0.0);

        double sum = 0.0;
        for (size_t i = 0; i < g.size(); ++i) sum += k[i] * g[i];
        const double rhs = degree * w;
        record(euler, std::abs(sum - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)),
               k, sum, rhs);

        std::vector<double> shuffled(k);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::vector<CurvatureBlock> sb(shuffled.size());
        for (size_t i = 0; i < shuffled.size(); ++i) sb[i] = {shuffled[i], 1};
        const double w_perm = eval(spec, CurvatureProfile(sb));
        record(symmetry, w_perm == w, k, w_perm, w);

        if (odd) {
            const double w_neg = eval(spec, profile.negated());
            record(oddness, w_neg == -w, k, w_neg, -w);
        }
    }

    report.checks = {positivity, grad_pos, euler, symmetry, oddness};
    return report;
}

}  // namespace wflow
