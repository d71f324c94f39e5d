#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

namespace wflow {

// One principal-curvature value together with its multiplicity.
struct CurvatureBlock {
    double value = 0.0;
    int multiplicity = 0;
};

// Multiplicity-compressed vector of principal curvatures.  Blocks may repeat
// a value (entries coming from distinct geometric families are not merged).
class CurvatureProfile {
public:
    CurvatureProfile() = default;
    CurvatureProfile(std::initializer_list<CurvatureBlock> blocks);
    explicit CurvatureProfile(std::vector<CurvatureBlock> blocks);

    const std::vector<CurvatureBlock>& blocks() const { return blocks_; }
    int dimension() const;                 // sum of multiplicities
    std::vector<double> expanded() const;  // one entry per curvature
    CurvatureProfile negated() const;
    CurvatureProfile scaled(double lambda) const;

private:
    std::vector<CurvatureBlock> blocks_;
};

enum class SpeedKind {
    MeanCurvature,  // H_r, the r-th elementary symmetric function
    SquaredNorm,    // |A|^2 = sum k_i^2
    Gauss,          // K = H_n = prod k_i
    Power,          // base^p, p > 0
};

// A symmetric homogeneous speed function of the principal curvatures.
class WeingartenSpec {
public:
    static WeingartenSpec mean_curvature(int r);
    static WeingartenSpec squared_norm();
    static WeingartenSpec gauss();
    static WeingartenSpec power(WeingartenSpec base, double p);

    SpeedKind kind() const { return kind_; }
    int order() const { return r_; }          // r for MeanCurvature
    double exponent() const { return p_; }    // p for Power
    const WeingartenSpec& base() const;       // base for Power

    // Homogeneity degree when evaluated on an n-dimensional profile.
    double degree(int n) const;
    // Whether W(-k) = -W(k) on an n-dimensional profile.
    bool odd(int n) const;

    std::string name() const;

private:
    WeingartenSpec(SpeedKind kind, int r, double p, std::shared_ptr<const WeingartenSpec> base)
        : kind_(kind), r_(r), p_(p), base_(std::move(base)) {}

    SpeedKind kind_ = SpeedKind::MeanCurvature;
    int r_ = 1;
    double p_ = 1.0;
    std::shared_ptr<const WeingartenSpec> base_;
};

// Value of the speed function on a curvature profile.  H_r runs the
// elementary-symmetric recurrence over (value, multiplicity) blocks with
// binomial weights; subsets are never enumerated.  The profile is
// canonicalized (blocks sorted by value, bitwise-equal values merged) first,
// so permutations of the expanded entries evaluate bit-identically.
double eval(const WeingartenSpec& spec, const CurvatureProfile& k);

// Partial derivatives dW/dk, one entry per block of the profile (evaluated
// at a representative of the block).  Analytic: dH_r/dk_i is H_{r-1} of the
// remaining entries, d|A|^2/dk_i = 2 k_i, chain rule for Power.
std::vector<double> gradient(const WeingartenSpec& spec, const CurvatureProfile& k);

struct AxiomCheck {
    std::string axiom;
    bool passed = true;
    bool skipped = false;
    int failures = 0;
    std::string counterexample;  // first failing sample, if any
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_passed() const;
    const AxiomCheck* find(const std::string& axiom) const;
};

// Samples `samples` pseudorandom points of the positive cone in dimension n
// and checks: positivity, gradient positivity, the Euler homogeneity
// identity sum k_i dW/dk_i = degree * W (1e-8 relative), symmetry under a
// random permutation (exact), and W(-k) = -W(k) for odd specs (exact;
// skipped otherwise).
AxiomReport validate_axioms(const WeingartenSpec& spec, int n, int samples,
                            std::uint64_t seed);

}  // namespace wflow
