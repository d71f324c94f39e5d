#pragma once

#include <limits>
#include <string>
#include <vector>

#include "wflow/eps_trig.hpp"
#include "wflow/weingarten.hpp"

namespace wflow {

// Normed division algebra underlying a rank-one hyperbolic space.
enum class Field { Real, Complex, Quaternion, Octonion };

int field_dim(Field f);  // 1, 2, 4, 8
std::string field_name(Field f);

// Ambient manifold: either the space form Q_eps^{n+1} or the hyperbolic
// space H_F^m of real dimension m * dim F.
struct AmbientSpace {
    enum class Kind { SpaceForm, HyperbolicField };

    static AmbientSpace space_form(Epsilon eps, int ambient_dim);
    static AmbientSpace hyperbolic(Field field, int m);

    Kind kind = Kind::SpaceForm;
    Epsilon eps = Epsilon::Euclidean;
    Field field = Field::Real;
    int m = 0;            // H_F^m parameter (HyperbolicField only)
    int ambient_dim = 0;  // n + 1
    int q = 0;            // multiplicity of the coth(tau) block (HyperbolicField only)

    int n() const { return ambient_dim - 1; }
    std::string name() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return x > lo && x < hi; }
    bool lo_finite() const { return std::isfinite(lo); }
    bool hi_finite() const { return std::isfinite(hi); }
};

enum class FamilyKind {
    GeodesicSphere,
    Horosphere,
    Equidistant,
    GeneralizedCylinder,
    SphereMunzner,
    HFGeodesicSphere,
    HFHorosphere,
};

std::string family_kind_name(FamilyKind k);

// A one-parameter family of parallel isoparametric hypersurfaces, exposing
// its principal curvatures as a function of the focal parameter tau.
//
// Curvature profiles:
//   geodesic sphere in Q_eps:      (cot_eps tau, n)
//   horosphere in H^{n+1}:         (1, n), all tau
//   equidistant in H^{n+1}:        (tanh tau, n)
//   cylinder in Q_eps, eps=0:      (1/tau, k), (0, n-k)
//   cylinder in Q_eps, eps=-1:     (coth tau, k), (tanh tau, n-k)
//   Munzner family in S^{n+1}:     (cot(tau + (i-1)pi/g), m_i), i = 1..g
//   geodesic sphere in H_F^m:      (coth tau, q), (coth(tau/2)/2, n-q)
//   horosphere in H_F^m:           (1, q), (1/2, n-q), all tau
class IsoparametricFamily {
public:
    static IsoparametricFamily geodesic_sphere(const AmbientSpace& ambient);
    static IsoparametricFamily horosphere(int n);
    static IsoparametricFamily equidistant(int n);
    static IsoparametricFamily generalized_cylinder(const AmbientSpace& ambient, int k);
    static IsoparametricFamily sphere_munzner(int g, std::vector<int> multiplicities);
    static IsoparametricFamily hf_geodesic_sphere(Field field, int m);
    static IsoparametricFamily hf_horosphere(Field field, int m);

    FamilyKind kind() const { return kind_; }
    const AmbientSpace& ambient() const { return ambient_; }
    int dimension() const { return ambient_.n(); }

    Interval tau_domain() const;
    CurvatureProfile principal_curvatures(double tau) const;

    // Sign delta in the focal-parameter ODE tau' = delta * W(tau):
    // +1 for horospheres (tau advances into the horoball), -1 otherwise.
    int drift() const;

    // Horosphere-type families have tau-independent curvatures.
    bool constant_profile() const;

    std::string boundary_label(bool upper) const;
    std::string name() const;

    int cylinder_k() const { return cylinder_k_; }
    int munzner_g() const { return g_; }
    const std::vector<int>& munzner_multiplicities() const { return mults_; }

private:
    IsoparametricFamily(FamilyKind kind, AmbientSpace ambient)
        : kind_(kind), ambient_(ambient) {}

    FamilyKind kind_;
    AmbientSpace ambient_;
    int cylinder_k_ = 0;
    int g_ = 0;
    std::vector<int> mults_;
};

// W evaluated on the family's curvature profile at tau.
double speed(const IsoparametricFamily& family, const WeingartenSpec& spec, double tau);

}  // namespace wflow
