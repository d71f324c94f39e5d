#include "wflow/families.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wflow {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

int field_dim(Field f) {
    switch (f) {
        case Field::Real: return 1;
        case Field::Complex: return 2;
        case Field::Quaternion: return 4;
        case Field::Octonion: return 8;
    }
    throw std::invalid_argument("invalid field");
}

std::string field_name(Field f) {
    switch (f) {
        case Field::Real: return "R";
        case Field::Complex: return "C";
        case Field::Quaternion: return "K";
        case Field::Octonion: return "O";
    }
    return "?";
}

AmbientSpace AmbientSpace::space_form(Epsilon eps, int ambient_dim) {
    require(ambient_dim >= 2, "space form dimension n+1 must be >= 2");
    AmbientSpace a;
    a.kind = Kind::SpaceForm;
    a.eps = eps;
    a.ambient_dim = ambient_dim;
    return a;
}

AmbientSpace AmbientSpace::hyperbolic(Field field, int m) {
    require(m >= 2, "hyperbolic space parameter m must be >= 2");
    if (field == Field::Octonion)
        require(m == 2, "octonionic hyperbolic space exists only for m = 2");
    AmbientSpace a;
    a.kind = Kind::HyperbolicField;
    a.eps = Epsilon::Hyperbolic;
    a.field = field;
    a.m = m;
    a.ambient_dim = m * field_dim(field);
    const int n = a.ambient_dim - 1;
    switch (field) {
        case Field::Real: a.q = n; break;
        case Field::Complex: a.q = 1; break;
        case Field::Quaternion: a.q = 3; break;
        case Field::Octonion: a.q = 7; break;
    }
    return a;
}

std::string AmbientSpace::name() const {
    char buf[64];
    if (kind == Kind::SpaceForm) {
        std::snprintf(buf, sizeof buf, "Q(%+d)^%d", to_int(eps), ambient_dim);
    } else {
        std::snprintf(buf, sizeof buf, "H_%s^%d", field_name(field).c_str(), m);
    }
    return buf;
}

std::string family_kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::GeodesicSphere: return "geodesic_sphere";
        case FamilyKind::Horosphere: return "horosphere";
        case FamilyKind::Equidistant: return "equidistant";
        case FamilyKind::GeneralizedCylinder: return "generalized_cylinder";
        case FamilyKind::SphereMunzner: return "sphere_munzner";
        case FamilyKind::HFGeodesicSphere: return "hf_geodesic_sphere";
        case FamilyKind::HFHorosphere: return "hf_horosphere";
    }
    return "?";
}

IsoparametricFamily IsoparametricFamily::geodesic_sphere(const AmbientSpace& ambient) {
    require(ambient.kind == AmbientSpace::Kind::SpaceForm,
            "geodesic_sphere requires a space form ambient");
    return IsoparametricFamily(FamilyKind::GeodesicSphere, ambient);
}

IsoparametricFamily IsoparametricFamily::horosphere(int n) {
    require(n >= 1, "horosphere dimension must be >= 1");
    return IsoparametricFamily(FamilyKind::Horosphere,
                               AmbientSpace::space_form(Epsilon::Hyperbolic, n + 1));
}

IsoparametricFamily IsoparametricFamily::equidistant(int n) {
    require(n >= 1, "equidistant dimension must be >= 1");
    return IsoparametricFamily(FamilyKind::Equidistant,
                               AmbientSpace::space_form(Epsilon::Hyperbolic, n + 1));
}

IsoparametricFamily IsoparametricFamily::generalized_cylinder(const AmbientSpace& ambient,
                                                              int k) {
    require(ambient.kind == AmbientSpace::Kind::SpaceForm,
            "generalized_cylinder requires a space form ambient");
    require(ambient.eps != Epsilon::Spherical,
            "generalized_cylinder requires eps in {0, -1}");
    require(k >= 1 && k <= ambient.n() - 1,
            "cylinder sphere dimension k must satisfy 1 <= k <= n-1");
    IsoparametricFamily f(FamilyKind::GeneralizedCylinder, ambient);
    f.cylinder_k_ = k;
    return f;
}

IsoparametricFamily IsoparametricFamily::sphere_munzner(int g,
                                                        std::vector<int> multiplicities) {
    require(g == 1 || g == 2 || g == 3 || g == 4 || g == 6,
            "Munzner g must be one of {1, 2, 3, 4, 6}");
    require(static_cast<int>(multiplicities.size()) == g,
            "Munzner family needs exactly g multiplicities");
    int n = 0;
    for (int m : multiplicities) {
        require(m >= 1, "Munzner multiplicities must be >= 1");
        n += m;
    }
    IsoparametricFamily f(FamilyKind::SphereMunzner,
                          AmbientSpace::space_form(Epsilon::Spherical, n + 1));
    f.g_ = g;
    f.mults_ = std::move(multiplicities);
    return f;
}

IsoparametricFamily IsoparametricFamily::hf_geodesic_sphere(Field field, int m) {
    return IsoparametricFamily(FamilyKind::HFGeodesicSphere,
                               AmbientSpace::hyperbolic(field, m));
}

IsoparametricFamily IsoparametricFamily::hf_horosphere(Field field, int m) {
    return IsoparametricFamily(FamilyKind::HFHorosphere,
                               AmbientSpace::hyperbolic(field, m));
}

Interval IsoparametricFamily::tau_domain() const {
    switch (kind_) {
        case FamilyKind::GeodesicSphere:
            // cot_eps has its next pole at pi for eps = 1.
            return {0.0, ambient_.eps == Epsilon::Spherical ? kPi : kInf};
        case FamilyKind::Horosphere:
        case FamilyKind::HFHorosphere:
            return {-kInf, kInf};
        case FamilyKind::Equidistant:
        case FamilyKind::GeneralizedCylinder:
        case FamilyKind::HFGeodesicSphere:
            return {0.0, kInf};
        case FamilyKind::SphereMunzner:
            return {0.0, kPi / g_};
    }
    throw std::logic_error("unknown family kind");
}

CurvatureProfile IsoparametricFamily::principal_curvatures(double tau) const {
    if (!constant_profile() && !tau_domain().contains(tau))
        throw std::domain_error("tau outside the family's focal-parameter domain");
    const int n = dimension();
    switch (kind_) {
        case FamilyKind::GeodesicSphere:
            return CurvatureProfile{{cot_eps(ambient_.eps, tau), n}};
        case FamilyKind::Horosphere:
            return CurvatureProfile{{1.0, n}};
        case FamilyKind::Equidistant:
            return CurvatureProfile{{std::tanh(tau), n}};
        case FamilyKind::GeneralizedCylinder: {
            const double flat = ambient_.eps == Epsilon::Euclidean ? 0.0 : std::tanh(tau);
            return CurvatureProfile{{cot_eps(ambient_.eps, tau), cylinder_k_},
                                    {flat, n - cylinder_k_}};
        }
        case FamilyKind::SphereMunzner: {
            std::vector<CurvatureBlock> blocks;
            blocks.reserve(mults_.size());
            for (int i = 0; i < g_; ++i)
                blocks.push_back({cot_eps(Epsilon::Spherical, tau + i * kPi / g_),
                                  mults_[static_cast<size_t>(i)]});
            return CurvatureProfile(std::move(blocks));
        }
        case FamilyKind::HFGeodesicSphere: {
            std::vector<CurvatureBlock> blocks;
            blocks.push_back({cot_eps(Epsilon::Hyperbolic, tau), ambient_.q});
            if (n > ambient_.q)
                blocks.push_back({0.5 * cot_eps(Epsilon::Hyperbolic, 0.5 * tau),
                                  n - ambient_.q});
            return CurvatureProfile(std::move(blocks));
        }
        case FamilyKind::HFHorosphere: {
            std::vector<CurvatureBlock> blocks;
            blocks.push_back({1.0, ambient_.q});
            if (n > ambient_.q) blocks.push_back({0.5, n - ambient_.q});
            return CurvatureProfile(std::move(blocks));
        }
    }
    throw std::logic_error("unknown family kind");
}

int IsoparametricFamily::drift() const {
    return constant_profile() ? +1 : -1;
}

bool IsoparametricFamily::constant_profile() const {
    return kind_ == FamilyKind::Horosphere || kind_ == FamilyKind::HFHorosphere;
}

std::string IsoparametricFamily::boundary_label(bool upper) const {
    switch (kind_) {
        case FamilyKind::GeodesicSphere:
            if (!upper) return "center";
            return ambient_.eps == Epsilon::Spherical ? "antipodal-point" : "unbounded";
        case FamilyKind::Horosphere:
        case FamilyKind::HFHorosphere:
            return upper ? "ideal-point" : "unbounded";
        case FamilyKind::Equidistant:
            return upper ? "unbounded" : "hyperplane-Pi";
        case FamilyKind::GeneralizedCylinder:
            return upper ? "unbounded" : "axis";
        case FamilyKind::SphereMunzner:
            return upper ? "F-" : "F+";
        case FamilyKind::HFGeodesicSphere:
            return upper ? "unbounded" : "center";
    }
    return "?";
}

std::string IsoparametricFamily::name() const {
    std::string s = family_kind_name(kind_) + "[" + ambient_.name();
    if (kind_ == FamilyKind::GeneralizedCylinder) s += ", k=" + std::to_string(cylinder_k_);
    if (kind_ == FamilyKind::SphereMunzner) {
        s += ", g=" + std::to_string(g_) + ", m=(";
        for (size_t i = 0; i < mults_.size(); ++i) {
            s += std::to_string(mults_[i]);
            if (i + 1 < mults_.size()) s += ",";
        }
        s += ")";
    }
    s += "]";
    return s;
}

double speed(const IsoparametricFamily& family, const WeingartenSpec& spec, double tau) {
    return eval(spec, family.principal_curvatures(tau));
}

}  // namespace wflow
