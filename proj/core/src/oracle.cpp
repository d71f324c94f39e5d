#include "wflow/oracle.hpp"

#include <cmath>

namespace wflow::oracle {

namespace {

double binom(int n, int r) {
    double c = 1.0;
    for (int i = 1; i <= r; ++i)
        c *= static_cast<double>(n - i + 1) / static_cast<double>(i);
    return c;
}

enum class CaseId {
    Tan2,           // speed c * cot_eps^2; |A|^2 (c = n) or H_2 at eps = +-1 (c = n(n-1)/2)
    EuclidPower,    // H_r at eps = 0; speed C(n,r) / tau^r
    LogSecant,      // H_1 at eps = +-1
    MunznerConst,   // g=2 Gauss, m1 = m2 even: speed identically 1
    MunznerSecant,  // g=2 Gauss, m1 - m2 = 1: speed cot(tau)
    HFMean,         // geodesic sphere of H_F^m under H_1
};

struct Matched {
    CaseId id;
    const char* name = "";
    Epsilon eps = Epsilon::Euclidean;
    int n = 0;
    double R = 0.0;  // initial focal parameter
    double c = 0.0;  // speed constant
    int r = 0;
    double a = 0.0, b = 0.0;  // HFMean coefficients
};

std::optional<Matched> match(const FlowProblem& p) {
    const IsoparametricFamily& fam = p.family;
    const WeingartenSpec& spec = p.spec;
    Matched m;
    m.n = fam.dimension();
    m.R = p.tau0;

    if (fam.kind() == FamilyKind::GeodesicSphere) {
        m.eps = fam.ambient().eps;
        if (spec.kind() == SpeedKind::SquaredNorm) {
            m.id = CaseId::Tan2;
            m.name = "sphere-A2";
            m.c = m.n;
            return m;
        }
        if (spec.kind() == SpeedKind::MeanCurvature) {
            const int r = spec.order();
            if (m.eps == Epsilon::Euclidean) {
                m.id = CaseId::EuclidPower;
                m.name = "sphere-Hr-euclid";
                m.r = r;
                m.c = binom(m.n, r);
                return m;
            }
            if (r == 1) {
                m.id = CaseId::LogSecant;
                m.name = "sphere-H1-curved";
                return m;
            }
            if (r == 2) {
                m.id = CaseId::Tan2;
                m.name = "sphere-H2-curved";
                m.c = binom(m.n, 2);
                return m;
            }
        }
        return std::nullopt;
    }

    if (fam.kind() == FamilyKind::SphereMunzner && fam.munzner_g() == 2 &&
        spec.kind() == SpeedKind::Gauss) {
        const auto& mu = fam.munzner_multiplicities();
        const int m1 = mu[0], m2 = mu[1];
        if (m2 % 2 != 0) return std::nullopt;
        if (m1 == m2) {
            m.id = CaseId::MunznerConst;
            m.name = "munzner-K-const";
            return m;
        }
        if (m1 - m2 == 1) {
            m.id = CaseId::MunznerSecant;
            m.name = "munzner-K-logsec";
            return m;
        }
        return std::nullopt;
    }

    if (fam.kind() == FamilyKind::HFGeodesicSphere &&
        spec.kind() == SpeedKind::MeanCurvature && spec.order() == 1) {
        const int q = fam.ambient().q;
        m.id = CaseId::HFMean;
        m.name = "hf-sphere-H1";
        m.a = 0.5 * (m.n + q);
        m.b = static_cast<double>(m.n - q);
        return m;
    }

    return std::nullopt;
}

// Antiderivative of the reciprocal mean-curvature speed of H_F^m spheres,
// as a function of x = R - phi.
double hf_primitive(double x, double a, double b) {
    const double ex = std::exp(x);
    return std::log(ex / (a * (ex * ex + 1.0) + b * ex)) / a;
}

}  // namespace

std::optional<ClosedForm> closed_form_T(const FlowProblem& problem) {
    const auto m = match(problem);
    if (!m) return std::nullopt;
    ClosedForm out;
    out.case_name = m->name;
    const double R = m->R;
    switch (m->id) {
        case CaseId::Tan2: {
            if (m->eps == Epsilon::Euclidean) {
                out.T = R * R * R / (3.0 * m->c);
            } else {
                const double e = to_int(m->eps);
                const double k = cot_eps(m->eps, R);
                out.T = e * (1.0 - k * R) / (k * m->c);
            }
            return out;
        }
        case CaseId::EuclidPower:
            out.T = std::pow(R, m->r + 1) / ((m->r + 1) * m->c);
            return out;
        case CaseId::LogSecant: {
            const double e = to_int(m->eps);
            out.T = -(e / static_cast<double>(m->n)) * std::log(cos_eps(m->eps, R));
            return out;
        }
        case CaseId::MunznerConst:
            out.T = R;
            return out;
        case CaseId::MunznerSecant:
            out.T = -std::log(std::cos(R));
            return out;
        case CaseId::HFMean: {
            const double eR = std::exp(R);
            out.T = std::log((m->a * (eR * eR + 1.0) + m->b * eR) /
                             (2.0 * m->n * eR)) / m->a;
            return out;
        }
    }
    return std::nullopt;
}

std::optional<double> implicit_phi_residual(const FlowProblem& problem, double t,
                                            double phi) {
    const auto m = match(problem);
    if (!m) return std::nullopt;
    const double R = m->R;
    const double x = R - phi;
    switch (m->id) {
        case CaseId::Tan2: {
            if (m->eps == Epsilon::Euclidean)
                return x * x * x - (R * R * R - 3.0 * m->c * t);
            const double e = to_int(m->eps);
            const double k = cot_eps(m->eps, R);
            return tan_eps(m->eps, x) + phi - (1.0 / k - e * m->c * t);
        }
        case CaseId::EuclidPower:
            return std::pow(x, m->r + 1) -
                   (std::pow(R, m->r + 1) - (m->r + 1) * m->c * t);
        case CaseId::LogSecant: {
            const double e = to_int(m->eps);
            return cos_eps(m->eps, x) - std::exp(e * m->n * t) * cos_eps(m->eps, R);
        }
        case CaseId::MunznerConst:
            return phi - t;
        case CaseId::MunznerSecant:
            return std::cos(x) - std::exp(t) * std::cos(R);
        case CaseId::HFMean:
            return hf_primitive(x, m->a, m->b) - t - hf_primitive(R, m->a, m->b);
    }
    return std::nullopt;
}

}  // namespace wflow::oracle
