#pragma once

#include <cmath>
#include <stdexcept>

#include "wflow/errors.hpp"

namespace wflow {

// Sign of the sectional curvature of a simply connected space form.
enum class Epsilon : int {
    Hyperbolic = -1,
    Euclidean = 0,
    Spherical = 1,
};

inline Epsilon epsilon_from_int(int value) {
    if (value < -1 || value > 1)
        throw std::invalid_argument("epsilon must be -1, 0 or 1");
    return static_cast<Epsilon>(value);
}

inline int to_int(Epsilon eps) { return static_cast<int>(eps); }

// Curvature-adapted trigonometric pair:
//   eps =  0:  cos_eps = 1,      sin_eps = s
//   eps =  1:  cos_eps = cos s,  sin_eps = sin s
//   eps = -1:  cos_eps = cosh s, sin_eps = sinh s
// They satisfy cos_eps^2 + eps*sin_eps^2 = 1 and d/ds sin_eps = cos_eps.
inline double cos_eps(Epsilon eps, double s) {
    switch (eps) {
        case Epsilon::Euclidean: return 1.0;
        case Epsilon::Spherical: return std::cos(s);
        case Epsilon::Hyperbolic: return std::cosh(s);
    }
    throw std::invalid_argument("invalid epsilon");
}

inline double sin_eps(Epsilon eps, double s) {
    switch (eps) {
        case Epsilon::Euclidean: return s;
        case Epsilon::Spherical: return std::sin(s);
        case Epsilon::Hyperbolic: return std::sinh(s);
    }
    throw std::invalid_argument("invalid epsilon");
}

// Quotients of the pair above. An exactly vanishing denominator raises
// PoleError instead of producing an infinity.
inline double tan_eps(Epsilon eps, double s) {
    const double c = cos_eps(eps, s);
    if (c == 0.0) throw PoleError("tan_eps: cos_eps vanishes");
    return sin_eps(eps, s) / c;
}

inline double cot_eps(Epsilon eps, double s) {
    const double sn = sin_eps(eps, s);
    if (sn == 0.0) throw PoleError("cot_eps: sin_eps vanishes");
    return cos_eps(eps, s) / sn;
}

inline double sec_eps(Epsilon eps, double s) {
    const double c = cos_eps(eps, s);
    if (c == 0.0) throw PoleError("sec_eps: cos_eps vanishes");
    return 1.0 / c;
}

}  // namespace wflow
