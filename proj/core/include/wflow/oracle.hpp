#pragma once

#include <optional>
#include <string>

#include "wflow/flow.hpp"

namespace wflow::oracle {

struct ClosedForm {
    double T = 0.0;
    std::string case_name;
};

// Closed-form collapse time for the integrable catalogue cases:
//   geodesic sphere, |A|^2, any eps:        tangent-square law
//   geodesic sphere, H_r, eps = 0:          power law R^{r+1} / ((r+1) C(n,r))
//   geodesic sphere, H_1, eps = +-1:        log-secant law
//   geodesic sphere, H_2, eps = +-1:        tangent-square law with c = n(n-1)/2
//   Munzner g=2, K, m1 = m2 (m2 even):      T = tau0
//   Munzner g=2, K, m1 - m2 = 1 (m2 even):  T = log sec tau0
//   geodesic sphere in H_F^m, H_1:          rational-exponential law
// The case table is closed; anything else returns nullopt.
std::optional<ClosedForm> closed_form_T(const FlowProblem& problem);

// Residual G(t, phi) of the matching implicit relation G = 0 along the flow;
// exact solutions drive it to round-off.  nullopt when no case matches.
std::optional<double> implicit_phi_residual(const FlowProblem& problem, double t,
                                            double phi);

}  // namespace wflow::oracle
