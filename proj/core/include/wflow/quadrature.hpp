#pragma once

#include <functional>

namespace wflow::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    long evaluations = 0;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b].  Nodes are interior, so the
// integrand is never evaluated at the endpoints.
Result adaptive(const std::function<double(double)>& f, double a, double b,
                double abs_tol, int max_depth = 60);

enum class TailVerdict { Converged, Diverged };

struct TailResult {
    TailVerdict verdict = TailVerdict::Converged;
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    int shells = 0;
};

// Integral of f over the interval between `singular` and `regular`, where f
// may be unbounded (or vanish to all orders) at the `singular` end.  The
// interval is covered by dyadic shells accumulating toward the singular end;
// each shell is integrated adaptively.  Divergence is declared when the
// partial integral exceeds `divergence_cap`, or when shell contributions stop
// decaying while still above the tail tolerance.
TailResult improper(const std::function<double(double)>& f, double singular,
                    double regular, double abs_tol, double divergence_cap);

}  // namespace wflow::quad
