#ifndef GFBT_NUMERIC_HPP
#define GFBT_NUMERIC_HPP

#include <functional>
#include <stdexcept>
#include <vector>

namespace gfbt {

// Thrown when an adaptive routine exhausts its subdivision/iteration budget.
struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureSpec {
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 1e-14;
    int max_subdivisions = 2000;
};

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

// Globally adaptive Gauss-Kronrod 7-15 quadrature of f over [lo, hi].
// Either endpoint may be infinite; infinite ends are mapped to a finite
// interval by the substitution r = u/(1-u) (shifted/mirrored as needed),
// so f is never evaluated at an infinite point. Deterministic for a fixed
// spec. On budget exhaustion the result carries converged = false; the
// caller decides whether the achieved error_estimate is acceptable.
IntegrationResult integrate(const std::function<double(double)>& f,
                            double lo, double hi,
                            const QuadratureSpec& spec = {});

// Same, but pre-split at the given interior breakpoints (points outside
// (lo, hi) are ignored). Sharply concentrated integrands (a chi density
// with hundreds of degrees of freedom is a needle on a semi-infinite
// domain) can slip between the nodes of a single starting panel; seeding
// the subdivision at known mass concentrations removes that failure mode.
IntegrationResult integrate_split(const std::function<double(double)>& f,
                                  double lo, double hi,
                                  const std::vector<double>& breakpoints,
                                  const QuadratureSpec& spec = {});

struct BisectResult {
    double root = 0.0;
    // True when f stays below target on the whole bracket: the equation has
    // no solution below hi and the caller should treat the supremum as the
    // answer.
    bool at_supremum = false;
};

// Bisection for a nondecreasing continuous f with f(lo) <= target.
// Returns a point whose enclosing interval has width <= tol.
// Throws std::invalid_argument if f(lo) > target.
BisectResult bisect_increasing(const std::function<double(double)>& f,
                               double target, double lo, double hi,
                               double tol = 1e-12);

}  // namespace gfbt

#endif
