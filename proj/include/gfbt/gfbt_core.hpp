#ifndef GFBT_CORE_HPP
#define GFBT_CORE_HPP

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "gfbt/numeric.hpp"

namespace gfbt {

// A single-parameter family of nested decision regions: the pdf g of the
// induced region parameter plus a conditional error bound f_u on each
// region boundary. f_u may exceed 1.
struct GallagerFamily {
    std::function<double(double)> density;            // g(r)
    std::function<double(double)> conditional_bound;  // f_u(r)
    double support_lo = 0.0;
    double support_hi = std::numeric_limits<double>::infinity();
    bool monotone_flag = true;  // f_u nondecreasing and continuous

    // Optional exact tail mass T(r) = integral of g over [r, support_hi].
    // When absent the tail is integrated numerically.
    std::function<double(double)> tail_mass;

    // Optional interior points where the density mass concentrates; the
    // quadrature pre-splits there so a narrow density (chi with hundreds
    // of degrees of freedom) cannot slip between panel nodes.
    std::vector<double> quadrature_hints;
};

struct BoundResult {
    double value = 0.0;
    double optimal_parameter = 0.0;  // +inf encodes the sup case
    double inside_term = 0.0;        // integral of f_u * g up to the parameter
    double outside_term = 0.0;       // tail mass beyond the parameter
    std::string method_tag;
};

// Raised when the 64-point probe finds f_u decreasing although
// monotone_flag was set; the min-form path needs no monotonicity.
struct MonotonicityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checks that the density integrates to 1 over the support (within tol).
void validate_density(const GallagerFamily& family, double tol = 1e-8,
                      const QuadratureSpec& spec = {});

// Two-term bound at a fixed region size r_star:
//   integral of f_u g over [lo, r_star]  +  tail mass over [r_star, hi].
// f_u is not clipped, so the result can exceed the min-form value (and 1).
BoundResult evaluate_at(const GallagerFamily& family, double r_star,
                        const QuadratureSpec& spec = {});

// The region size minimizing the two-term bound for a nondecreasing f_u:
// the root of f_u(r) = 1 when a bracket exists, otherwise the supremum of
// the support. Monotonicity is spot-checked at 64 probe points first.
double optimal_parameter(const GallagerFamily& family, double tol = 1e-12);

// Tightest bound of the family: integral of min{f_u, 1} g over the support.
// Needs no monotonicity; when f_u is monotone the integral is split at the
// crossing point so the kink never lands inside one quadrature panel.
BoundResult min_form_bound(const GallagerFamily& family,
                           const QuadratureSpec& spec = {});

}  // namespace gfbt

#endif
