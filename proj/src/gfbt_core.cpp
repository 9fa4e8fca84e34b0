#include "gfbt/gfbt_core.hpp"

#include <cmath>
#include <vector>

namespace gfbt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 64 probe points spanning the support; infinite ends are reached through
// the same u/(1-u) map the integrator uses.
std::vector<double> probe_points(double lo, double hi) {
    const int count = 64;
    std::vector<double> pts;
    pts.reserve(count);
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    for (int j = 1; j <= count; ++j) {
        const double u = static_cast<double>(j) / (count + 1);
        double r;
        if (!lo_inf && !hi_inf) {
            r = lo + (hi - lo) * u;
        } else if (!lo_inf) {
            r = lo + u / (1.0 - u);
        } else if (!hi_inf) {
            r = hi - (1.0 - u) / u;
        } else {
            const double v = 2.0 * u - 1.0;
            r = v / (1.0 - std::fabs(v));
        }
        pts.push_back(r);
    }
    return pts;
}

void check_monotone(const GallagerFamily& family) {
    const auto pts = probe_points(family.support_lo, family.support_hi);
    double prev = family.conditional_bound(pts.front());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double cur = family.conditional_bound(pts[i]);
        const double slack = 1e-12 * std::max(1.0, std::fabs(prev));
        if (cur < prev - slack)
            throw MonotonicityError(
                "optimal_parameter: f_u decreases between probe points; "
                "use min_form_bound (needs no monotonicity)");
        prev = cur;
    }
}

double integrate_checked(const GallagerFamily& family,
                         const std::function<double(double)>& f, double lo,
                         double hi, const QuadratureSpec& spec) {
    const IntegrationResult r =
        integrate_split(f, lo, hi, family.quadrature_hints, spec);
    if (!r.converged)
        throw NonConvergenceError("gfbt quadrature did not converge");
    return r.value;
}

double tail_mass_of(const GallagerFamily& family, double r,
                    const QuadratureSpec& spec) {
    if (r >= family.support_hi) return 0.0;
    const double from = std::max(r, family.support_lo);
    if (family.tail_mass) return family.tail_mass(from);
    return integrate_checked(family, family.density, from, family.support_hi,
                             spec);
}

}  // namespace

void validate_density(const GallagerFamily& family, double tol,
                      const QuadratureSpec& spec) {
    const double mass = integrate_checked(family, family.density,
                                          family.support_lo,
                                          family.support_hi, spec);
    if (std::fabs(mass - 1.0) > tol)
        throw std::invalid_argument(
            "GallagerFamily: density mass deviates from 1 by more than tol");
}

BoundResult evaluate_at(const GallagerFamily& family, double r_star,
                        const QuadratureSpec& spec) {
    if (std::isnan(r_star))
        throw std::invalid_argument("evaluate_at: r_star is NaN");
    if (!std::isinf(r_star) &&
        (r_star < family.support_lo || r_star > family.support_hi))
        throw std::invalid_argument("evaluate_at: r_star outside the support");

    BoundResult out;
    out.optimal_parameter = r_star;
    out.method_tag = "two_term";

    const double upper = std::min(r_star, family.support_hi);
    if (upper > family.support_lo) {
        auto integrand = [&family](double r) {
            return family.conditional_bound(r) * family.density(r);
        };
        out.inside_term = integrate_checked(family, integrand,
                                            family.support_lo, upper, spec);
    }
    out.outside_term = tail_mass_of(family, r_star, spec);
    out.value = out.inside_term + out.outside_term;
    return out;
}

double optimal_parameter(const GallagerFamily& family, double tol) {
    if (!family.monotone_flag)
        throw MonotonicityError(
            "optimal_parameter: family not flagged monotone; "
            "use min_form_bound");
    check_monotone(family);

    const double lo = family.support_lo;
    const double hi = family.support_hi;
    auto f = [&family](double r) { return family.conditional_bound(r); };

    // Establish a finite bracket [a, b] with f(a) <= 1 <= f(b).
    double a, b;
    const double anchor = std::isinf(lo) ? 0.0 : lo;
    if (std::isinf(hi)) {
        b = kInf;
        for (int exp = 0; exp <= 60; ++exp) {
            const double off = std::ldexp(1.0, exp);
            if (f(anchor + off) >= 1.0) {
                b = anchor + off;
                break;
            }
        }
        if (std::isinf(b)) return hi;  // sup case
    } else {
        if (f(hi) < 1.0) return hi;  // sup case on a bounded support
        b = hi;
    }
    if (std::isinf(lo)) {
        a = -kInf;
        for (int exp = 0; exp <= 60; ++exp) {
            const double off = std::ldexp(1.0, exp);
            if (f(b - off) <= 1.0) {
                a = b - off;
                break;
            }
        }
        if (std::isinf(a))
            throw NonConvergenceError(
                "optimal_parameter: could not bracket f_u = 1 from below");
    } else {
        a = lo;
        if (f(a) > 1.0) return a;  // f_u exceeds 1 on the whole support
    }

    return bisect_increasing(f, 1.0, a, b, tol).root;
}

BoundResult min_form_bound(const GallagerFamily& family,
                           const QuadratureSpec& spec) {
    auto clipped = [&family](double r) {
        return std::min(family.conditional_bound(r), 1.0) * family.density(r);
    };

    if (family.monotone_flag) {
        double r1 = kInf;
        bool monotone_ok = true;
        try {
            r1 = optimal_parameter(family);
        } catch (const MonotonicityError&) {
            monotone_ok = false;  // probe failed: integrate the min directly
        }
        if (monotone_ok) {
            BoundResult out;
            out.optimal_parameter = r1;
            out.method_tag = "min_form";
            const double split = std::min(r1, family.support_hi);
            if (split > family.support_lo)
                out.inside_term = integrate_checked(
                    family, clipped, family.support_lo, split, spec);
            out.outside_term = tail_mass_of(family, r1, spec);
            out.value = out.inside_term + out.outside_term;
            return out;
        }
    }

    BoundResult out;
    out.optimal_parameter = std::numeric_limits<double>::quiet_NaN();
    out.method_tag = "min_form";
    out.inside_term = integrate_checked(family, clipped, family.support_lo,
                                        family.support_hi, spec);
    out.outside_term = 0.0;
    out.value = out.inside_term;
    return out;
}

}  // namespace gfbt
