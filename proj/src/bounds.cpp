#include "gfbt/bounds.hpp"

#include <cmath>

#include "gfbt/special_fn.hpp"

namespace gfbt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2 = 0.693147180559945309417232121458177;
constexpr double kLogSqrt2Pi = 0.918938533204672741780329736405618;

// Chi density with dof degrees of freedom at scale sigma, formed in the log
// domain so the Gamma(dof/2) prefactor survives dof in the hundreds.
double chi_pdf(double r, int dof, double sigma) {
    if (r <= 0.0) return 0.0;
    const double s2 = sigma * sigma;
    const double log_pdf = kLog2 + (dof - 1) * std::log(r) -
                           r * r / (2.0 * s2) - 0.5 * dof * kLog2 -
                           dof * std::log(sigma) - log_gamma(0.5 * dof);
    return std::exp(log_pdf);
}

double gaussian_pdf(double z, double sigma) {
    const double t = z / sigma;
    return std::exp(-0.5 * t * t - kLogSqrt2Pi) / sigma;
}

void require_matching(const WeightEnumerator& w, const ChannelParams& ch) {
    if (w.n != ch.n)
        throw std::invalid_argument("bound: enumerator and channel disagree on n");
}

// TB/TSB assume at least three nonzero codewords (k > 1): that is what
// guarantees the conditional union bound reaches 1 and the roots of the
// optimality equations exist.
void require_tb_family(const WeightEnumerator& w) {
    if (w.spectrum.empty())
        throw std::invalid_argument("bound: empty weight spectrum");
    if (w.d_min() >= w.n)
        throw std::invalid_argument(
            "bound: requires d_min < n (repetition-like code excluded)");
    if (w.total_codewords() < 3)
        throw std::invalid_argument(
            "bound: requires at least three nonzero codewords (k > 1)");
}

BoundResult finish(BoundResult r, const char* tag_min, const char* tag_two,
                   BoundForm form) {
    r.method_tag = (form == BoundForm::min_form) ? tag_min : tag_two;
    return r;
}

// The default absolute tolerance (1e-14) would stall refinement once the
// bound value itself drops below it, wrecking relative accuracy at high
// SNR. The union bound caps every inside integral here, so it serves as a
// free magnitude estimate to re-anchor the absolute tolerance.
QuadratureSpec anchored(QuadratureSpec spec, double magnitude) {
    if (magnitude > 0.0 && std::isfinite(magnitude)) {
        const double anchor = std::max(
            0.01 * spec.relative_tolerance * std::min(magnitude, 1.0), 1e-300);
        spec.absolute_tolerance = std::min(spec.absolute_tolerance, anchor);
    }
    return spec;
}

}  // namespace

ChannelParams ChannelParams::from_sigma(double sigma, int n, double rate) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("ChannelParams: sigma must be > 0");
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument("ChannelParams: rate must be in (0,1]");
    if (n < 1) throw std::invalid_argument("ChannelParams: n must be >= 1");
    return {sigma, n, rate};
}

ChannelParams ChannelParams::from_ebn0_db(double ebn0_db, int n, double rate) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument("ChannelParams: rate must be in (0,1]");
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    return from_sigma(1.0 / std::sqrt(2.0 * rate * ebn0), n, rate);
}

double ChannelParams::ebn0_db() const {
    return 10.0 * std::log10(1.0 / (2.0 * rate * sigma * sigma));
}

double union_bound(const WeightEnumerator& w, const ChannelParams& ch) {
    require_matching(w, ch);
    double total = 0.0;
    for (const auto& [d, a] : w.spectrum)
        total += static_cast<double>(a) * q_function(std::sqrt(d) / ch.sigma);
    return total;
}

double sb_pairwise(double r, int d, int n) {
    if (n < 3) throw std::domain_error("sb_pairwise: n must be >= 3");
    if (d < 1 || d > n) throw std::domain_error("sb_pairwise: need 1 <= d <= n");
    if (!(r >= 0.0)) throw std::domain_error("sb_pairwise: r must be >= 0");
    const double sd = std::sqrt(static_cast<double>(d));
    if (r <= sd) return 0.0;
    return cap_fraction(n, std::acos(sd / r));
}

BoundResult sphere_bound(const WeightEnumerator& w, const ChannelParams& ch,
                         BoundForm form, const QuadratureSpec& spec) {
    require_matching(w, ch);
    const int n = ch.n;
    if (n < 3) throw std::invalid_argument("sphere_bound: n must be >= 3");
    const double sigma = ch.sigma;

    GallagerFamily family;
    family.support_lo = 0.0;
    family.support_hi = kInf;
    family.monotone_flag = true;
    family.density = [n, sigma](double r) { return chi_pdf(r, n, sigma); };
    family.conditional_bound = [&w, n](double r) {
        double total = 0.0;
        for (const auto& [d, a] : w.spectrum)
            total += static_cast<double>(a) * sb_pairwise(r, d, n);
        return total;
    };
    family.tail_mass = [n, sigma](double r) {
        if (std::isinf(r)) return 0.0;
        return regularized_upper_gamma(0.5 * n, r * r / (2.0 * sigma * sigma));
    };
    // the chi mass sits in a band of width ~sigma around sigma*sqrt(n)
    const double chi_mean = sigma * std::sqrt(static_cast<double>(n));
    family.quadrature_hints = {std::max(0.0, chi_mean - 10.0 * sigma),
                               chi_mean + 10.0 * sigma};
    const QuadratureSpec eff = anchored(spec, union_bound(w, ch));
    validate_density(family, 1e-8, eff);

    BoundResult result = (form == BoundForm::min_form)
                             ? min_form_bound(family, eff)
                             : evaluate_at(family, optimal_parameter(family),
                                           eff);
    return finish(std::move(result), "sb_min_form", "sb_two_term", form);
}

double tb_pairwise(double z, int d, int n, double sigma) {
    if (d < 1 || d >= n) throw std::domain_error("tb_pairwise: need 1 <= d < n");
    if (!(sigma > 0.0)) throw std::domain_error("tb_pairwise: sigma must be > 0");
    const double rn = std::sqrt(static_cast<double>(n));
    return q_function(std::sqrt(static_cast<double>(d)) * (rn - z) /
                      (sigma * std::sqrt(static_cast<double>(n - d))));
}

BoundResult tangential_bound(const WeightEnumerator& w,
                             const ChannelParams& ch, BoundForm form,
                             const QuadratureSpec& spec) {
    require_matching(w, ch);
    require_tb_family(w);
    const int n = ch.n;
    const double sigma = ch.sigma;
    const double rn = std::sqrt(static_cast<double>(n));

    GallagerFamily family;
    family.support_lo = -kInf;
    family.support_hi = kInf;
    family.monotone_flag = true;
    family.density = [sigma](double z) { return gaussian_pdf(z, sigma); };
    // A weight-n codeword would make the formula divide by zero; it enters
    // as the limiting step 0 / (1/2) around z = sqrt(n) instead.
    family.conditional_bound = [&w, n, sigma, rn](double z) {
        double total = 0.0;
        for (const auto& [d, a] : w.spectrum) {
            if (d == n)
                total += (z < rn) ? 0.0 : 0.5 * static_cast<double>(a);
            else
                total += static_cast<double>(a) * tb_pairwise(z, d, n, sigma);
        }
        return total;
    };
    family.tail_mass = [sigma](double z) {
        if (std::isinf(z)) return (z > 0) ? 0.0 : 1.0;
        return q_function(z / sigma);
    };
    family.quadrature_hints = {-10.0 * sigma, 10.0 * sigma};
    const QuadratureSpec eff = anchored(spec, union_bound(w, ch));
    validate_density(family, 1e-8, eff);

    BoundResult result = (form == BoundForm::min_form)
                             ? min_form_bound(family, eff)
                             : evaluate_at(family, optimal_parameter(family),
                                           eff);
    return finish(std::move(result), "tb_min_form", "tb_two_term", form);
}

namespace {

// Conditional union bound of the inner (n-1)-dimensional sphere bound,
// independent of the noise level. Only weights with d <= r^2 n / (r^2 + n)
// contribute; that membership is equivalent to r > sqrt(nd/(n-d)).
double tsb_inner_union(double r, const WeightEnumerator& w, int n) {
    double total = 0.0;
    for (const auto& [d, a] : w.spectrum) {
        if (d >= n) continue;
        const double threshold =
            std::sqrt(static_cast<double>(n) * d / static_cast<double>(n - d));
        if (r > threshold)
            total += static_cast<double>(a) *
                     cap_fraction(n - 1, std::acos(threshold / r));
    }
    return total;
}

}  // namespace

double tsb_inner_radius(const WeightEnumerator& w, int n) {
    if (n < 3) throw std::invalid_argument("tsb_inner_radius: n must be >= 3");
    if (w.spectrum.empty() || w.d_min() >= n)
        throw std::invalid_argument("tsb_inner_radius: need d_min < n");

    const int dmin = w.d_min();
    const double lo =
        std::sqrt(static_cast<double>(n) * dmin / static_cast<double>(n - dmin));
    auto f = [&w, n](double r) { return tsb_inner_union(r, w, n); };

    double hi = 2.0 * lo;
    while (f(hi) < 1.0) {
        hi *= 2.0;
        if (hi > 1e12) return kInf;  // sup case: the inner bound never clips
    }
    return bisect_increasing(f, 1.0, lo, hi, 1e-12).root;
}

double tsb_conditional_bound(double z, double r1, const WeightEnumerator& w,
                             const ChannelParams& ch,
                             const QuadratureSpec& spec) {
    const int n = ch.n;
    const double rn = std::sqrt(static_cast<double>(n));
    if (z >= rn) return 1.0;  // Case 1: the trivial bound

    // Case 2: conditional system with scaled noise sigma_tilde.
    const double st = rn * ch.sigma / (rn - z);
    auto integrand = [&w, n, st](double r) {
        return tsb_inner_union(r, w, n) * chi_pdf(r, n - 1, st);
    };
    const double chi_mean = st * std::sqrt(static_cast<double>(n - 1));
    const std::vector<double> cuts{std::max(0.0, chi_mean - 10.0 * st),
                                   chi_mean + 10.0 * st};
    IntegrationResult inside = integrate_split(integrand, 0.0, r1, cuts, spec);
    if (!inside.converged)
        throw NonConvergenceError("tsb_conditional_bound: quadrature stalled");
    double tail = 0.0;
    if (!std::isinf(r1))
        tail = regularized_upper_gamma(0.5 * (n - 1),
                                       r1 * r1 / (2.0 * st * st));
    // < 1 for every z < sqrt(n); quadrature round-off may poke above by an
    // ulp near z ~ sqrt(n), where Case 1's value is the valid cap.
    return std::min(inside.value + tail, 1.0);
}

BoundResult tangential_sphere_bound(const WeightEnumerator& w,
                                    const ChannelParams& ch,
                                    const QuadratureSpec& spec) {
    require_matching(w, ch);
    require_tb_family(w);
    const int n = ch.n;
    if (n < 3)
        throw std::invalid_argument("tangential_sphere_bound: n must be >= 3");
    const double sigma = ch.sigma;
    const double rn = std::sqrt(static_cast<double>(n));

    const double r1 = tsb_inner_radius(w, n);

    const QuadratureSpec eff = anchored(spec, union_bound(w, ch));
    QuadratureSpec inner = eff;  // nested integral: 10x tighter
    inner.relative_tolerance = eff.relative_tolerance / 10.0;
    inner.absolute_tolerance = eff.absolute_tolerance / 10.0;

    GallagerFamily family;
    // density mass below -12 sigma is < Q(12) ~ 2e-33: inside the error
    // budget, and it keeps the outer quadrature on a finite interval.
    family.support_lo = -12.0 * sigma;
    family.support_hi = kInf;
    family.monotone_flag = true;
    family.density = [sigma](double z) { return gaussian_pdf(z, sigma); };
    family.conditional_bound = [&w, &ch, r1, inner](double z) {
        return tsb_conditional_bound(z, r1, w, ch, inner);
    };
    family.tail_mass = [sigma](double z) {
        if (std::isinf(z)) return (z > 0) ? 0.0 : 1.0;
        return q_function(z / sigma);
    };
    family.quadrature_hints = {-10.0 * sigma, 10.0 * sigma};
    validate_density(family, 1e-8, eff);

    // the optimal half-space parameter is pinned at sqrt(n): the
    // conditional bound is < 1 strictly below it and 1 at and above it
    BoundResult result = evaluate_at(family, rn, eff);
    result.method_tag = "tsb";
    return result;
}

}  // namespace gfbt
