#include "gfbt/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace gfbt {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK dqk15).
// Kronrod nodes; the even-indexed ones are the embedded Gauss-7 nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double value = 0.0;
    double error = 0.0;
};

// One GK15 application on [a, b]; error estimate per QUADPACK's scaling.
PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    double result_kronrod = 0.0;
    double result_gauss = 0.0;
    double resabs = 0.0;

    const double fc = f(center);
    fv[7] = fc;
    result_kronrod = kWgk[7] * fc;
    result_gauss = kWg[3] * fc;
    resabs = std::fabs(result_kronrod);

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        result_kronrod += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
    }

    const double mean = 0.5 * result_kronrod;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] *
                  (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));

    const double value = result_kronrod * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);

    double err = std::fabs((result_kronrod - result_gauss) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double underflow = std::numeric_limits<double>::min();
    if (resabs > underflow / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);

    return {value, err};
}

struct Segment {
    double a, b;
    double value, error;
};

struct SegmentWorse {
    bool operator()(const Segment& x, const Segment& y) const {
        return x.error < y.error;
    }
};

IntegrationResult adapt_finite(const std::function<double(double)>& f,
                               double lo, double hi,
                               const QuadratureSpec& spec) {
    IntegrationResult out;
    if (lo == hi) {
        out.converged = true;
        return out;
    }

    std::priority_queue<Segment, std::vector<Segment>, SegmentWorse> heap;
    PanelEstimate first = gk15(f, lo, hi);
    heap.push({lo, hi, first.value, first.error});
    double total = first.value;
    double errsum = first.error;
    int used = 1;

    auto tolerance = [&] {
        return std::max(spec.absolute_tolerance,
                        spec.relative_tolerance * std::fabs(total));
    };

    while (errsum > tolerance() && used < spec.max_subdivisions) {
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            // interval no longer splittable in double precision
            heap.push(worst);
            break;
        }
        PanelEstimate left = gk15(f, worst.a, mid);
        PanelEstimate right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        errsum += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
        ++used;
    }

    out.value = total;
    out.error_estimate = errsum;
    out.subdivisions = used;
    out.converged = errsum <= tolerance();
    return out;
}

}  // namespace

IntegrationResult integrate(const std::function<double(double)>& f,
                            double lo, double hi,
                            const QuadratureSpec& spec) {
    if (!(spec.relative_tolerance > 0.0) || !(spec.absolute_tolerance > 0.0) ||
        spec.max_subdivisions < 1)
        throw std::invalid_argument("integrate: bad QuadratureSpec");
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
        throw std::invalid_argument("integrate: bad interval");

    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);

    if (!lo_inf && !hi_inf) return adapt_finite(f, lo, hi, spec);

    if (lo_inf && hi_inf) {
        // split at 0; halve the budget per side
        QuadratureSpec half = spec;
        half.max_subdivisions = std::max(1, spec.max_subdivisions / 2);
        IntegrationResult neg = integrate(f, lo, 0.0, half);
        IntegrationResult pos = integrate(f, 0.0, hi, half);
        IntegrationResult out;
        out.value = neg.value + pos.value;
        out.error_estimate = neg.error_estimate + pos.error_estimate;
        out.subdivisions = neg.subdivisions + pos.subdivisions;
        out.converged = neg.converged && pos.converged;
        return out;
    }

    if (hi_inf) {
        // r = lo + u/(1-u), u in [0,1)
        auto mapped = [&f, lo](double u) {
            const double om = 1.0 - u;
            const double r = lo + u / om;
            return f(r) / (om * om);
        };
        return adapt_finite(mapped, 0.0, 1.0, spec);
    }

    // lo == -inf: r = hi - u/(1-u), mirrored
    auto mapped = [&f, hi](double u) {
        const double om = 1.0 - u;
        const double r = hi - u / om;
        return f(r) / (om * om);
    };
    return adapt_finite(mapped, 0.0, 1.0, spec);
}

IntegrationResult integrate_split(const std::function<double(double)>& f,
                                  double lo, double hi,
                                  const std::vector<double>& breakpoints,
                                  const QuadratureSpec& spec) {
    std::vector<double> cuts;
    for (const double b : breakpoints)
        if (b > lo && b < hi && std::isfinite(b)) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.empty()) return integrate(f, lo, hi, spec);

    QuadratureSpec piece = spec;
    piece.max_subdivisions =
        std::max<int>(1, spec.max_subdivisions / (static_cast<int>(cuts.size()) + 1));

    IntegrationResult out;
    out.converged = true;
    double from = lo;
    for (std::size_t i = 0; i <= cuts.size(); ++i) {
        const double to = (i < cuts.size()) ? cuts[i] : hi;
        const IntegrationResult part = integrate(f, from, to, piece);
        out.value += part.value;
        out.error_estimate += part.error_estimate;
        out.subdivisions += part.subdivisions;
        out.converged = out.converged && part.converged;
        from = to;
    }
    return out;
}

BisectResult bisect_increasing(const std::function<double(double)>& f,
                               double target, double lo, double hi,
                               double tol) {
    if (!(lo <= hi)) throw std::invalid_argument("bisect_increasing: lo > hi");
    if (!(tol > 0.0)) throw std::invalid_argument("bisect_increasing: tol <= 0");

    const double flo = f(lo);
    if (flo > target)
        throw std::invalid_argument("bisect_increasing: f(lo) > target");
    if (flo == target) return {lo, false};

    const double fhi = f(hi);
    if (fhi < target) return {hi, true};

    double a = lo, b = hi;
    // ~60 iterations reach double-precision resolution on any sane bracket
    for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        if (f(mid) < target)
            a = mid;
        else
            b = mid;
    }
    return {0.5 * (a + b), false};
}

}  // namespace gfbt
