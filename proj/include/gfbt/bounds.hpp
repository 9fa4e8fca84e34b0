#ifndef GFBT_BOUNDS_HPP
#define GFBT_BOUNDS_HPP

#include "gfbt/gfbt_core.hpp"
#include "gfbt/linear_code.hpp"
#include "gfbt/numeric.hpp"

namespace gfbt {

// BPSK-AWGN channel with +/-1 symbols and noise variance sigma^2 per
// dimension. Eb/N0 (linear) = 1 / (2 * rate * sigma^2).
struct ChannelParams {
    double sigma = 1.0;
    int n = 1;
    double rate = 1.0;

    static ChannelParams from_sigma(double sigma, int n, double rate);
    static ChannelParams from_ebn0_db(double ebn0_db, int n, double rate);
    double ebn0_db() const;
};

enum class BoundForm {
    min_form,  // integral of min{f_u, 1} g (tightest, no monotonicity needed)
    two_term,  // two-term bound at the optimal parameter (cross-validation)
};

// Union bound: sum over d of A_d * Q(sqrt(d)/sigma). May exceed 1.
double union_bound(const WeightEnumerator& w, const ChannelParams& ch);

// Pairwise error probability conditional on the received point lying on the
// radius-r sphere: the cap-to-sphere surface ratio, 0 for r <= sqrt(d).
double sb_pairwise(double r, int d, int n);

// Sphere bound: chi-distributed radius, conditional union bound from
// sb_pairwise. The optimal radius solves f_u(r) = 1 and is SNR-independent.
BoundResult sphere_bound(const WeightEnumerator& w, const ChannelParams& ch,
                         BoundForm form = BoundForm::min_form,
                         const QuadratureSpec& spec = {});

// Pairwise error probability conditional on radial noise component z:
// Q(sqrt(d) (sqrt(n) - z) / (sigma sqrt(n - d))). Requires d < n.
double tb_pairwise(double z, int d, int n, double sigma);

// Tangential bound: Gaussian radial component, conditional union bound from
// tb_pairwise. The optimal z* depends on sigma and is recomputed per SNR.
BoundResult tangential_bound(const WeightEnumerator& w,
                             const ChannelParams& ch,
                             BoundForm form = BoundForm::min_form,
                             const QuadratureSpec& spec = {});

// Optimal radius of the (n-1)-dimensional conditional sphere bound inside
// the hyperplane; SNR-independent. Returns +inf when the conditional union
// bound never reaches 1 (the inner bound then never clips).
double tsb_inner_radius(const WeightEnumerator& w, int n);

// Conditional sphere bound given radial component z: exactly 1 for
// z >= sqrt(n); otherwise the two-term inner bound with the scaled noise
// sigma_tilde = sqrt(n) sigma / (sqrt(n) - z).
double tsb_conditional_bound(double z, double r1, const WeightEnumerator& w,
                             const ChannelParams& ch,
                             const QuadratureSpec& spec = {});

// Tangential-sphere bound: outer Gaussian integral of the conditional
// sphere bound up to z = sqrt(n), plus the half-cone tail Q(sqrt(n)/sigma).
BoundResult tangential_sphere_bound(const WeightEnumerator& w,
                                    const ChannelParams& ch,
                                    const QuadratureSpec& spec = {});

}  // namespace gfbt

#endif
