#ifndef GFBT_SPECIAL_FN_HPP
#define GFBT_SPECIAL_FN_HPP

namespace gfbt {

// Gaussian upper-tail probability Pr{N(0,1) > x}. Total on the extended
// reals; underflows to 0 for x beyond ~38 (use log_q_function there).
double q_function(double x);

// log Pr{N(0,1) > x}, accurate to >= 12 significant digits for x up to 40
// (Mills-ratio continued fraction in the far tail).
double log_q_function(double x);

// log Gamma(x) for x > 0 (Lanczos). Throws std::domain_error for x <= 0.
double log_gamma(double x);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double x, double a, double b);

// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x)/Gamma(s).
double regularized_upper_gamma(double s, double x);

// Fraction of the surface of the unit (n-1)-sphere lying in a cap of
// half-angle theta (theta in [0, pi], n >= 2). Evaluated through the
// regularized incomplete beta so it stays stable for n in the hundreds.
double cap_fraction(int n, double theta);

}  // namespace gfbt

#endif
