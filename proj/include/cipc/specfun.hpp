#ifndef CIPC_SPECFUN_HPP
#define CIPC_SPECFUN_HPP

#include <functional>

namespace cipc {

// Tolerances for the adaptive quadrature routines. An interval is accepted
// once its Richardson error estimate falls below max(abs_tol, rel_tol*|I|).
struct QuadSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_depth = 60;
};

// Gaussian Q-function: (1/sqrt(2*pi)) * integral_x^inf exp(-t^2/2) dt.
// Strictly decreasing, maps R onto (0,1); +/-inf give the limits 0 and 1.
// NaN input throws std::domain_error.
double gaussian_q(double x);

// Incomplete gamma functions, non-regularized:
//   gamma_lower(s,x) = integral_0^x exp(-t) t^(s-1) dt
//   gamma_upper(s,x) = integral_x^inf exp(-t) t^(s-1) dt
// so gamma_lower + gamma_upper = tgamma(s). Requires s > 0, x >= 0.
double gamma_lower(double s, double x);
double gamma_upper(double s, double x);

// Regularized versions: gamma_p = gamma_lower/Gamma(s), gamma_q = 1 - gamma_p.
double gamma_p(double s, double x);
double gamma_q(double s, double x);

// log(gamma_q(s,x)), evaluated in log space so ratios of far-tail values
// stay meaningful where gamma_q itself underflows.
double log_gamma_q(double s, double x);

// Incomplete beta integral B_x(a,b) = integral_0^x t^(a-1) (1-t)^(b-1) dt,
// evaluated by direct quadrature along the real segment from 0 to x.
// Supported domain: a >= 1 with 0 <= x <= 1 (x = 1 additionally needs b > 0),
// or x < 0 with a-1 a nonnegative integer (the segment then lies on the
// negative axis where t^(a-1) must be single-valued). Anything else throws
// std::domain_error.
double incomplete_beta(double x, double a, double b, const QuadSpec& spec = {});

// Adaptive Simpson quadrature of f over [a,b] (a <= b; a == b yields 0).
// Throws ConvergenceError carrying the best estimate when max_depth is
// exhausted on some subinterval.
double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     const QuadSpec& spec = {});

}  // namespace cipc

#endif  // CIPC_SPECFUN_HPP
