#include "cipc/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cipc/errors.hpp"

namespace cipc {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

// log of the common prefactor exp(-x) * x^s / Gamma(s).
double log_prefactor(double s, double x) {
  return -x + s * std::log(x) - std::lgamma(s);
}

// Regularized lower series, valid for x < s+1. Returns log(P).
double log_gamma_p_series(double s, double x) {
  double ap = s;
  double sum = 1.0 / s;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * std::numeric_limits<double>::epsilon()) {
      return std::log(sum) + log_prefactor(s, x);
    }
  }
  throw ConvergenceError("incomplete gamma series did not converge",
                         std::exp(std::log(sum) + log_prefactor(s, x)));
}

// Regularized upper continued fraction (modified Lentz), valid for
// x >= s+1. Returns log(Q).
double log_gamma_q_cf(double s, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - s;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) {
      return std::log(h) + log_prefactor(s, x);
    }
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge",
                         std::exp(std::log(h) + log_prefactor(s, x)));
}

void check_gamma_args(double s, double x) {
  if (!(s > 0) || std::isnan(s)) throw std::domain_error("incomplete gamma: s must be > 0");
  if (std::isnan(x) || x < 0) throw std::domain_error("incomplete gamma: x must be >= 0");
}

struct SimpsonState {
  const std::function<double(double)>* f;
  QuadSpec spec;
  bool converged = true;
};

double eval(const SimpsonState& st, double t) {
  double v = (*st.f)(t);
  if (std::isnan(v)) throw std::domain_error("adaptive_quad: integrand is NaN");
  return v;
}

// Recursive bisection with the classic S/15 Richardson error estimate.
double simpson_rec(SimpsonState& st, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = eval(st, lm);
  double frm = eval(st, rm);
  double h = b - a;
  double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  double err = left + right - whole;
  if (std::fabs(err) <= 15.0 * tol || !std::isfinite(whole)) {
    return left + right + err / 15.0;
  }
  if (depth >= st.spec.max_depth) {
    st.converged = false;
    return left + right + err / 15.0;
  }
  double half_tol = 0.5 * tol;
  return simpson_rec(st, a, m, fa, flm, fm, left, half_tol, depth + 1) +
         simpson_rec(st, m, b, fm, frm, fb, right, half_tol, depth + 1);
}

}  // namespace

double gaussian_q(double x) {
  if (std::isnan(x)) throw std::domain_error("gaussian_q: input is NaN");
  if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
  return 0.5 * std::erfc(x / kSqrt2);
}

double gamma_p(double s, double x) {
  check_gamma_args(s, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < s + 1.0) return std::exp(log_gamma_p_series(s, x));
  return -std::expm1(log_gamma_q_cf(s, x));
}

double gamma_q(double s, double x) {
  check_gamma_args(s, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < s + 1.0) return -std::expm1(log_gamma_p_series(s, x));
  return std::exp(log_gamma_q_cf(s, x));
}

double log_gamma_q(double s, double x) {
  check_gamma_args(s, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
  if (x < s + 1.0) return std::log1p(-std::exp(log_gamma_p_series(s, x)));
  return log_gamma_q_cf(s, x);
}

double gamma_lower(double s, double x) {
  check_gamma_args(s, x);
  double g = std::tgamma(s);
  if (std::isfinite(g)) return gamma_p(s, x) * g;
  if (x == 0.0) return 0.0;
  return std::exp(std::log(gamma_p(s, x)) + std::lgamma(s));
}

double gamma_upper(double s, double x) {
  check_gamma_args(s, x);
  double g = std::tgamma(s);
  if (std::isfinite(g)) return gamma_q(s, x) * g;
  return std::exp(log_gamma_q(s, x) + std::lgamma(s));
}

double incomplete_beta(double x, double a, double b, const QuadSpec& spec) {
  if (std::isnan(x) || std::isnan(a) || std::isnan(b)) {
    throw std::domain_error("incomplete_beta: NaN argument");
  }
  if (x == 0.0) return 0.0;
  if (x < 0.0) {
    double k = std::round(a - 1.0);
    if (!(k >= 0.0) || std::fabs(a - 1.0 - k) > 0.0) {
      throw std::domain_error(
          "incomplete_beta: negative x requires a-1 to be a nonnegative integer");
    }
  } else {
    if (!(a >= 1.0)) {
      throw std::domain_error("incomplete_beta: a must be >= 1 for x > 0");
    }
    if (x > 1.0 || (x == 1.0 && b <= 0.0)) {
      throw std::domain_error(
          "incomplete_beta: non-removable singularity at t = 1 inside the path");
    }
  }
  auto integrand = [a, b](double t) {
    return std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 1.0);
  };
  if (x > 0.0) return adaptive_quad(integrand, 0.0, x, spec);
  return -adaptive_quad(integrand, x, 0.0, spec);
}

double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     const QuadSpec& spec) {
  if (std::isnan(a) || std::isnan(b)) throw std::domain_error("adaptive_quad: NaN bound");
  if (a > b) throw std::domain_error("adaptive_quad: requires a <= b");
  if (a == b) return 0.0;
  if (spec.max_depth < 1 || !(spec.abs_tol > 0) || !(spec.rel_tol > 0)) {
    throw std::domain_error("adaptive_quad: invalid QuadSpec");
  }
  SimpsonState st{&f, spec, true};
  double m = 0.5 * (a + b);
  double fa = eval(st, a);
  double fm = eval(st, m);
  double fb = eval(st, b);
  double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(whole));
  double result = simpson_rec(st, a, b, fa, fm, fb, whole, tol, 0);
  if (!st.converged) {
    throw ConvergenceError("adaptive_quad: max_depth exhausted", result);
  }
  return result;
}

}  // namespace cipc
