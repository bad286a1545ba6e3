#include "cipc/fbl.hpp"

#include <cmath>
#include <stdexcept>

#include "cipc/specfun.hpp"

namespace cipc {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kLog2e = 1.4426950408889634074;
}  // namespace

LinearApprox linear_approx_params(double rate, double blocklength) {
  if (!(rate > 0)) throw std::domain_error("linear_approx_params: rate must be > 0");
  if (!(blocklength >= 1)) {
    throw std::domain_error("linear_approx_params: blocklength must be >= 1");
  }
  double delta = std::sqrt(blocklength) / (2.0 * kPi * std::sqrt(std::exp2(2.0 * rate) - 1.0));
  double gamma0 = std::exp2(rate) - 1.0;
  double half_width = 1.0 / (2.0 * delta);
  return {delta, gamma0, std::max(0.0, gamma0 - half_width), gamma0 + half_width};
}

double omega(double gamma, const LinearApprox& la) {
  if (gamma <= la.alpha) return 1.0;
  if (gamma >= la.beta) return 0.0;
  return 0.5 - la.delta * (gamma - la.gamma0);
}

double normal_approx_arg(double gamma, double rate, double blocklength) {
  return std::sqrt(blocklength) * (std::log1p(gamma) - rate * kLn2) * (1.0 + gamma) /
         std::sqrt(gamma * (gamma + 2.0));
}

double normal_approx_arg_dgamma(double gamma, double rate, double blocklength) {
  double u2m1 = gamma * (gamma + 2.0);  // (1+gamma)^2 - 1
  return std::sqrt(blocklength) * (1.0 - (std::log1p(gamma) - rate * kLn2) / u2m1) /
         std::sqrt(u2m1);
}

double channel_dispersion(double gamma) {
  double om = 1.0 + gamma;
  return kLog2e * kLog2e * gamma * (gamma + 2.0) / (om * om);
}

FblPoint make_fbl_point(double rate, double blocklength, double gamma) {
  if (!(rate > 0)) throw std::domain_error("make_fbl_point: rate must be > 0");
  if (!(blocklength >= 1)) throw std::domain_error("make_fbl_point: blocklength must be >= 1");
  if (!(gamma >= 0)) throw std::domain_error("make_fbl_point: gamma must be >= 0");
  return {rate, blocklength, channel_dispersion(gamma)};
}

double decode_error_exact(double gamma, double rate, double blocklength) {
  if (!(gamma >= 0)) throw std::domain_error("decode_error_exact: gamma must be >= 0");
  if (gamma == 0.0) return 1.0;
  return gaussian_q(normal_approx_arg(gamma, rate, blocklength));
}

}  // namespace cipc
