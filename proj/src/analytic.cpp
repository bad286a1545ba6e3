#include "cipc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cipc/fbl.hpp"
#include "cipc/specfun.hpp"

namespace cipc {

namespace {

constexpr double kPhiPerfect = 1.0 - 1e-9;  // at or above this, route to phi = 1
constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

double truncation_ratio(const SystemParams& p) {
  return std::isinf(p.pmax) ? 0.0 : p.q / p.pmax;
}

void require_imperfect_phi(const SystemParams& p, const char* who) {
  if (!(p.phi > 0.0) || !(p.phi < 1.0)) {
    throw std::domain_error(std::string(who) + ": requires 0 < phi < 1");
  }
}

// Weighted endpoint terms plus the integral of the conditional CDF over the
// linearization window [alpha, beta], splitting at the SINR ceiling where
// the CDF is the constant 1.
double linearized_error(const SystemParams& p, const QuadSpec& spec) {
  LinearApprox la = linear_approx_params(p.R, p.T);
  double ceiling = sinr_ceiling(p);
  double w_alpha = 0.5 - la.delta * (la.gamma0 - la.alpha);
  double w_beta = 0.5 - la.delta * (la.beta - la.gamma0);
  double f_alpha = cond_sinr_cdf(la.alpha, p);
  double f_beta = cond_sinr_cdf(la.beta, p);
  double integral = 0.0;
  double hi = std::min(la.beta, ceiling);
  if (hi > la.alpha) {
    integral += adaptive_quad([&p](double g) { return cond_sinr_cdf(g, p); },
                              la.alpha, hi, spec);
  }
  if (la.beta > ceiling) {
    integral += la.beta - std::max(la.alpha, ceiling);
  }
  return clamp01(w_alpha * f_alpha + w_beta * f_beta + la.delta * integral);
}

LossBreakdown assemble(double p_t, double eps_cond) {
  return {p_t, eps_cond, eps_cond * p_t + 1.0 - p_t};
}

}  // namespace

void SystemParams::validate() const {
  if (nt < 1) throw std::domain_error("nt: must be >= 1");
  if (std::isnan(phi) || phi < 0.0 || phi > 1.0) throw std::domain_error("phi: must be in [0, 1]");
  if (!(T >= 1.0)) throw std::domain_error("t: must be >= 1");
  if (!(R > 0.0)) throw std::domain_error("rate: must be > 0");
  if (!(pmax > 0.0)) throw std::domain_error("pmax: must be > 0 (inf allowed)");
  if (!(sigma2 > 0.0) || std::isinf(sigma2)) throw std::domain_error("sigma2: must be finite and > 0");
  if (!(q > 0.0) || std::isinf(q)) throw std::domain_error("q: must be finite and > 0");
}

Scheme scheme_for(const SystemParams& p) {
  if (p.phi >= kPhiPerfect) return Scheme::perfect;
  if (std::isinf(p.pmax)) return Scheme::conventional;
  return Scheme::truncated;
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::truncated: return "truncated";
    case Scheme::conventional: return "conventional";
    case Scheme::perfect: return "perfect";
  }
  return "?";
}

double sinr_ceiling(const SystemParams& p) { return p.phi * p.q / p.sigma2; }

double xi(double gamma, const SystemParams& p) {
  require_imperfect_phi(p, "xi");
  if (!(gamma > 0)) throw std::domain_error("xi: requires gamma > 0");
  return (p.q * p.phi - gamma * p.sigma2) / (p.q * gamma * (1.0 - p.phi));
}

double cond_sinr_cdf(double gamma, const SystemParams& p) {
  require_imperfect_phi(p, "cond_sinr_cdf");
  if (!(gamma > 0)) return 0.0;
  if (gamma >= sinr_ceiling(p)) return 1.0;
  double z = xi(gamma, p);
  double u = truncation_ratio(p);
  double s = static_cast<double>(p.nt);
  double log_f = -s * std::log1p(z);
  if (u > 0.0) {
    double arg = u * (1.0 + z);
    log_f += log_gamma_q(s, std::isfinite(arg) ? arg : kInf) - log_gamma_q(s, u);
  }
  return clamp01(std::exp(log_f));
}

double transmission_prob(const SystemParams& p) {
  double u = truncation_ratio(p);
  if (u == 0.0) return 1.0;
  return gamma_q(static_cast<double>(p.nt), u);
}

double cond_decoding_error(const SystemParams& p, const QuadSpec& spec) {
  require_imperfect_phi(p, "cond_decoding_error");
  return linearized_error(p, spec);
}

double cond_decoding_error_exact(const SystemParams& p, const QuadSpec& spec) {
  require_imperfect_phi(p, "cond_decoding_error_exact");
  double ceiling = sinr_ceiling(p);
  auto integrand = [&p](double g) {
    if (!(g > 0)) return 0.0;
    double a = normal_approx_arg(g, p.R, p.T);
    if (a < -38.0) return 0.0;  // normal pdf underflows; F is also ~0 there
    double pdf = std::exp(-0.5 * a * a) / std::sqrt(2.0 * 3.14159265358979323846);
    return pdf * normal_approx_arg_dgamma(g, p.R, p.T) * cond_sinr_cdf(g, p);
  };
  double tail = gaussian_q(normal_approx_arg(ceiling, p.R, p.T));
  return clamp01(tail + adaptive_quad(integrand, 0.0, ceiling, spec));
}

LossBreakdown packet_loss_truncated(const SystemParams& p, const QuadSpec& spec) {
  p.validate();
  if (p.phi >= kPhiPerfect) return packet_loss_perfect(p);
  return assemble(transmission_prob(p), cond_decoding_error(p, spec));
}

double packet_loss_conventional(const SystemParams& p, const QuadSpec& spec) {
  SystemParams pc = p;
  pc.pmax = kInf;
  pc.validate();
  require_imperfect_phi(pc, "packet_loss_conventional");
  return linearized_error(pc, spec);
}

ConventionalDiagnostics packet_loss_conventional_diagnostics(const SystemParams& p,
                                                             const QuadSpec& spec) {
  SystemParams pc = p;
  pc.pmax = kInf;
  pc.validate();
  require_imperfect_phi(pc, "packet_loss_conventional_diagnostics");

  ConventionalDiagnostics out;
  out.p_loss_quad = linearized_error(pc, spec);

  LinearApprox la = linear_approx_params(pc.R, pc.T);
  double ceiling = sinr_ceiling(pc);
  double denom = pc.q * (1.0 - pc.phi) - pc.sigma2;
  out.m1 = pc.q * (1.0 - pc.phi) / denom;
  out.m2 = pc.q * pc.phi / denom;
  bool valid = la.beta < ceiling &&
               std::fabs(denom) > 1e-9 * std::max(pc.q * (1.0 - pc.phi), pc.sigma2);
  if (!valid) return out;

  double s = static_cast<double>(pc.nt);
  auto cdf_inf = [&](double g) {
    return g <= 0.0 ? 0.0 : std::exp(-s * std::log1p(xi(g, pc)));
  };
  double w_alpha = 0.5 - la.delta * (la.gamma0 - la.alpha);
  double w_beta = 0.5 - la.delta * (la.beta - la.gamma0);
  double sign = (pc.nt % 2 == 0) ? 1.0 : -1.0;  // (-1)^(-Nt)
  double b_alpha = incomplete_beta(-la.alpha / out.m2, 1.0 + s, 1.0 - s, spec);
  double b_beta = incomplete_beta(-la.beta / out.m2, 1.0 + s, 1.0 - s, spec);
  double third = la.delta * std::pow(out.m1, s) * sign * out.m2 * (b_alpha - b_beta);
  out.p_loss_beta =
      clamp01(w_alpha * cdf_inf(la.alpha) + w_beta * cdf_inf(la.beta) + third);
  return out;
}

LossBreakdown packet_loss_perfect(const SystemParams& p) {
  p.validate();
  if (!(p.phi >= kPhiPerfect)) {
    throw std::domain_error("packet_loss_perfect: requires phi = 1");
  }
  double eps = decode_error_exact(p.q / p.sigma2, p.R, p.T);
  return assemble(transmission_prob(p), eps);
}

LossBreakdown packet_loss(const SystemParams& p, const QuadSpec& spec) {
  p.validate();
  if (p.phi >= kPhiPerfect) return packet_loss_perfect(p);
  if (p.phi <= 1e-12) {
    // No reciprocity: zero useful power, every transmitted packet is lost.
    return assemble(transmission_prob(p), 1.0);
  }
  return assemble(transmission_prob(p), cond_decoding_error(p, spec));
}

double q_hard_bound(const SystemParams& p) {
  if (p.nt <= 1) {
    throw std::domain_error("q_hard_bound: undefined for nt = 1");
  }
  return p.pmax * static_cast<double>(p.nt - 1);
}

double q_up_from_target(const SystemParams& p, double target) {
  if (!(target > 0.0) || !(target < 1.0)) {
    throw std::domain_error("q_up_from_target: target must be in (0, 1)");
  }
  if (std::isinf(p.pmax)) return kInf;
  double s = static_cast<double>(p.nt);
  double lo = 0.0;
  double hi = 1.0;
  while (gamma_p(s, hi) < target) hi *= 2.0;
  for (int i = 0; i < 200 && (hi - lo) > 1e-10 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    (gamma_p(s, mid) < target ? lo : hi) = mid;
  }
  return p.pmax * 0.5 * (lo + hi);
}

double q0_convexity(double sigma2) {
  if (!(sigma2 > 0)) throw std::domain_error("q0_convexity: sigma2 must be > 0");
  static const double gamma_a = [] {
    // ln(1+g)/((1+g)^2-1) falls from 1/2 at g=0+ toward 0, so the root of
    // ... = 1/3 is unique; bracket and bisect to full double precision.
    auto h = [](double g) { return std::log1p(g) / (g * (g + 2.0)) - 1.0 / 3.0; };
    double lo = 1e-9, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      (h(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return sigma2 * gamma_a;
}

}  // namespace cipc
