#ifndef CIPC_ANALYTIC_HPP
#define CIPC_ANALYTIC_HPP

#include <optional>
#include <string>

#include "cipc/specfun.hpp"

namespace cipc {

// Full scenario parameterization. Powers are linear and normalized to the
// noise power scale; pmax may be +inf (conventional scheme, no truncation).
struct SystemParams {
  int nt = 4;            // transmit antennas, >= 1
  double phi = 0.9;      // channel reciprocity coefficient, in [0, 1]
  double T = 100;        // blocklength in channel uses, >= 1
  double R = 0.8;        // rate in bits per channel use, > 0
  double pmax = 0;       // maximum transmit power, > 0 or +inf
  double sigma2 = 1.0;   // noise variance, > 0
  double q = 0;          // agreed received-signal power, > 0

  // Throws std::domain_error naming the offending field.
  void validate() const;
};

// (transmission probability, conditional decoding error, packet loss) with
// p_loss = eps_cond * p_t + 1 - p_t.
struct LossBreakdown {
  double p_t;
  double eps_cond;
  double p_loss;
};

enum class Scheme { truncated, conventional, perfect };

// Scheme selected by the routing rules: phi >= 1 - 1e-9 -> perfect,
// pmax = inf -> conventional, otherwise truncated.
Scheme scheme_for(const SystemParams& p);
std::string to_string(Scheme s);

// Supremum of the per-realization SINR: phi*Q/sigma2.
double sinr_ceiling(const SystemParams& p);

// xi(gamma) = (Q*phi - gamma*sigma2) / (Q*gamma*(1-phi)): the fading ratio
// Y/X at which the realized SINR equals gamma. Positive iff gamma is below
// the SINR ceiling. Requires 0 < phi < 1 and gamma > 0.
double xi(double gamma, const SystemParams& p);

// Conditional CDF of the SINR given that transmission occurs:
//   gamma_up(Nt, u*(1+xi)) / (gamma_up(Nt, u) * (1+xi)^Nt),  u = Q/Pmax,
// clamped to 0 for gamma <= 0 and to 1 at or above the SINR ceiling.
// For pmax = inf this reduces to (1+xi)^-Nt. Requires 0 < phi < 1.
double cond_sinr_cdf(double gamma, const SystemParams& p);

// p_t(Q) = 1 - gamma_lower(Nt, Q/Pmax)/Gamma(Nt); 1 when pmax = inf.
double transmission_prob(const SystemParams& p);

// Linearized conditional decoding error:
//   (1/2 - d*g0 + d*a) F(a) + (1/2 + d*g0 - d*b) F(b) + d * int_a^b F,
// with the integral split at the SINR ceiling where the CDF clamps to 1.
// Requires 0 < phi < 1. Result clamped to [0,1].
double cond_decoding_error(const SystemParams& p, const QuadSpec& spec = {});

// Conditional decoding error with the exact error kernel instead of the
// linearization: E[Q(A(gamma))] evaluated by parts as
//   Q(A(ceiling)) + int_0^ceiling npdf(A(g)) A'(g) F(g) dg.
// Used to audit the quality of the linearized expression.
double cond_decoding_error_exact(const SystemParams& p, const QuadSpec& spec = {});

// Packet loss of the truncated scheme, 0 < phi < 1 (phi >= 1 - 1e-9 routes
// to packet_loss_perfect).
LossBreakdown packet_loss_truncated(const SystemParams& p, const QuadSpec& spec = {});

// Packet loss of the conventional scheme (pmax treated as inf, p_t = 1),
// evaluated on the quadrature path. Requires 0 < phi < 1.
double packet_loss_conventional(const SystemParams& p, const QuadSpec& spec = {});

// Both evaluation routes for the conventional scheme's integral term: the
// quadrature of (1+xi)^-Nt over the linearization window (authoritative) and
// the incomplete-beta closed form via the partial-fraction constants
// m1 = Q(1-phi)/(Q(1-phi)-sigma2), m2 = Q*phi/(Q(1-phi)-sigma2). The beta
// path is absent when numerically invalid (window clipped by the ceiling,
// or Q(1-phi) too close to sigma2).
struct ConventionalDiagnostics {
  double p_loss_quad;
  std::optional<double> p_loss_beta;
  double m1 = 0;
  double m2 = 0;
};
ConventionalDiagnostics packet_loss_conventional_diagnostics(const SystemParams& p,
                                                             const QuadSpec& spec = {});

// Perfect reciprocity (phi = 1): the SINR degenerates to Q/sigma2, so the
// conditional error is deterministic and the breakdown is closed-form.
LossBreakdown packet_loss_perfect(const SystemParams& p);

// Routed evaluation per scheme_for(p). phi <= 1e-12 yields the degenerate
// breakdown {p_t, 1, 1} (zero useful power, every transmitted packet lost).
LossBreakdown packet_loss(const SystemParams& p, const QuadSpec& spec = {});

// Upper end of the useful Q range: Pmax*(Nt-1). Throws std::domain_error for
// nt = 1, where no such bound exists and searches fall back to Q_up alone.
double q_hard_bound(const SystemParams& p);

// Unique root of gamma_lower(Nt, Q/Pmax)/Gamma(Nt) = target (the left side
// is strictly increasing in Q). Requires 0 < target < 1; +inf when pmax is.
double q_up_from_target(const SystemParams& p, double target);

// Lower edge Q0 = sigma2 * gamma_a of the convexity region of the perfect-
// reciprocity packet loss, with gamma_a solving
//   ln(1+gamma_a) / ((1+gamma_a)^2 - 1) = 1/3.
double q0_convexity(double sigma2);

}  // namespace cipc

#endif  // CIPC_ANALYTIC_HPP
