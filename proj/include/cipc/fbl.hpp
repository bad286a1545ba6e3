#ifndef CIPC_FBL_HPP
#define CIPC_FBL_HPP

namespace cipc {

// Constants of the piecewise-linear approximation to the finite-blocklength
// decoding error curve: slope delta around the half-error SINR gamma0, with
// knees at alpha and beta. alpha is clamped at 0 because SINR support is
// [0, inf); the unclamped value can be negative for small R*sqrt(T).
struct LinearApprox {
  double delta;
  double gamma0;
  double alpha;
  double beta;
};

// A (rate, blocklength) operating point together with the channel dispersion
// at a given SINR. dispersion lies in [0, (log2 e)^2).
struct FblPoint {
  double rate;
  double blocklength;
  double dispersion;
};

// delta = sqrt(T) / (2*pi*sqrt(2^(2R)-1)), gamma0 = 2^R - 1,
// alpha = max(0, gamma0 - 1/(2*delta)), beta = gamma0 + 1/(2*delta).
// Requires rate > 0 and blocklength >= 1.
LinearApprox linear_approx_params(double rate, double blocklength);

// Piecewise-linear error approximation: 1 below alpha, 0 above beta,
// 1/2 - delta*(gamma - gamma0) in between.
double omega(double gamma, const LinearApprox& la);

// Argument of the Gaussian Q-function in the normal approximation:
//   A(gamma) = sqrt(T) * (ln(1+gamma) - R*ln2) / sqrt(1 - (1+gamma)^-2)
// evaluated via the algebraically equivalent form
//   sqrt(T) * (log1p(gamma) - R*ln2) * (1+gamma) / sqrt(gamma*(gamma+2))
// which is stable near gamma = 0 (where A -> -inf).
double normal_approx_arg(double gamma, double rate, double blocklength);

// dA/dgamma = sqrt(T) * (1 - (ln(1+gamma)-R*ln2)/((1+gamma)^2-1))
//             / sqrt((1+gamma)^2-1)
double normal_approx_arg_dgamma(double gamma, double rate, double blocklength);

// Channel dispersion V(gamma) = (log2 e)^2 * (1 - (1+gamma)^-2).
double channel_dispersion(double gamma);

FblPoint make_fbl_point(double rate, double blocklength, double gamma);

// Exact normal-approximation decoding error Q(A(gamma)); 1 at gamma = 0.
// Requires gamma >= 0.
double decode_error_exact(double gamma, double rate, double blocklength);

}  // namespace cipc

#endif  // CIPC_FBL_HPP
