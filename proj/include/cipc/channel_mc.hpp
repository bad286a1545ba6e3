#ifndef CIPC_CHANNEL_MC_HPP
#define CIPC_CHANNEL_MC_HPP

#include <cstdint>
#include <optional>

#include "cipc/analytic.hpp"

namespace cipc {

// One Rayleigh realization reduced to its sufficient statistics:
//   x = |h_u|^2            (Gamma(Nt,1))
//   y = |e^T h_u^* / |h_u||^2   (Exp(1), independent of x)
struct ChannelDraw {
  double x;
  double y;
};

// Counter-based uniform stream: draw k of trial t is a pure function of
// (seed, t, k), so results are independent of how trials are chunked across
// workers. Uses the splitmix64 output function over equally spaced states.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t start_index)
      : seed_(seed), index_(start_index) {}

  // Stream positioned at the first draw of the given trial; each channel
  // draw consumes exactly 4*nt uniforms.
  static TrialRng for_trial(std::uint64_t seed, std::uint64_t trial, int nt) {
    return TrialRng(seed, trial * static_cast<std::uint64_t>(4 * nt));
  }

  double uniform();       // [0, 1)
  double uniform_open();  // (0, 1]

 private:
  std::uint64_t next_bits();
  std::uint64_t seed_;
  std::uint64_t index_;
};

// Draws h_u, e in C^nt with i.i.d. CN(0,1) entries (pairs of real normals of
// variance 1/2 via Box-Muller) and reduces them to (x, y).
ChannelDraw draw_channel(TrialRng& rng, int nt);

// phi*Q / ((1-phi)*Q*(y/x) + sigma2); exactly Q/sigma2 when phi = 1.
double realized_sinr(const ChannelDraw& d, const SystemParams& p);

struct McEstimate {
  double p_loss_hat = 0;
  double p_t_hat = 0;
  std::optional<double> eps_cond_hat;  // absent when no trial transmitted
  double std_error = 0;                // sample sd of the loss / sqrt(n)
  long long n_trials = 0;
  std::uint64_t seed = 0;
};

// Per trial: a suspension (x < Q/Pmax) contributes loss 1; otherwise the
// trial contributes decode_error_exact(realized_sinr) — the conditional-
// expectation estimator rather than a Bernoulli decode draw, so rare-event
// losses are resolvable at desk-scale trial counts. Identical
// (params, n_trials, seed) give bit-identical results for any n_threads.
McEstimate simulate_packet_loss(const SystemParams& p, long long n_trials,
                                std::uint64_t seed, int n_threads = 0);

}  // namespace cipc

#endif  // CIPC_CHANNEL_MC_HPP
