#include "cipc/channel_mc.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cipc/fbl.hpp"

namespace cipc {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 output function applied to equally spaced states: draw g of a
// run is mix(seed + (g+1)*golden), i.e. the g-th output of splitmix64
// started at `seed`. Pure in (seed, g), which is what makes the simulation
// independent of worker chunking.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Streaming mean/variance accumulator (Welford) with Chan's pairwise merge.
// Merging fixed-index blocks in index order keeps results bit-identical for
// any worker count; identical inputs keep m2 exactly zero.
struct Welford {
  long long n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double v) {
    ++n;
    double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  void merge(const Welford& o) {
    if (o.n == 0) return;
    if (n == 0) { *this = o; return; }
    double d = o.mean - mean;
    long long tot = n + o.n;
    mean += d * (static_cast<double>(o.n) / static_cast<double>(tot));
    m2 += o.m2 + d * d * (static_cast<double>(n) * static_cast<double>(o.n) /
                          static_cast<double>(tot));
    n = tot;
  }
};

struct BlockPartial {
  Welford loss;
  Welford tx_error;
};

constexpr long long kBlock = 16384;

}  // namespace

std::uint64_t TrialRng::next_bits() {
  ++index_;
  return mix64(seed_ + kGolden * index_);
}

double TrialRng::uniform() {
  return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
}

double TrialRng::uniform_open() {
  return static_cast<double>((next_bits() >> 11) + 1) * 0x1.0p-53;
}

ChannelDraw draw_channel(TrialRng& rng, int nt) {
  if (nt < 1) throw std::domain_error("draw_channel: nt must be >= 1");
  // 2*nt Box-Muller pairs: nt complex entries for h_u, nt for e, each CN(0,1).
  double x = 0.0;
  double dot_re = 0.0;
  double dot_im = 0.0;
  std::vector<double> h(2 * static_cast<std::size_t>(nt));
  for (int i = 0; i < nt; ++i) {
    double r = std::sqrt(-2.0 * std::log(rng.uniform_open()));
    double phase = kTwoPi * rng.uniform();
    double re = r * std::cos(phase) * 0.70710678118654752440;
    double im = r * std::sin(phase) * 0.70710678118654752440;
    h[2 * static_cast<std::size_t>(i)] = re;
    h[2 * static_cast<std::size_t>(i) + 1] = im;
    x += re * re + im * im;
  }
  for (int i = 0; i < nt; ++i) {
    double r = std::sqrt(-2.0 * std::log(rng.uniform_open()));
    double phase = kTwoPi * rng.uniform();
    double ere = r * std::cos(phase) * 0.70710678118654752440;
    double eim = r * std::sin(phase) * 0.70710678118654752440;
    double hre = h[2 * static_cast<std::size_t>(i)];
    double him = h[2 * static_cast<std::size_t>(i) + 1];
    // e_i * conj(h_i)
    dot_re += ere * hre + eim * him;
    dot_im += eim * hre - ere * him;
  }
  return {x, (dot_re * dot_re + dot_im * dot_im) / x};
}

double realized_sinr(const ChannelDraw& d, const SystemParams& p) {
  if (p.phi >= 1.0) return p.q / p.sigma2;
  return p.phi * p.q / ((1.0 - p.phi) * p.q * (d.y / d.x) + p.sigma2);
}

McEstimate simulate_packet_loss(const SystemParams& p, long long n_trials,
                                std::uint64_t seed, int n_threads) {
  p.validate();
  if (n_trials < 1) throw std::domain_error("simulate_packet_loss: n_trials must be >= 1");

  const double u = std::isinf(p.pmax) ? 0.0 : p.q / p.pmax;
  const long long n_blocks = (n_trials + kBlock - 1) / kBlock;
  std::vector<BlockPartial> partials(static_cast<std::size_t>(n_blocks));

  auto run_block = [&](long long b) {
    BlockPartial part;
    const long long begin = b * kBlock;
    const long long end = std::min(n_trials, begin + kBlock);
    for (long long t = begin; t < end; ++t) {
      TrialRng rng = TrialRng::for_trial(seed, static_cast<std::uint64_t>(t), p.nt);
      ChannelDraw d = draw_channel(rng, p.nt);
      if (d.x < u) {
        part.loss.add(1.0);
      } else {
        double err = decode_error_exact(realized_sinr(d, p), p.R, p.T);
        part.loss.add(err);
        part.tx_error.add(err);
      }
    }
    partials[static_cast<std::size_t>(b)] = part;
  };

  unsigned hw = std::thread::hardware_concurrency();
  int workers = n_threads > 0 ? n_threads : static_cast<int>(hw ? hw : 1);
  workers = static_cast<int>(std::min<long long>(workers, n_blocks));
  if (workers <= 1) {
    for (long long b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (long long b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
          run_block(b);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  Welford loss;
  Welford tx_error;
  for (const auto& part : partials) {
    loss.merge(part.loss);
    tx_error.merge(part.tx_error);
  }

  McEstimate est;
  est.n_trials = n_trials;
  est.seed = seed;
  est.p_loss_hat = loss.mean;
  est.p_t_hat = static_cast<double>(tx_error.n) / static_cast<double>(n_trials);
  if (tx_error.n > 0) est.eps_cond_hat = tx_error.mean;
  est.std_error = loss.n > 1
                      ? std::sqrt(loss.m2 / static_cast<double>(loss.n - 1) /
                                  static_cast<double>(loss.n))
                      : 0.0;
  return est;
}

}  // namespace cipc
