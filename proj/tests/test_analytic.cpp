#include "cipc/analytic.hpp"

#include <cmath>
#include <limits>

#include "cipc/fbl.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cipc;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

SystemParams fig2_params(double q) {
  SystemParams p;
  p.nt = 4;
  p.phi = 0.9;
  p.T = 100;
  p.R = 0.8;
  p.pmax = std::pow(10.0, 2.3);  // 23 dBm
  p.sigma2 = 1.0;
  p.q = q;
  return p;
}

}  // namespace

TEST_CASE("sinr_ceiling") {
  SystemParams p = fig2_params(5.0);
  p.phi = 1.0;
  CHECK(sinr_ceiling(p) == 5.0);
  p.phi = 0.0;
  CHECK(sinr_ceiling(p) == 0.0);
  p.phi = 0.9;
  p.q = 10.0;
  CHECK(sinr_ceiling(p) == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("xi") {
  SystemParams p = fig2_params(10.0);
  CHECK(xi(sinr_ceiling(p), p) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(xi(1.0, p) == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(xi(1e-280, p) > 1e250);
  SystemParams bad = p;
  bad.phi = 1.0;
  CHECK_THROWS_AS(xi(1.0, bad), std::domain_error);
  bad.phi = 0.0;
  CHECK_THROWS_AS(xi(1.0, bad), std::domain_error);
  CHECK_THROWS_AS(xi(0.0, p), std::domain_error);
}

TEST_CASE("cond_sinr_cdf clamps and monotonicity") {
  SystemParams p = fig2_params(10.0);
  double c = sinr_ceiling(p);
  CHECK(cond_sinr_cdf(-1.0, p) == 0.0);
  CHECK(cond_sinr_cdf(0.0, p) == 0.0);
  CHECK(cond_sinr_cdf(c, p) == 1.0);
  CHECK(cond_sinr_cdf(c + 5.0, p) == 1.0);
  double prev = -1.0;
  for (double g = c / 64.0; g < c; g += c / 64.0) {
    double v = cond_sinr_cdf(g, p);
    CHECK(v >= prev);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
  // pmax = inf reduction: (1+xi)^-Nt
  SystemParams pc = p;
  pc.pmax = kInf;
  double g = 2.0;
  CHECK(cond_sinr_cdf(g, pc) ==
        doctest::Approx(std::pow(1.0 + xi(g, pc), -4.0)).epsilon(1e-12));
  // truncation shifts the conditional SINR law upward
  CHECK(cond_sinr_cdf(g, p) <= cond_sinr_cdf(g, pc));
}

TEST_CASE("transmission_prob") {
  SystemParams p = fig2_params(1e-12);
  CHECK(transmission_prob(p) == doctest::Approx(1.0).epsilon(1e-12));

  p.q = p.pmax * 3.0;  // Q = Pmax*(Nt-1), Nt = 4
  double expect = 1.0 - oracle::gamma_p_integer(4, 3.0);
  CHECK(transmission_prob(p) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(std::fabs(transmission_prob(p) - 0.6472318888) < 1e-9);

  p.pmax = kInf;
  CHECK(transmission_prob(p) == 1.0);

  // strictly decreasing in Q, strictly increasing in Pmax
  SystemParams a = fig2_params(1.0);
  double prev = 2.0;
  for (double q = 10.0; q <= 600.0; q += 40.0) {
    a.q = q;
    double v = transmission_prob(a);
    CHECK(v < prev);
    prev = v;
  }
  a.q = 100.0;
  prev = 0.0;
  for (double pm = 20.0; pm <= 400.0; pm *= 1.5) {
    a.pmax = pm;
    double v = transmission_prob(a);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("cond_decoding_error degenerate regimes") {
  // ceiling below alpha: the CDF is 1 across the whole window
  SystemParams p = fig2_params(0.3);  // ceiling = 0.27 < alpha = 0.293
  CHECK(cond_decoding_error(p) == doctest::Approx(1.0).epsilon(1e-12));

  // all SINR mass far above beta
  SystemParams hi = fig2_params(1e4);
  CHECK(cond_sinr_cdf(linear_approx_params(hi.R, hi.T).beta, hi) <= 1e-15);
  CHECK(cond_decoding_error(hi) <= 1e-12);
}

TEST_CASE("packet loss truncated limits") {
  SystemParams p = fig2_params(1e-6);
  CHECK(packet_loss_truncated(p).p_loss == doctest::Approx(1.0).epsilon(1e-12));

  p = fig2_params(100.0 * std::pow(10.0, 2.3) * 4.0);
  auto lb = packet_loss_truncated(p);
  CHECK(lb.p_t <= 1e-12);
  CHECK(lb.p_loss == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("loss breakdown identity") {
  for (double q : {2.0, 20.0, 90.0, 400.0}) {
    auto lb = packet_loss_truncated(fig2_params(q));
    CHECK(lb.p_t >= 0.0);
    CHECK(lb.p_t <= 1.0);
    CHECK(lb.eps_cond >= 0.0);
    CHECK(lb.eps_cond <= 1.0);
    CHECK(std::fabs(lb.p_loss - (lb.eps_cond * lb.p_t + 1.0 - lb.p_t)) <= 1e-12);
  }
  SystemParams pp = fig2_params(3.0);
  pp.phi = 1.0;
  auto lb = packet_loss_perfect(pp);
  CHECK(std::fabs(lb.p_loss - (lb.eps_cond * lb.p_t + 1.0 - lb.p_t)) <= 1e-12);
}

TEST_CASE("conventional equals the large-pmax limit of truncated") {
  for (double q : {2.0, 5.0, 12.0, 30.0, 70.0, 160.0, 400.0}) {
    SystemParams p = fig2_params(q);
    p.pmax = 1e9;
    double truncated = packet_loss_truncated(p).p_loss;
    double conventional = packet_loss_conventional(p);
    CHECK(std::fabs(truncated - conventional) < 1e-6);
  }
}

TEST_CASE("conventional is monotone decreasing in Q") {
  double prev = 2.0;
  for (double q = 2.0; q <= 600.0; q *= 1.35) {
    double v = packet_loss_conventional(fig2_params(q));
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("conventional beta path agrees with the quadrature path") {
  for (double q : {2.0, 5.0, 20.0, 50.0, 120.0, 300.0}) {
    auto diag = packet_loss_conventional_diagnostics(fig2_params(q));
    REQUIRE(diag.p_loss_beta.has_value());
    CHECK(std::fabs(*diag.p_loss_beta - diag.p_loss_quad) <=
          1e-6 * std::max(diag.p_loss_quad, 1e-300));
    CHECK(packet_loss_conventional(fig2_params(q)) == diag.p_loss_quad);
  }
  // near the m1/m2 pole the beta path is refused, quadrature still works
  SystemParams pole = fig2_params(10.0);  // Q*(1-phi) == sigma2
  auto diag = packet_loss_conventional_diagnostics(pole);
  CHECK(!diag.p_loss_beta.has_value());
  CHECK(std::isfinite(diag.p_loss_quad));
  // window clipped by the ceiling: beta path invalid as well
  auto clipped = packet_loss_conventional_diagnostics(fig2_params(1.0));
  CHECK(!clipped.p_loss_beta.has_value());
}

TEST_CASE("packet_loss_perfect") {
  SystemParams p = fig2_params(1.0);
  p.phi = 1.0;
  p.pmax = kInf;
  p.q = p.sigma2 * (std::exp2(p.R) - 1.0);  // SNR = gamma0
  CHECK(packet_loss_perfect(p).p_loss == doctest::Approx(0.5).epsilon(1e-9));

  p.q = 1e-9;
  CHECK(packet_loss_perfect(p).p_loss == doctest::Approx(1.0).epsilon(1e-9));

  // decreasing in pmax at fixed Q
  SystemParams t = fig2_params(20.0);
  t.phi = 1.0;
  double prev = 2.0;
  for (double pm = 5.0; pm <= 500.0; pm *= 2.0) {
    t.pmax = pm;
    double v = packet_loss_perfect(t).p_loss;
    CHECK(v <= prev);
    prev = v;
  }
  CHECK_THROWS_AS(packet_loss_perfect(fig2_params(5.0)), std::domain_error);
}

TEST_CASE("packet loss is increasing in rate") {
  for (double r = 0.2; r <= 1.4; r += 0.2) {
    SystemParams a = fig2_params(20.0);
    a.R = r;
    SystemParams b = fig2_params(20.0);
    b.R = r + 0.2;
    CHECK(packet_loss_truncated(b).p_loss > packet_loss_truncated(a).p_loss);
    a.phi = b.phi = 1.0;
    a.pmax = b.pmax = 10.0;
    CHECK(packet_loss_perfect(b).p_loss > packet_loss_perfect(a).p_loss);
  }
}

TEST_CASE("packet_loss routing") {
  SystemParams p = fig2_params(20.0);
  p.phi = 1.0;
  CHECK(scheme_for(p) == Scheme::perfect);
  CHECK(packet_loss(p).eps_cond == packet_loss_perfect(p).eps_cond);

  p.phi = 0.9;
  p.pmax = kInf;
  CHECK(scheme_for(p) == Scheme::conventional);
  CHECK(packet_loss(p).p_t == 1.0);
  CHECK(packet_loss(p).p_loss == doctest::Approx(packet_loss_conventional(p)).epsilon(1e-12));

  p.pmax = 100.0;
  CHECK(scheme_for(p) == Scheme::truncated);

  p.phi = 0.0;
  auto lb = packet_loss(p);
  CHECK(lb.eps_cond == 1.0);
  CHECK(lb.p_loss == 1.0);
}

TEST_CASE("q_hard_bound") {
  SystemParams p = fig2_params(1.0);
  p.nt = 4;
  p.pmax = 10.0;
  CHECK(q_hard_bound(p) == doctest::Approx(30.0).epsilon(1e-14));
  p.nt = 2;
  p.pmax = 199.5;
  CHECK(q_hard_bound(p) == doctest::Approx(199.5).epsilon(1e-14));
  p.nt = 1;
  CHECK_THROWS_AS(q_hard_bound(p), std::domain_error);
}

TEST_CASE("q_up_from_target") {
  SystemParams p = fig2_params(1.0);
  p.nt = 1;
  p.pmax = 7.0;
  CHECK(q_up_from_target(p, 0.5) ==
        doctest::Approx(7.0 * std::log(2.0)).epsilon(1e-9));

  p.nt = 4;
  p.pmax = 199.5;
  double qup = q_up_from_target(p, 1e-7);
  CHECK(std::fabs(gamma_p(4.0, qup / p.pmax) - 1e-7) <= 1e-9);

  // near-1 target exceeds the hard bound, so min() takes over in searches
  double loose = q_up_from_target(p, 1.0 - 1e-6);
  CHECK(loose > q_hard_bound(p));

  CHECK_THROWS_AS(q_up_from_target(p, 0.0), std::domain_error);
  CHECK_THROWS_AS(q_up_from_target(p, 1.0), std::domain_error);
}

TEST_CASE("q0_convexity") {
  double q0 = q0_convexity(1.0);
  CHECK(std::fabs(q0 - 0.46425163181589402) < 1e-9);
  CHECK(q0_convexity(2.0) == doctest::Approx(2.0 * q0).epsilon(1e-14));
  // root residual in the defining equation
  double g = q0;
  CHECK(std::fabs(std::log1p(g) / ((1.0 + g) * (1.0 + g) - 1.0) - 1.0 / 3.0) < 1e-12);
  // independent bisection on the rearranged form 3*ln(1+g) = g*(g+2)
  double lo = 0.1, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (3.0 * std::log1p(mid) - mid * (mid + 2.0) > 0.0 ? lo : hi) = mid;
  }
  CHECK(q0 == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
  CHECK_THROWS_AS(q0_convexity(0.0), std::domain_error);
}

TEST_CASE("validate names the offending field") {
  SystemParams p = fig2_params(10.0);
  p.nt = 0;
  CHECK_THROWS_WITH_AS(p.validate(), "nt: must be >= 1", std::domain_error);
  p = fig2_params(10.0);
  p.phi = 1.5;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = fig2_params(10.0);
  p.q = -1.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = fig2_params(10.0);
  p.pmax = 0.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
}
