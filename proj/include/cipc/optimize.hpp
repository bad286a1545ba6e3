#ifndef CIPC_OPTIMIZE_HPP
#define CIPC_OPTIMIZE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cipc/analytic.hpp"

namespace cipc {

struct SearchSpec {
  int grid_points = 400;     // log-spaced scan density, >= 10
  double refine_tol = 1e-6;  // relative tolerance of the refinement stage
  int max_iter = 200;
};

enum class OptMethod { grid_golden, derivative_root, boundary };
std::string to_string(OptMethod m);

struct OptResult {
  double q_star;
  double p_loss_star;
  double interval_lo;  // searched interval; lo < q_star < hi unless boundary
  double interval_hi;
  OptMethod method;
};

// min_Q packet loss over (0, min(Pmax*(Nt-1), Q_up(target))]. For phi < 1:
// log-spaced grid scan followed by golden-section refinement of the best
// bracket. For phi = 1: golden section on the convex stretch (Q0, bound),
// compared against a grid scan of (0, Q0]. With nt = 1 (no hard bound) and
// no target, the interval is capped where suspension alone costs 0.5.
OptResult minimize_packet_loss_q(const SystemParams& p,
                                 std::optional<double> target = std::nullopt,
                                 const SearchSpec& spec = {});

// Largest R with packet loss <= target, by bisection over (0, r_hi]; the
// loss is strictly increasing in R. r_hi <= 0 selects the ceiling rate
// log2(1 + phi*Q/sigma2). Returns 0 when no rate meets the target.
double max_rate(const SystemParams& p, double target, double r_hi = 0);

// Smallest Pmax whose minimized-over-Q packet loss meets target, within 1e-4
// relative; bisection is valid because that minimum is nonincreasing in
// Pmax. nullopt when even pmax_hi cannot meet the target.
std::optional<double> min_pmax(const SystemParams& p, double target, double pmax_hi,
                               const SearchSpec& spec = {});

enum class SweepVariable { q, blocklength, phi, nt, pmax, rate };
enum class SweepObjective { loss, min_loss_over_q, max_rate };
std::string to_string(SweepVariable v);
std::string to_string(SweepObjective o);

// One record per grid value. Exactly one of the payload members is set on
// success; error holds the failure message otherwise and the sweep goes on.
struct SweepRow {
  double value = 0;
  std::optional<LossBreakdown> loss;
  std::optional<OptResult> opt;
  std::optional<double> rate;
  std::string error;
};

struct SweepTable {
  SweepVariable variable;
  SweepObjective objective;
  std::vector<SweepRow> rows;
};

// Evaluates the objective at each grid value of the swept variable, in grid
// order. target is required by the max_rate objective and optional for
// min_loss_over_q.
SweepTable sweep(const SystemParams& p, SweepVariable variable,
                 std::span<const double> grid, SweepObjective objective,
                 std::optional<double> target = std::nullopt,
                 const SearchSpec& spec = {});

}  // namespace cipc

#endif  // CIPC_OPTIMIZE_HPP
