#include "cipc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace cipc {

namespace {

constexpr double kInvPhi = 0.61803398874989484820;  // golden ratio conjugate

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  double llo = std::log(lo);
  double step = (std::log(hi) - llo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(llo + step * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

struct Extremum {
  double x;
  double fx;
};

// Golden-section minimization on [a, b]; assumes a single basin inside.
Extremum golden_min(const std::function<double(double)>& f, double a, double b,
                    double rel_tol, int max_iter) {
  double c = b - (b - a) * kInvPhi;
  double d = a + (b - a) * kInvPhi;
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > rel_tol * (std::fabs(c) + std::fabs(d)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * kInvPhi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * kInvPhi;
      fd = f(d);
    }
  }
  return fc < fd ? Extremum{c, fc} : Extremum{d, fd};
}

Extremum grid_min(const std::function<double(double)>& f, const std::vector<double>& grid,
                  std::size_t* argmin_index = nullptr) {
  Extremum best{grid.front(), f(grid.front())};
  std::size_t best_i = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double v = f(grid[i]);
    if (v < best.fx) {
      best = {grid[i], v};
      best_i = i;
    }
  }
  if (argmin_index) *argmin_index = best_i;
  return best;
}

void check_spec(const SearchSpec& spec) {
  if (spec.grid_points < 10) throw std::domain_error("SearchSpec: grid_points must be >= 10");
  if (!(spec.refine_tol > 0)) throw std::domain_error("SearchSpec: refine_tol must be > 0");
}

}  // namespace

std::string to_string(OptMethod m) {
  switch (m) {
    case OptMethod::grid_golden: return "grid+golden";
    case OptMethod::derivative_root: return "derivative-root";
    case OptMethod::boundary: return "boundary";
  }
  return "?";
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::q: return "Q";
    case SweepVariable::blocklength: return "T";
    case SweepVariable::phi: return "phi";
    case SweepVariable::nt: return "Nt";
    case SweepVariable::pmax: return "Pmax";
    case SweepVariable::rate: return "R";
  }
  return "?";
}

std::string to_string(SweepObjective o) {
  switch (o) {
    case SweepObjective::loss: return "loss";
    case SweepObjective::min_loss_over_q: return "min-loss-over-Q";
    case SweepObjective::max_rate: return "max-rate";
  }
  return "?";
}

OptResult minimize_packet_loss_q(const SystemParams& p, std::optional<double> target,
                                 const SearchSpec& spec) {
  SystemParams pp = p;
  pp.q = 1.0;  // placeholder so validate() passes before the search sets q
  pp.validate();
  check_spec(spec);
  if (std::isinf(p.pmax)) {
    throw std::domain_error("minimize_packet_loss_q: pmax must be finite");
  }

  double hi = std::numeric_limits<double>::infinity();
  if (p.nt > 1) hi = q_hard_bound(p);
  if (target) hi = std::min(hi, q_up_from_target(p, *target));
  // nt = 1 and no target: cap where suspension alone already costs 0.5,
  // beyond which no minimum can lie.
  if (std::isinf(hi)) hi = q_up_from_target(p, 0.5);

  auto objective = [&pp](double q) {
    pp.q = q;
    return packet_loss(pp).p_loss;
  };

  Extremum best{hi, std::numeric_limits<double>::infinity()};
  OptMethod method = OptMethod::grid_golden;

  if (p.phi >= 1.0 - 1e-9) {
    double q0 = q0_convexity(p.sigma2);
    if (q0 < hi && p.nt > 1) {
      // Convex on (Q0, Pmax*(Nt-1)); golden section there, grid below Q0.
      best = golden_min(objective, q0, hi, spec.refine_tol, spec.max_iter);
      auto left = grid_min(objective, log_grid(q0 * 1e-6, q0,
                                               std::max(10, spec.grid_points / 4)));
      if (left.fx < best.fx) best = left;
    } else {
      // nt = 1 carries no convexity guarantee; plain scan plus refinement.
      auto grid = log_grid(hi * 1e-6, hi, spec.grid_points);
      std::size_t i = 0;
      best = grid_min(objective, grid, &i);
      double lo_b = i > 0 ? grid[i - 1] : grid[i];
      double hi_b = i + 1 < grid.size() ? grid[i + 1] : grid[i];
      if (hi_b > lo_b) {
        auto refined = golden_min(objective, lo_b, hi_b, spec.refine_tol, spec.max_iter);
        if (refined.fx < best.fx) best = refined;
      }
    }
  } else {
    auto grid = log_grid(hi * 1e-6, hi, spec.grid_points);
    std::size_t i = 0;
    best = grid_min(objective, grid, &i);
    double lo_b = i > 0 ? grid[i - 1] : grid[i];
    double hi_b = i + 1 < grid.size() ? grid[i + 1] : grid[i];
    if (hi_b > lo_b) {
      auto refined = golden_min(objective, lo_b, hi_b, spec.refine_tol, spec.max_iter);
      if (refined.fx < best.fx) best = refined;
    }
    if (i + 1 == grid.size()) method = OptMethod::boundary;
  }

  if (best.x >= hi * (1.0 - 1e-12)) method = OptMethod::boundary;
  return {best.x, best.fx, 0.0, hi, method};
}

double max_rate(const SystemParams& p, double target, double r_hi) {
  SystemParams pp = p;
  pp.R = 1.0;
  pp.validate();
  if (!(target > 0.0) || !(target < 1.0)) {
    throw std::domain_error("max_rate: target must be in (0, 1)");
  }
  if (r_hi <= 0.0) r_hi = std::log2(1.0 + sinr_ceiling(p));
  if (!(r_hi > 0.0)) return 0.0;

  auto loss_at = [&pp](double r) {
    pp.R = r;
    return packet_loss(pp).p_loss;
  };

  double lo = r_hi * 1e-12;
  if (loss_at(lo) > target) return 0.0;
  if (loss_at(r_hi) <= target) return r_hi;
  // Invariant: loss(lo) <= target < loss(hi); the loss is increasing in R.
  double hi = r_hi;
  for (int i = 0; i < 200 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++i) {
    double mid = 0.5 * (lo + hi);
    (loss_at(mid) <= target ? lo : hi) = mid;
  }
  return lo;
}

std::optional<double> min_pmax(const SystemParams& p, double target, double pmax_hi,
                               const SearchSpec& spec) {
  if (!(target > 0.0) || !(target <= 1.0)) {
    throw std::domain_error("min_pmax: target must be in (0, 1]");
  }
  if (!(pmax_hi > 0.0) || std::isinf(pmax_hi)) {
    throw std::domain_error("min_pmax: pmax_hi must be finite and > 0");
  }
  auto min_loss = [&](double pm) {
    SystemParams pp = p;
    pp.pmax = pm;
    return minimize_packet_loss_q(pp, std::nullopt, spec).p_loss_star;
  };
  if (min_loss(pmax_hi) > target) return std::nullopt;
  double lo = pmax_hi * 1e-6;
  if (min_loss(lo) <= target) return lo;
  // Invariant: min_loss(lo) > target >= min_loss(hi); log-bisect to 1e-4.
  double hi = pmax_hi;
  while (hi / lo > 1.0 + 1e-4) {
    double mid = std::sqrt(lo * hi);
    (min_loss(mid) <= target ? hi : lo) = mid;
  }
  return hi;
}

SweepTable sweep(const SystemParams& p, SweepVariable variable,
                 std::span<const double> grid, SweepObjective objective,
                 std::optional<double> target, const SearchSpec& spec) {
  if (grid.empty()) throw std::domain_error("sweep: grid must be nonempty");
  if (objective == SweepObjective::max_rate && !target) {
    throw std::domain_error("sweep: max-rate objective requires a target");
  }
  SweepTable table{variable, objective, {}};
  table.rows.reserve(grid.size());
  for (double v : grid) {
    SweepRow row;
    row.value = v;
    try {
      SystemParams pp = p;
      switch (variable) {
        case SweepVariable::q: pp.q = v; break;
        case SweepVariable::blocklength: pp.T = v; break;
        case SweepVariable::phi: pp.phi = v; break;
        case SweepVariable::nt:
          if (v < 1 || v != std::floor(v)) throw std::domain_error("nt: must be a positive integer");
          pp.nt = static_cast<int>(v);
          break;
        case SweepVariable::pmax: pp.pmax = v; break;
        case SweepVariable::rate: pp.R = v; break;
      }
      switch (objective) {
        case SweepObjective::loss:
          pp.validate();
          row.loss = packet_loss(pp);
          break;
        case SweepObjective::min_loss_over_q:
          row.opt = minimize_packet_loss_q(pp, target, spec);
          break;
        case SweepObjective::max_rate:
          pp.validate();
          row.rate = max_rate(pp, *target);
          break;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace cipc
