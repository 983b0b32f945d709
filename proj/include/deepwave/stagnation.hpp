#pragma once

// Stagnation points of the elliptic solutions: roots of |kA e^Z| = |kcZ - beta|.
//
// The absolute values are split into the two smooth convex branches
//   f_s(Z) = |kA| e^Z - s (kcZ - beta),   s = +1, -1,
// each with at most two roots, so the equation has at most three solutions.

#include <algorithm>
#include <cmath>
#include <vector>

#include "deepwave/error.hpp"
#include "deepwave/trajectories.hpp"
#include "deepwave/wave_field.hpp"

namespace deepwave {

/// Coefficients of the stagnation equation; k, A, c may be supplied directly
/// so that limits such as c -> 0 can be probed without the dispersion relation.
struct StagnationProblem {
  double k = 1.0;
  double A = 0.0;
  double c = 0.0;
  double beta = 0.0;

  static StagnationProblem from(const WaveParams& params, double beta) {
    return {params.k, trajectory_constant(params), dispersion_speed(params), beta};
  }

  double lhs(double Z) const noexcept { return std::abs(k * A) * std::exp(Z); }
  double rhs(double Z) const noexcept { return std::abs(k * c * Z - beta); }
  double branch(int s, double Z) const noexcept { return lhs(Z) - s * (k * c * Z - beta); }
  double branch_slope(int s, double Z) const noexcept { return lhs(Z) - s * k * c; }
};

struct StagnationSolution {
  double Z_star = 0.0;
  int branch = 1;  // which signed equation |kA| e^Z = branch * (kcZ - beta) was solved
  double residual = 0.0;
  bool tangency = false;  // double root: f and f' vanish together
};

struct StagnationReport {
  std::vector<StagnationSolution> solutions;
  double Z_min = -20.0;
  double Z_max = 5.0;
  std::size_t grid_size = 0;

  std::size_t count() const noexcept { return solutions.size(); }
};

inline constexpr double kDefaultStagnationZMin = -20.0;
inline constexpr double kDefaultStagnationZMax = 5.0;
inline constexpr std::size_t kDefaultStagnationGrid = 20000;

namespace detail {

// Safeguarded Newton inside a sign-change bracket.
template <typename F, typename DF>
double bracketed_newton(F&& f, DF&& df, double lo, double hi, double tol) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= tol * std::max(1.0, std::abs(x)) || hi - lo <= tol) return next;
    x = next;
  }
  return x;
}

}  // namespace detail

inline StagnationReport solve_stagnation(const StagnationProblem& prob, double Z_min, double Z_max,
                                         std::size_t grid) {
  if (!(Z_min < Z_max) || !std::isfinite(Z_min) || !std::isfinite(Z_max))
    throw Error(ErrorCode::ParameterDomain, "stagnation search interval must satisfy Z_min < Z_max");
  if (grid < 1000) throw Error(ErrorCode::ParameterDomain, "stagnation grid must have at least 1000 points");
  if (prob.k * prob.A == 0.0) throw Error(ErrorCode::ParameterDomain, "kA must be nonzero");

  StagnationReport report;
  report.Z_min = Z_min;
  report.Z_max = Z_max;
  report.grid_size = grid;

  const double h = (Z_max - Z_min) / static_cast<double>(grid - 1);
  std::vector<double> base(grid);
  for (std::size_t i = 0; i < grid; ++i) base[i] = Z_min + h * static_cast<double>(i);
  base.back() = Z_max;

  for (int s : {+1, -1}) {
    auto f = [&](double Z) { return prob.branch(s, Z); };
    auto df = [&](double Z) { return prob.branch_slope(s, Z); };
    // Each branch is convex; splitting the grid at its minimum leaves at most
    // one root per monotone side, so close pairs cannot share a grid cell.
    std::vector<double> nodes = base;
    if (s * prob.k * prob.c > 0.0) {
      const double z_min = std::log(s * prob.k * prob.c / std::abs(prob.k * prob.A));
      if (z_min > Z_min && z_min < Z_max) nodes.insert(std::upper_bound(nodes.begin(), nodes.end(), z_min), z_min);
    }
    double z_prev = nodes.front();
    double f_prev = f(z_prev);
    if (f_prev == 0.0) report.solutions.push_back({z_prev, s, 0.0, false});
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const double z = nodes[i];
      const double fz = f(z);
      if (fz == 0.0) {
        report.solutions.push_back({z, s, 0.0, false});
      } else if (f_prev != 0.0 && (fz < 0.0) != (f_prev < 0.0)) {
        report.solutions.push_back({detail::bracketed_newton(f, df, z_prev, z, 1e-14), s, 0.0, false});
      }
      z_prev = z;
      f_prev = fz;
    }

    // A convex branch touching zero at its minimum is a double root: rounding
    // may split it into a close pair or miss it entirely, so it is replaced
    // by the analytic minimum.
    if (s * prob.k * prob.c > 0.0) {
      const double z_min = std::log(s * prob.k * prob.c / std::abs(prob.k * prob.A));
      const double tol = 2e-13 * std::max({prob.lhs(z_min), std::abs(prob.k * prob.c * z_min), std::abs(prob.beta)});
      if (z_min > Z_min && z_min < Z_max && std::abs(f(z_min)) <= tol) {
        std::erase_if(report.solutions, [&](const auto& sol) {
          return sol.branch == s && std::abs(sol.Z_star - z_min) < 1e-6;
        });
        report.solutions.push_back({z_min, s, 0.0, true});
      }
    }
  }

  for (auto& sol : report.solutions) {
    sol.residual = std::abs(prob.lhs(sol.Z_star) - prob.rhs(sol.Z_star));
  }
  std::sort(report.solutions.begin(), report.solutions.end(),
            [](const auto& a, const auto& b) { return a.Z_star < b.Z_star; });
  std::vector<StagnationSolution> unique;
  for (const auto& sol : report.solutions) {
    if (!unique.empty() && std::abs(unique.back().Z_star - sol.Z_star) <= 1e-9) continue;
    unique.push_back(sol);
  }
  report.solutions = std::move(unique);

  if (report.solutions.empty())
    throw Error(ErrorCode::EmptyReport, "no stagnation solution in the search interval; widen [Z_min, Z_max]");
  return report;
}

inline StagnationReport solve_stagnation(const WaveParams& params, double beta,
                                         double Z_min = kDefaultStagnationZMin,
                                         double Z_max = kDefaultStagnationZMax,
                                         std::size_t grid = kDefaultStagnationGrid) {
  return solve_stagnation(StagnationProblem::from(params, beta), Z_min, Z_max, grid);
}

enum class StagnationPlacement { OnTrajectory, InsideBand, OutsideBand };

constexpr const char* to_string(StagnationPlacement p) noexcept {
  switch (p) {
    case StagnationPlacement::OnTrajectory: return "on-trajectory";
    case StagnationPlacement::InsideBand: return "inside-band";
    case StagnationPlacement::OutsideBand: return "outside-band";
  }
  return "unknown";
}

struct AnnotatedStagnation {
  StagnationSolution solution;
  StagnationPlacement placement = StagnationPlacement::OutsideBand;
};

/// Places each solution relative to the Z-range swept by a trajectory. Peakon
/// paths are unbounded below, so their band extends to -infinity. No claim is
/// made about the dynamical type of the point.
inline std::vector<AnnotatedStagnation> stagnation_on_trajectory(const StagnationReport& report,
                                                                 const TrajectorySeries& series) {
  double lo = series.min_Z();
  const double hi = series.max_Z();
  if (series.case_tag == CaseTag::Peakon) lo = -INFINITY;
  std::vector<AnnotatedStagnation> out;
  for (const auto& sol : report.solutions) {
    AnnotatedStagnation a{sol};
    const bool touches = std::any_of(series.samples.begin(), series.samples.end(),
                                     [&](const auto& s) { return std::abs(sol.Z_star - s.Z) < 1e-6; });
    if (touches) {
      a.placement = StagnationPlacement::OnTrajectory;
    } else if (sol.Z_star >= lo && sol.Z_star <= hi) {
      a.placement = StagnationPlacement::InsideBand;
    } else {
      a.placement = StagnationPlacement::OutsideBand;
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace deepwave
