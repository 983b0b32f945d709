#pragma once

// Implementations of the `deepwave` subcommands. Each writes to the streams
// it is given so that the tool and the tests share one code path.

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deepwave/cubic.hpp"
#include "deepwave/error.hpp"
#include "deepwave/io/csv.hpp"
#include "deepwave/io/format.hpp"
#include "deepwave/io/svg.hpp"
#include "deepwave/ode_oracle.hpp"
#include "deepwave/scenario.hpp"
#include "deepwave/special_functions.hpp"
#include "deepwave/stagnation.hpp"
#include "deepwave/trajectories.hpp"
#include "deepwave/wave_field.hpp"

namespace deepwave {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitDomain = 3, kExitValidation = 4 };

inline int exit_code_for(ErrorCode code) noexcept {
  return code == ErrorCode::Usage ? kExitUsage : kExitDomain;
}

// ---------------------------------------------------------------------------
// dispersion

inline void run_dispersion(const ScenarioConfig& cfg, std::ostream& os) {
  os << "k,lambda,c,A\n";
  for (double k : cfg.k_list) {
    WaveParams w = cfg.wave;
    w.k = k;
    w.validate();
    os << io::format_sig(k, 6) << ',' << io::format_sig(w.wavelength(), 6) << ','
       << io::format_sig(dispersion_speed(w), 6) << ',' << io::format_sig(trajectory_constant(w), 6) << '\n';
  }
}

// ---------------------------------------------------------------------------
// field

inline void run_field(const ScenarioConfig& cfg, std::ostream& os) {
  const auto s = evaluate_field(cfg.wave, cfg.x, cfg.z, cfg.t);
  os << "u=" << io::format_g17(s.u) << '\n'
     << "v=" << io::format_g17(s.v) << '\n'
     << "p=" << io::format_g17(s.p) << '\n'
     << "eta=" << io::format_g17(s.eta) << '\n'
     << "above_surface=" << (s.above_surface ? "true" : "false") << '\n';
}

// ---------------------------------------------------------------------------
// trajectory

/// Builds the series selected by the configuration.
inline TrajectorySeries build_trajectory(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto times = uniform_times(cfg.t_start, cfg.t_end, cfg.n_samples);
  switch (cfg.solution) {
    case SolutionKind::Peakon: return peakon_trajectory(cfg.wave, cfg.peakon(), times);
    case SolutionKind::Elliptic: return elliptic_trajectory(cfg.wave, cfg.beta, cfg.t0, times);
    case SolutionKind::Oracle: {
      double x0 = 0.0, z0 = 0.0;
      if (cfg.x0 && cfg.z0) {
        x0 = *cfg.x0;
        z0 = *cfg.z0;
      } else {
        const double first[] = {cfg.t_start};
        const auto start = elliptic_trajectory(cfg.wave, cfg.beta, cfg.t0, first).samples.at(0);
        x0 = cfg.x0.value_or(start.x);
        z0 = cfg.z0.value_or(start.z);
      }
      auto icfg = IntegratorConfig::standard(cfg.wave, cfg.t_start, cfg.t_end);
      return integrate_full(cfg.wave, x0, z0, icfg, times);
    }
  }
  throw Error(ErrorCode::Usage, "unknown solution kind");
}

inline void write_metadata(std::ostream& os, const TrajectorySeries& series) {
  os << "case=" << to_string(series.case_tag) << '\n';
  os << "samples=" << series.samples.size() << '\n';
  if (series.period) os << "period=" << io::format_g17(*series.period) << '\n';
  if (series.drift_per_period) os << "drift_per_period=" << io::format_g17(*series.drift_per_period) << '\n';
  if (series.phase_winding) os << "phase_winding=" << *series.phase_winding << '\n';
  if (!series.samples.empty())
    os << "Z_range=" << io::format_g17(series.min_Z()) << ',' << io::format_g17(series.max_Z()) << '\n';
  os << "asymptote_times=";
  for (std::size_t i = 0; i < series.asymptote_times.size(); ++i)
    os << (i ? "," : "") << io::format_g17(series.asymptote_times[i]);
  os << '\n';
  os << "asymptote_x=";
  for (std::size_t i = 0; i < series.asymptote_x.size(); ++i)
    os << (i ? "," : "") << io::format_g17(series.asymptote_x[i]);
  os << '\n';
}

inline nlohmann::ordered_json trajectory_json(const TrajectorySeries& series) {
  nlohmann::ordered_json j;
  j["case"] = to_string(series.case_tag);
  j["period"] = series.period ? nlohmann::ordered_json(*series.period) : nlohmann::ordered_json(nullptr);
  j["drift_per_period"] =
      series.drift_per_period ? nlohmann::ordered_json(*series.drift_per_period) : nlohmann::ordered_json(nullptr);
  j["phase_winding"] =
      series.phase_winding ? nlohmann::ordered_json(*series.phase_winding) : nlohmann::ordered_json(nullptr);
  j["asymptote_times"] = series.asymptote_times;
  j["asymptote_x"] = series.asymptote_x;
  j["segment_starts"] = series.segment_starts;
  auto& s = j["samples"];
  s = nlohmann::ordered_json::array();
  for (const auto& p : series.samples) s.push_back({p.t, p.x, p.z, p.X, p.Z});
  j["columns"] = {"t", "x", "z", "X", "Z"};
  return j;
}

struct TrajectoryOutputs {
  std::string data;      // in the requested format
  std::string svg;       // empty unless an SVG was requested
  std::string metadata;  // key=value summary
};

inline io::SvgOptions svg_options(const ScenarioConfig& cfg, const TrajectorySeries& series) {
  io::SvgOptions opt;
  opt.width = cfg.svg_width;
  opt.height = cfg.svg_height;
  opt.margin = cfg.svg_margin;
  opt.title = std::string(to_string(series.case_tag)) + "  k=" + io::format_sig(cfg.wave.k, 6) +
              " a=" + io::format_sig(cfg.wave.a, 6) + " g=" + io::format_sig(cfg.wave.g, 6) +
              (cfg.solution == SolutionKind::Peakon ? std::string() : " beta=" + io::format_sig(cfg.beta, 6));
  return opt;
}

inline TrajectoryOutputs run_trajectory(const ScenarioConfig& cfg) {
  const auto series = build_trajectory(cfg);
  TrajectoryOutputs out;
  std::ostringstream data, meta;
  switch (cfg.format) {
    case OutputFormat::Csv: io::write_trajectory_csv(data, series); break;
    case OutputFormat::Json: data << trajectory_json(series).dump(1) << '\n'; break;
    case OutputFormat::Svg: io::write_trajectory_svg(data, series, svg_options(cfg, series)); break;
  }
  out.data = data.str();
  if (!cfg.svg.empty()) {
    std::ostringstream svg;
    io::write_trajectory_svg(svg, series, svg_options(cfg, series));
    out.svg = svg.str();
  }
  write_metadata(meta, series);
  out.metadata = meta.str();
  return out;
}

// ---------------------------------------------------------------------------
// stagnation

inline void run_stagnation(const ScenarioConfig& cfg, std::ostream& os) {
  cfg.wave.validate();
  const auto rep = solve_stagnation(cfg.wave, cfg.beta, cfg.z_min, cfg.z_max, cfg.grid);
  os << "interval=[" << io::format_g17(rep.Z_min) << "," << io::format_g17(rep.Z_max) << "]\n";
  os << "grid=" << rep.grid_size << '\n';
  os << "count=" << rep.count() << '\n';
  os << "Z_star,branch,residual,tangency\n";
  for (const auto& s : rep.solutions) {
    os << io::format_g17(s.Z_star) << ',' << (s.branch > 0 ? "+1" : "-1") << ',' << io::format_g17(s.residual)
       << ',' << (s.tangency ? "yes" : "no") << '\n';
  }
}

// ---------------------------------------------------------------------------
// validate

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

class CheckLog {
 public:
  void add(std::string name, bool pass, std::string detail) {
    results_.push_back({std::move(name), pass, std::move(detail)});
  }
  void bound(std::string name, double value, double limit) {
    add(std::move(name), value <= limit, "value=" + io::format_sig(value, 6) + " bound=" + io::format_sig(limit, 3));
  }
  void info(std::string name, std::string detail) { add(std::move(name), true, "info " + std::move(detail)); }

  bool all_pass() const {
    for (const auto& r : results_)
      if (!r.pass) return false;
    return true;
  }
  const std::vector<CheckResult>& results() const { return results_; }

  void print(std::ostream& os) const {
    for (const auto& r : results_) os << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
  }

 private:
  std::vector<CheckResult> results_;
};

namespace detail {

inline void check_elliptic_identities(CheckLog& log) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> du(-20.0, 20.0), dm(0.0, 0.999);
  double worst_pyth = 0.0, worst_dn = 0.0, worst_deriv = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double u = du(rng), m = dm(rng);
    const auto f = jacobi_sn_cn_dn(u, m);
    worst_pyth = std::max(worst_pyth, std::abs(f.sn * f.sn + f.cn * f.cn - 1.0));
    worst_dn = std::max(worst_dn, std::abs(f.dn * f.dn + m * f.sn * f.sn - 1.0));
    const double h = 1e-5;
    const double fd = (jacobi_sn_cn_dn(u + h, m).sn - jacobi_sn_cn_dn(u - h, m).sn) / (2.0 * h);
    worst_deriv = std::max(worst_deriv, std::abs(fd - f.cn * f.dn));
  }
  log.bound("elliptic sn^2+cn^2=1", worst_pyth, 1e-12);
  log.bound("elliptic dn^2+m sn^2=1", worst_dn, 1e-12);
  log.bound("elliptic d(sn)/du = cn dn", worst_deriv, 1e-6);
  log.bound("elliptic K(0)=pi/2", std::abs(complete_K(0.0) - 0.5 * std::numbers::pi), 1e-15);
}

}  // namespace detail

inline CheckLog validate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  CheckLog log;
  const WaveParams& w = cfg.wave;
  const double k = w.k;
  const double c = dispersion_speed(w);
  const double A = trajectory_constant(w);
  detail::check_elliptic_identities(log);

  if (cfg.solution == SolutionKind::Peakon) {
    const auto pk = cfg.peakon();
    const double t_star = peakon_blowup_time(w, pk);
    // eq2 vanishes on the side where sin(k const1) = -sign(kA t + const2).
    const double s = std::sin(k * pk.const1);
    double worst = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double tau = 1e-3 * i;
      const double t = t_star + (s * k * A > 0.0 ? -tau : tau);
      worst = std::max(worst, peakon_residuals(w, pk, t).eq2);
    }
    log.bound("peakon second-equation residual", worst, 1e-12);
    const auto near = peakon_path_from_blowup(w, pk, 1e-9);
    log.info("peakon z at t*+1e-9", "z=" + io::format_sig(near.z, 6));
    const double far = 1.01 * std::exp(10.0 * k) / (k * std::abs(A));
    const double zf = std::max(peakon_path_from_blowup(w, pk, far).z, peakon_path_from_blowup(w, pk, -far).z);
    log.bound("peakon z < -10 far from t*", zf + 10.0, 0.0);
    return log;
  }

  const auto P = build_cubic(w, cfg.beta);
  CubicReduction red;
  try {
    red = classify_roots(P, w);
  } catch (const Error& e) {
    log.add("classification", false, std::string(to_string(e.code())) + ": " + e.what());
    return log;
  }
  log.info("classification", is_case1(red) ? "case1" : "case2");

  const double Pscale = P.scale();
  if (const auto* r1 = std::get_if<Case1Reduction>(&red)) {
    const double T = period_case1(*r1);
    // closed form vs direct integration of Z'' = P'(Z)/2 from (Z1, 0)
    const auto times = uniform_times(cfg.t0, cfg.t0 + 2.0 * T, 2001);
    IntegratorConfig icfg;
    icfg.dt = T / 20000.0;
    icfg.t_start = cfg.t0;
    icfg.t_end = cfg.t0 + 2.0 * T;
    const auto num = integrate_truncated(P, r1->Z1, 0.0, icfg, times);
    double sup = 0.0, energy = 0.0;
    const double e0 = -P(r1->Z1);
    for (const auto& s : num.series.samples) {
      sup = std::max(sup, std::abs(case1_Z(*r1, s.t, cfg.t0) - s.Z));
      energy = std::max(energy, std::abs(s.dZdt * s.dZdt - P(s.Z) - e0));
    }
    log.bound("case1 closed form vs integrator (sup, 2 periods)", sup, 1e-7);
    log.bound("truncated first integral drift", energy, 1e-8);

    // drift over one period at several phases
    double worst_drift = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double ts[] = {cfg.t0 + 0.37 * i * T, cfg.t0 + (0.37 * i + 1.0) * T};
      const auto s = elliptic_trajectory(w, cfg.beta, cfg.t0, ts);
      worst_drift = std::max(worst_drift, std::abs((s.samples[1].x - s.samples[0].x) - c * T) / std::abs(c * T));
    }
    log.bound("drift x(t+T)-x(t) = cT (relative)", worst_drift, 1e-8);
    const auto one = elliptic_trajectory(w, cfg.beta, cfg.t0, std::vector<double>{cfg.t0, cfg.t0 + T});
    log.add("drift sign equals sign of c", (one.samples[1].x - one.samples[0].x) * c > 0.0,
            "drift=" + io::format_sig(one.samples[1].x - one.samples[0].x, 6));
    log.info("phase winding per period", std::to_string(one.phase_winding.value_or(0)));
  } else {
    const auto& r2 = std::get<Case2Reduction>(red);
    const auto ta = asymptote_times(r2, cfg.t0, 0, 0).front();
    IntegratorConfig icfg;
    icfg.method = IntegratorMethod::RK45Adaptive;
    icfg.dt = 1e-4;
    icfg.t_start = cfg.t0;
    icfg.t_end = cfg.t0 + 2.0 * (ta - cfg.t0);
    const double out_t[] = {icfg.t_end};
    const auto num = integrate_truncated(P, r2.Z0, 0.0, icfg, out_t);
    if (!num.escape_state) {
      log.add("case2 blow-up time vs integrator", false, "integrator did not escape");
    } else {
      const double est = blowup_time_estimate(P, *num.escape_state);
      log.bound("case2 blow-up time vs integrator (relative)", std::abs(est - ta) / std::abs(ta - cfg.t0), 1e-4);
      log.info("case2 raw escape time (|Z|>1e3)", io::format_sig(*num.escape_time, 10));
    }
    const double K = complete_K(r2.k2sq);
    double worst = 0.0;
    for (double t : asymptote_times(r2, cfg.t0, -2, 2))
      worst = std::max(worst, std::abs(1.0 + jacobi_sn_cn_dn(r2.C2 * (t - cfg.t0), r2.k2sq).cn));
    log.bound("case2 |1+cn| at asymptote times", worst, 1e-9);
    log.info("case2 asymptote spacing 4K/C2", io::format_sig(4.0 * K / r2.C2, 10));
  }

  // Closed-form Z against the truncated equation by centred differences.
  {
    const double span = is_case1(red) ? period_case1(std::get<Case1Reduction>(red))
                                      : 4.0 * complete_K(std::get<Case2Reduction>(red).k2sq) /
                                            std::get<Case2Reduction>(red).C2;
    const auto times = uniform_times(cfg.t0, cfg.t0 + span, 401);
    auto Zat = [&](double t) {
      return is_case1(red) ? case1_Z(std::get<Case1Reduction>(red), t, cfg.t0)
                           : case2_Z(std::get<Case2Reduction>(red), t, cfg.t0);
    };
    double worst = 0.0, maxP = 0.0;
    const double h = 1e-5;
    for (double t : times) {
      try {
        const double Z = Zat(t);
        if (!is_case1(red) && Z > 20.0) continue;  // asymptote neighbourhood
        const double d = (Zat(t + h) - Zat(t - h)) / (2.0 * h);
        const double PZ = P(Z);
        if (PZ < 1e-3 * Pscale) continue;  // turning points
        maxP = std::max(maxP, std::abs(PZ));
        worst = std::max(worst, std::abs(d * d - PZ));
      } catch (const AsymptoteError&) {
      }
    }
    log.bound("closed form satisfies (dZ/dt)^2 = P(Z) (relative)", maxP > 0.0 ? worst / maxP : 0.0, 1e-6);
  }

  // Frame equivalence from the closed form's starting state.
  {
    const double first[] = {cfg.t_start};
    const auto start = elliptic_trajectory(w, cfg.beta, cfg.t0, first).samples.at(0);
    const double Tw = wave_period(w);
    const auto times = uniform_times(cfg.t_start, cfg.t_start + 10.0 * Tw, 1001);
    const auto icfg = IntegratorConfig::standard(w, cfg.t_start, cfg.t_start + 10.0 * Tw);
    const auto full = integrate_full(w, start.x, start.z, icfg, times);
    const auto moving = integrate_moving_frame(w, start.X, start.Z, icfg, times);
    double sup = 0.0;
    for (std::size_t i = 0; i < full.samples.size(); ++i) {
      const auto& a = full.samples[i];
      const auto& b = moving.samples[i];
      sup = std::max({sup, std::abs(k * (a.x - c * a.t) - b.X), std::abs(k * a.z - b.Z)});
    }
    log.bound("frame equivalence full vs moving (10 wave periods)", sup, 1e-8);

    const double dZdt0 = k * A * std::exp(start.Z) * std::sin(start.X);
    const auto cand = beta_from_initial(w, start.Z, dZdt0);
    const double hamiltonian = k * c * start.Z - k * A * std::exp(start.Z) * std::cos(start.X);
    const double beta_exact =
        std::abs(cand.beta_plus - hamiltonian) < std::abs(cand.beta_minus - hamiltonian) ? cand.beta_plus
                                                                                          : cand.beta_minus;
    const auto rep = residual_full_Z_ode(w, beta_exact, z_series_of(w, moving));
    log.bound("untruncated Z-equation along integrated path", rep.max_residual_eq1, 1e-8);

    const auto closed = elliptic_trajectory(w, cfg.beta, cfg.t0, times);
    ZSeries zs;
    for (const auto& s : closed.samples) {
      const double dz = is_case1(red) ? case1_dZdt(std::get<Case1Reduction>(red), s.t, cfg.t0)
                                      : case2_dZdt(std::get<Case2Reduction>(red), s.t, cfg.t0);
      zs.samples.push_back({s.t, s.Z, dz});
    }
    const auto gap = residual_full_Z_ode(w, cfg.beta, zs);
    log.info("truncation gap of closed form (untruncated residual)", io::format_sig(gap.max_residual_eq1, 6));
  }

  // RK4 order.
  {
    const double first[] = {cfg.t_start};
    const auto start = elliptic_trajectory(w, cfg.beta, cfg.t0, first).samples.at(0);
    const double Tw = wave_period(w);
    const auto r = rk4_convergence_ratios(w, start.X, start.Z, Tw / 50.0, Tw);
    bool ok = true;
    std::string detail;
    for (double v : r) {
      ok = ok && v >= 12.0 && v <= 20.0;
      detail += (detail.empty() ? "" : ",") + io::format_sig(v, 4);
    }
    log.add("RK4 dt-halving ratios in [12,20]", ok, "ratios=" + detail);
  }

  // Corrupted beta must be rejected when it leaves the admissible band.
  {
    const double span = *elliptic_trajectory(w, cfg.beta, cfg.t0, std::vector<double>{cfg.t0}).period;
    ZSeries zs;
    for (double frac : {0.0, 0.25, 0.5}) {
      const double t = cfg.t0 + frac * span;
      if (const auto* r1 = std::get_if<Case1Reduction>(&red))
        zs.samples.push_back({t, case1_Z(*r1, t, cfg.t0), case1_dZdt(*r1, t, cfg.t0)});
      else if (frac < 0.5)  // half a Case 2 period is the asymptote itself
        zs.samples.push_back({t, case2_Z(std::get<Case2Reduction>(red), t, cfg.t0),
                              case2_dZdt(std::get<Case2Reduction>(red), t, cfg.t0)});
    }
    bool rejected = false;
    try {
      assemble_xz(w, cfg.beta + 1.0, zs, CaseTag::Case1);
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::ContractViolation;
    }
    if (rejected) log.add("corrupted beta+1 rejected", true, "ContractViolation");
    else log.info("corrupted beta+1 rejected", "band still admissible; path not triggered");
  }

  // Stagnation solutions.
  try {
    const auto rep = solve_stagnation(w, cfg.beta, cfg.z_min, cfg.z_max, cfg.grid);
    double worst = 0.0;
    for (const auto& s : rep.solutions)
      worst = std::max(worst, s.residual / std::max(std::abs(k * A) * std::exp(s.Z_star), 1.0));
    log.bound("stagnation residuals (scaled)", worst, 1e-10);
    log.info("stagnation count", std::to_string(rep.count()));
  } catch (const Error& e) {
    log.info("stagnation count", "0 (" + std::string(to_string(e.code())) + ")");
  }
  return log;
}

}  // namespace deepwave
