// Library usage: classify the three reference scenarios and print their
// elliptic data, drift and asymptotes.

#include <cstdio>
#include <variant>

#include "deepwave/cubic.hpp"
#include "deepwave/stagnation.hpp"
#include "deepwave/trajectories.hpp"

int main() {
  using namespace deepwave;
  struct Scenario {
    double k, beta;
  };
  for (const auto& s : {Scenario{1, 1}, Scenario{2, -1}, Scenario{4, 1}}) {
    const auto w = WaveParams::make(s.k, 0.1, 9.8);
    const double c = dispersion_speed(w);
    std::printf("k=%g beta=%g  c=%.6g A=%.6g\n", s.k, s.beta, c, trajectory_constant(w));
    const auto red = classify_roots(build_cubic(w, s.beta), w);
    if (const auto* r = std::get_if<Case1Reduction>(&red)) {
      const double T = period_case1(*r);
      std::printf("  case 1: Z in [%.9f, %.9f], m=%.9g, C1=%.9g, T=%.9g, drift cT=%.9g\n", r->Z1, r->Z2, r->k1sq,
                  r->C1, T, c * T);
    } else {
      const auto& r2 = std::get<Case2Reduction>(red);
      const auto ts = asymptote_times(r2, 0.0, 0, 2);
      std::printf("  case 2: Z0=%.9f, m=%.9g, C2=%.9g, asymptotes at t=%.9g, %.9g, %.9g\n", r2.Z0, r2.k2sq, r2.C2,
                  ts[0], ts[1], ts[2]);
    }
    const auto stag = solve_stagnation(w, s.beta);
    std::printf("  %zu stagnation solution(s):", stag.count());
    for (const auto& sol : stag.solutions) std::printf(" %.9g", sol.Z_star);
    std::printf("\n");
  }
}
