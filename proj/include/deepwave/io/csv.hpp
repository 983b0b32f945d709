#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "deepwave/io/format.hpp"
#include "deepwave/trajectories.hpp"

namespace deepwave::io {

inline constexpr std::string_view kTrajectoryCsvHeader = "t,x,z,X,Z";

// Header `t,x,z,X,Z` then one row per sample, 17 significant digits, '\n' endings.
inline void write_trajectory_csv(std::ostream& os, const TrajectorySeries& series) {
  os << kTrajectoryCsvHeader << '\n';
  for (const auto& s : series.samples) {
    os << format_g17(s.t) << ',' << format_g17(s.x) << ',' << format_g17(s.z) << ',' << format_g17(s.X) << ','
       << format_g17(s.Z) << '\n';
  }
}

}  // namespace deepwave::io
