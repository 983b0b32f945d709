#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace deepwave {

enum class ErrorCode {
  ParameterDomain,
  DegenerateRoots,
  ContractViolation,
  AsymptoteProximity,
  StiffnessError,
  EmptyReport,
  Usage,
};

// Stable identifiers used as the machine-parsable prefix of CLI error lines.
constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParameterDomain: return "ParameterDomain";
    case ErrorCode::DegenerateRoots: return "DegenerateRoots";
    case ErrorCode::ContractViolation: return "ContractViolation";
    case ErrorCode::AsymptoteProximity: return "AsymptoteProximity";
    case ErrorCode::StiffnessError: return "StiffnessError";
    case ErrorCode::EmptyReport: return "EmptyReport";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Carries the nearest asymptote time so callers can step around it.
class AsymptoteError : public Error {
 public:
  AsymptoteError(const std::string& what, double nearest_time)
      : Error(ErrorCode::AsymptoteProximity, what), nearest_time_(nearest_time) {}

  double nearest_time() const noexcept { return nearest_time_; }

 private:
  double nearest_time_;
};

// Carries the last accepted integrator state.
class StiffnessFailure : public Error {
 public:
  StiffnessFailure(const std::string& what, double t, double y0, double y1)
      : Error(ErrorCode::StiffnessError, what), t_(t), y0_(y0), y1_(y1) {}

  double time() const noexcept { return t_; }
  double state0() const noexcept { return y0_; }
  double state1() const noexcept { return y1_; }

 private:
  double t_, y0_, y1_;
};

}  // namespace deepwave
