#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monotone {

enum class Errc {
  ShapeMismatch,
  NonFiniteValue,
  NonIncreasingAxis,
  GridMismatch,
  EmptyInput,
  OutOfRange,
  NonEquidistantAxis,
  AxisOutOfRange,
  EmptyOrderingSet,
  InvalidOrdering,
  InfeasibleConstraint,
  NonPositiveWeight,
  IndexOutOfRange,
  LambdaOutOfRange,
  NegativeStderr,
  InvalidBand,
  TooFewDraws,
  AllNodesDegenerate,
  InvalidSpec,
  EmptyWindow,
  RankDeficientDesign,
  IrlsNoConvergence,
  OutOfDomain,
  BootstrapFailure,
  InvalidConfig,
  ParseError,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

// Numerical failures map to CLI exit code 2, everything else to 1.
constexpr bool is_numerical(Errc code) noexcept {
  return code == Errc::RankDeficientDesign || code == Errc::IrlsNoConvergence ||
         code == Errc::BootstrapFailure || code == Errc::EmptyWindow ||
         code == Errc::AllNodesDegenerate;
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }
  bool numerical() const noexcept { return is_numerical(code_); }

private:
  Errc code_;
};

}  // namespace monotone
