#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kswitch {

enum class ErrorCode {
  DuplicateEdge,
  SelfLoop,
  NodeOutOfRange,
  KTooLarge,
  InvalidArgument,
  StarterViolatesConstraint,
  MissingColorData,
  NNotDivisibleBy3,
  NotBipartite,
  NotTrianglePartition,
  InsufficientSamples,
  InstanceTooLarge,
  RegularityViolation,
  AsymmetryDetected,
  ConfigInvalid,
  ParseError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::StarterViolatesConstraint: return "StarterViolatesConstraint";
    case ErrorCode::MissingColorData: return "MissingColorData";
    case ErrorCode::NNotDivisibleBy3: return "NNotDivisibleBy3";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::NotTrianglePartition: return "NotTrianglePartition";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::RegularityViolation: return "RegularityViolation";
    case ErrorCode::AsymmetryDetected: return "AsymmetryDetected";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kswitch
