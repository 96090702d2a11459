#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace motionlab {

enum class ErrorKind {
  PointOutsideDisk,
  NegativeValue,
  InvalidC,
  RatioOutOfRange,
  EmptySystem,
  ExplosionGuard,
  BadAddress,
  NonPositiveHarmonic,
  DiskPackingFailed,
  BadArity,
  DegenerateCloud,
  ScaleOverflow,
  WindowTooSmall,
  DimOutOfRange,
  AreaOutOfRange,
  KOutOfRange,
  DeltaOutOfRange,
  DegenerateSubset,
  CircleOutsideDomain,
  InvalidArgument,
  ConfigError,
  IoError,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PointOutsideDisk: return "PointOutsideDisk";
    case ErrorKind::NegativeValue: return "NegativeValue";
    case ErrorKind::InvalidC: return "InvalidC";
    case ErrorKind::RatioOutOfRange: return "RatioOutOfRange";
    case ErrorKind::EmptySystem: return "EmptySystem";
    case ErrorKind::ExplosionGuard: return "ExplosionGuard";
    case ErrorKind::BadAddress: return "BadAddress";
    case ErrorKind::NonPositiveHarmonic: return "NonPositiveHarmonic";
    case ErrorKind::DiskPackingFailed: return "DiskPackingFailed";
    case ErrorKind::BadArity: return "BadArity";
    case ErrorKind::DegenerateCloud: return "DegenerateCloud";
    case ErrorKind::ScaleOverflow: return "ScaleOverflow";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::DimOutOfRange: return "DimOutOfRange";
    case ErrorKind::AreaOutOfRange: return "AreaOutOfRange";
    case ErrorKind::KOutOfRange: return "KOutOfRange";
    case ErrorKind::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorKind::DegenerateSubset: return "DegenerateSubset";
    case ErrorKind::CircleOutsideDomain: return "CircleOutsideDomain";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Domain error carrying a machine-readable kind. The CLI maps these to exit
/// code 3 and prints the kind name on stderr.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace motionlab
