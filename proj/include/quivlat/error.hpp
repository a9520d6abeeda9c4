#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quivlat {

/// Domain error taxonomy. The names are part of the CLI contract.
enum class ErrorKind {
  ParseError,
  FileNotFound,
  InvalidArgument,
  DimensionMismatch,
  IncompatibleRing,
  IncompatibleBase,
  NotProjective,
  NotComputable,
  NonFreeCokernel,
  InvalidMorphism,
  RankMismatch,
  Inconclusive,
  TheoremViolation,
  PreconditionViolated,
  NeitherMonoNorEpi,
  CyclicQuiver,
  NotSchurRoot,
  BoundExceeded,
  NotRigid,
  AmbiguousDecomposition,
  PeelFailure,
  NotNilpotentKernel,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IncompatibleRing: return "IncompatibleRing";
    case ErrorKind::IncompatibleBase: return "IncompatibleBase";
    case ErrorKind::NotProjective: return "NotProjective";
    case ErrorKind::NotComputable: return "NotComputable";
    case ErrorKind::NonFreeCokernel: return "NonFreeCokernel";
    case ErrorKind::InvalidMorphism: return "InvalidMorphism";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NeitherMonoNorEpi: return "NeitherMonoNorEpi";
    case ErrorKind::CyclicQuiver: return "CyclicQuiver";
    case ErrorKind::NotSchurRoot: return "NotSchurRoot";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::NotRigid: return "NotRigid";
    case ErrorKind::AmbiguousDecomposition: return "AmbiguousDecomposition";
    case ErrorKind::PeelFailure: return "PeelFailure";
    case ErrorKind::NotNilpotentKernel: return "NotNilpotentKernel";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace quivlat
