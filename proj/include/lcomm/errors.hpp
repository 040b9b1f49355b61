#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcomm {

enum class ErrorKind {
  DimensionMismatch,
  NotSquare,
  NotSquareAmbient,
  SingularU,
  BadSplit,
  SpectrumIncomplete,
  SpectraOverlap,
  BadIndex,
  NotNilpotent,
  PreconditionViolated,
  ZeroWeight,
  ParseError,
  InternalInconsistency,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotSquareAmbient: return "NotSquareAmbient";
    case ErrorKind::SingularU: return "SingularU";
    case ErrorKind::BadSplit: return "BadSplit";
    case ErrorKind::SpectrumIncomplete: return "SpectrumIncomplete";
    case ErrorKind::SpectraOverlap: return "SpectraOverlap";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ZeroWeight: return "ZeroWeight";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the CLI
/// exit-code mapping) can tell data errors from internal inconsistencies.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace lcomm
