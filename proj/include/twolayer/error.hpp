#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace twolayer {

enum class ErrorKind {
  // curves
  EmptyLines,
  NotConcaveRepresentable,
  NegativeAtZero,
  InvalidLine,
  InvalidBreakpoints,
  OutOfDomain,
  AtBreakpoint,
  // network / allocation
  InvalidNetwork,
  InfeasibleAllocation,
  MissingSensorEntry,
  // meshes and tables
  NonpositiveStep,
  NegativeBudget,
  NonDivisibleBudget,
  DomainExceeded,
  MeshMismatch,
  BranchMismatch,
  // oracle
  EnumerationTooLarge,
  // io
  SyntaxError,
  UnknownField,
  SemanticError,
  SinkFailure,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyLines: return "EmptyLines";
    case ErrorKind::NotConcaveRepresentable: return "NotConcaveRepresentable";
    case ErrorKind::NegativeAtZero: return "NegativeAtZero";
    case ErrorKind::InvalidLine: return "InvalidLine";
    case ErrorKind::InvalidBreakpoints: return "InvalidBreakpoints";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::AtBreakpoint: return "AtBreakpoint";
    case ErrorKind::InvalidNetwork: return "InvalidNetwork";
    case ErrorKind::InfeasibleAllocation: return "InfeasibleAllocation";
    case ErrorKind::MissingSensorEntry: return "MissingSensorEntry";
    case ErrorKind::NonpositiveStep: return "NonpositiveStep";
    case ErrorKind::NegativeBudget: return "NegativeBudget";
    case ErrorKind::NonDivisibleBudget: return "NonDivisibleBudget";
    case ErrorKind::DomainExceeded: return "DomainExceeded";
    case ErrorKind::MeshMismatch: return "MeshMismatch";
    case ErrorKind::BranchMismatch: return "BranchMismatch";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownField: return "UnknownField";
    case ErrorKind::SemanticError: return "SemanticError";
    case ErrorKind::SinkFailure: return "SinkFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. The kind is stable and machine
/// checkable; the message is for humans and always starts with the kind name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail,
        std::optional<int> line = std::nullopt)
      : std::runtime_error(format(kind, detail, line)), kind_(kind), line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<int> line() const noexcept { return line_; }

 private:
  static std::string format(ErrorKind kind, const std::string& detail,
                            std::optional<int> line) {
    std::string out(to_string(kind));
    if (line) out += " (line " + std::to_string(*line) + ")";
    if (!detail.empty()) out += ": " + detail;
    return out;
  }

  ErrorKind kind_;
  std::optional<int> line_;
};

}  // namespace twolayer
