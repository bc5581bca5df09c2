#pragma once

#include <stdexcept>
#include <string>

namespace subordkit {

/// Failure categories surfaced by evaluation, scanning, and CLI routines.
enum class ErrorKind {
  BranchCut,      ///< principal-branch argument landed on the cut
  Pole,           ///< exact pole hit during evaluation
  OutsideDisk,    ///< evaluation point outside the closed unit disk
  StepUnderflow,  ///< finite-difference step vanished at working precision
  NonRemovable,   ///< limit diverges across approach rays
  DomainParam,    ///< parameter outside its documented range
  Config,         ///< invalid configuration, grid, or serialized input
  Runtime,        ///< any other evaluation failure
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BranchCut: return "branch-cut";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::OutsideDisk: return "outside-disk";
    case ErrorKind::StepUnderflow: return "step-underflow";
    case ErrorKind::NonRemovable: return "non-removable";
    case ErrorKind::DomainParam: return "domain-param";
    case ErrorKind::Config: return "config";
    case ErrorKind::Runtime: return "runtime";
  }
  return "unknown";
}

/// Exception carrying a machine-readable failure category alongside the
/// human-readable message.
class EvalError : public std::runtime_error {
 public:
  EvalError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace subordkit
