#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gpdact {

enum class ErrorKind {
  Parse,
  MissingComposite,
  AssociativityViolation,
  MissingInverse,
  NonUniqueIdentity,
  NotAGroup,
  EmptySet,
  NotSkeletal,
  InvalidProfunctor,
  NaturalityViolation,
  StageMismatch,
  TypeMismatch,
  WellDefinednessFailure,
  VerificationFailure,
  CapExceeded,
  InvalidElement,
  NonAbelian,
  Unnormalized,
  Unsupported,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure carries a kind plus a human-readable witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gpdact
