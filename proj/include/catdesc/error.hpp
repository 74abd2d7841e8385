#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace catdesc {

enum class ErrorKind {
  MissingIdentity,
  NonClosedComposition,
  IdentityLawViolation,
  AssociativityViolation,
  DanglingReference,
  DuplicateIdentifier,
  NotAFunctor,
  DomainMismatch,
  CodomainMismatch,
  InvalidPresentation,
  IncompleteSystem,
  ParseError,
  SchemaError,
  ResourceExceeded,
  ConsistencyViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The message carries the witness
/// (offending identifiers, triple, relation) so negatives can be checked
/// by hand.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Outcome of a check that either passes or names what broke.
struct CheckResult {
  bool ok = true;
  std::string witness;

  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string w) { return {false, std::move(w)}; }
  explicit operator bool() const noexcept { return ok; }
};

}  // namespace catdesc
