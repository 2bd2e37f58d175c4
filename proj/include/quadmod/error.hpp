#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace quadmod {

enum class ErrorKind {
  InvalidInput,
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotHomomorphism,
  NotAction,
  BoundExceeded,
  NotNormal,
  NotAbelian,
  NotEquivariant,
  NotNil2,
  NotWellDefined,
  AxiomFailure,
  PreconditionFailure,
  OmegaNotTrivial,
  NotMonomorphism,
  NotEpimorphism,
  NotMorphism,
  NoFactorization,
  NonUnique,
  NotComputable,
  SyntaxError,
  UnresolvedReference,
  TypeMismatch,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::NotAction: return "NotAction";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::NotNil2: return "NotNil2";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::AxiomFailure: return "AxiomFailure";
    case ErrorKind::PreconditionFailure: return "PreconditionFailure";
    case ErrorKind::OmegaNotTrivial: return "OmegaNotTrivial";
    case ErrorKind::NotMonomorphism: return "NotMonomorphism";
    case ErrorKind::NotEpimorphism: return "NotEpimorphism";
    case ErrorKind::NotMorphism: return "NotMorphism";
    case ErrorKind::NoFactorization: return "NoFactorization";
    case ErrorKind::NonUnique: return "NonUnique";
    case ErrorKind::NotComputable: return "NotComputable";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnresolvedReference: return "UnresolvedReference";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this type. `witness`
/// holds the element indices (or other small integers) that exhibit the
/// failure, in the order documented by the throwing operation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::int64_t> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::int64_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::int64_t> witness_;
};

namespace detail {

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

}  // namespace detail

}  // namespace quadmod
