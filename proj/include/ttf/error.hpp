#pragma once

#include <stdexcept>
#include <string>

namespace ttf {

// Every failure the library can signal deliberately.  CLI maps kinds to exit codes.
enum class ErrorKind {
    ShapeMismatch,
    ModulusMismatch,
    AmbientMismatch,
    NotPrime,
    AssociativityViolation,
    UnitViolation,
    ActionIncompatible,
    InfiniteDimensional,
    NotIdempotent,
    NotIdempotentIdeal,
    NotTwoSided,
    NotInvariant,
    NotRightSplit,
    SubmoduleLatticeTooLarge,
    LatticeTooLarge,
    BoundExceeded,
    ParseError,
    Internal,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

const char* error_kind_name(ErrorKind k);

} // namespace ttf
