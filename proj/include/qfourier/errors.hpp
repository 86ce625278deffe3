#pragma once

#include <stdexcept>
#include <string>

namespace qfourier {

enum class ErrorKind {
  Input,          // malformed or inconsistent input
  Singular,       // non-invertible element
  Truncation,     // series too short for the requested result
  IllDefined,     // Kirwan image or transform not defined
  EmptyQuotient,
  Wall,           // parameter on a wall
  Pole,           // Gamma pole or contour on a pole
  Divergence,     // series/integral does not converge to tolerance
  Numeric,        // numerical solver failure
  Orbifold,
  Unsupported,    // rank, positive twist, non-isolated locus
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// CLI exit code for an error kind: 2 validation, 3 numeric, 4 unsupported.
int exitCode(ErrorKind kind);
const char* kindName(ErrorKind kind);

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qfourier
