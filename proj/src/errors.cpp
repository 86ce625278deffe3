#include "qfourier/errors.hpp"

namespace qfourier {

int exitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Divergence:
    case ErrorKind::Numeric:
    case ErrorKind::Pole:
      return 3;
    case ErrorKind::Orbifold:
    case ErrorKind::Unsupported:
      return 4;
    default:
      return 2;
  }
}

const char* kindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::IllDefined: return "ill-defined";
    case ErrorKind::EmptyQuotient: return "empty-quotient";
    case ErrorKind::Wall: return "wall";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Orbifold: return "orbifold";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

}  // namespace qfourier
