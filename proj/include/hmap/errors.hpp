#pragma once

#include <stdexcept>
#include <string>

namespace hmap {

// Base of every error thrown by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input errors (bad files, bad complexes, invalid parameters).
class InputError : public Error {
public:
  using Error::Error;
};

// Numerical failures of a solver or certificate.
class SolverError : public Error {
public:
  using Error::Error;
};

#define HMAP_DECLARE_ERROR(Name, Base) \
  class Name : public Base {           \
  public:                              \
    using Base::Base;                  \
  };

HMAP_DECLARE_ERROR(DomainError, InputError)
HMAP_DECLARE_ERROR(NonManifoldError, InputError)
HMAP_DECLARE_ERROR(OrientationError, InputError)
HMAP_DECLARE_ERROR(GenusError, InputError)
HMAP_DECLARE_ERROR(MonotonicityError, InputError)
HMAP_DECLARE_ERROR(TriangleError, InputError)

HMAP_DECLARE_ERROR(RankError, SolverError)
HMAP_DECLARE_ERROR(ConvergenceError, SolverError)
HMAP_DECLARE_ERROR(DegenerateEdgeError, SolverError)
HMAP_DECLARE_ERROR(ClosureError, SolverError)
HMAP_DECLARE_ERROR(NegativeWeightError, SolverError)
HMAP_DECLARE_ERROR(InconsistentWeightError, SolverError)
HMAP_DECLARE_ERROR(NonSpacelikeError, SolverError)
HMAP_DECLARE_ERROR(CotangentPoleError, SolverError)

#undef HMAP_DECLARE_ERROR

// Parse failure with a 1-based source location.
class ParseError : public InputError {
public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : InputError(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    std::string loc = "line " + std::to_string(line);
    if (column > 0) loc += ", column " + std::to_string(column);
    return loc + ": " + what;
  }

  int line_;
  int column_;
};

}  // namespace hmap
