#pragma once

#include <stdexcept>
#include <string>

namespace solvric {

/// Base of every error raised by the library. `kind()` is a stable short tag
/// that the CLI reports verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define SOLVRIC_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  };

SOLVRIC_DEFINE_ERROR(DimensionMismatch)
SOLVRIC_DEFINE_ERROR(InvalidInput)
SOLVRIC_DEFINE_ERROR(JacobiViolated)
SOLVRIC_DEFINE_ERROR(NotADerivation)
SOLVRIC_DEFINE_ERROR(NotSolvable)
SOLVRIC_DEFINE_ERROR(NotNilpotent)
SOLVRIC_DEFINE_ERROR(NotSolvableFamily)
SOLVRIC_DEFINE_ERROR(NoCommonEigenvector)
SOLVRIC_DEFINE_ERROR(VerificationFailed)
SOLVRIC_DEFINE_ERROR(NotPositiveDefinite)
SOLVRIC_DEFINE_ERROR(NilradicalMismatch)
SOLVRIC_DEFINE_ERROR(RankTooHigh)
SOLVRIC_DEFINE_ERROR(Singular)
SOLVRIC_DEFINE_ERROR(Diverging)
SOLVRIC_DEFINE_ERROR(BudgetExhausted)
SOLVRIC_DEFINE_ERROR(NotHamiltonian)
SOLVRIC_DEFINE_ERROR(NotSemisimple)
SOLVRIC_DEFINE_ERROR(HullCoefficientNonpositive)
SOLVRIC_DEFINE_ERROR(PreconditionFailed)

#undef SOLVRIC_DEFINE_ERROR

/// Input-file error carrying a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("ParseError", what + " (line " + std::to_string(line) +
                                ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace solvric
