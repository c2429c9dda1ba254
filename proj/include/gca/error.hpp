#pragma once

#include <stdexcept>
#include <string>

namespace gca {

enum class ErrorCode {
  // semilattice
  IdempotencyViolation,
  CommutativityViolation,
  AssociativityViolation,
  IndexOutOfRange,
  EmptySet,
  BoundExceeded,
  NoBottom,
  NotSubsemilattice,
  // finite-dimensional algebra
  ShapeMismatch,
  NotMultiplicative,
  NotStarPreserving,
  // graded algebras
  MissingHom,
  AxiomAViolation,
  AxiomBViolation,
  HomNotStar,
  PathDependent,
  QAxiomViolation,
  SpecMismatch,
  NotFinishing,
  IncompatibleFamily,
  NotAnIdeal,
  QuotientDegenerate,
  // spectra
  NotCommutative,
  ComponentNotCommutative,
  CoverageMismatch,
  NotAllScalar,
  BijectionFailure,
  NotCofinal,
  NoLeastElement,
  NonUnitalStructureMap,
  OracleMismatch,
  BadN,
  // k-theory
  NotUnitalSpan,
  NotStarClosed,
  NotSubalgebra,
  DegenerateGenerator,
  NonIntegralBlock,
  RankMismatch,
  NotUnimodular,
  // groups and products
  NotAGroup,
  ActionInvalid,
  NotASubgroup,
  NotIntersectionClosed,
  // workbench
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code);

/// Coarse classification used for CLI exit codes.
enum class ErrorCategory { Input, Check, Numeric };

ErrorCategory category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace gca
