#include "gca/error.hpp"

namespace gca {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IdempotencyViolation: return "IdempotencyViolation";
    case ErrorCode::CommutativityViolation: return "CommutativityViolation";
    case ErrorCode::AssociativityViolation: return "AssociativityViolation";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::NoBottom: return "NoBottom";
    case ErrorCode::NotSubsemilattice: return "NotSubsemilattice";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotMultiplicative: return "NotMultiplicative";
    case ErrorCode::NotStarPreserving: return "NotStarPreserving";
    case ErrorCode::MissingHom: return "MissingHom";
    case ErrorCode::AxiomAViolation: return "AxiomAViolation";
    case ErrorCode::AxiomBViolation: return "AxiomBViolation";
    case ErrorCode::HomNotStar: return "HomNotStar";
    case ErrorCode::PathDependent: return "PathDependent";
    case ErrorCode::QAxiomViolation: return "QAxiomViolation";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::NotFinishing: return "NotFinishing";
    case ErrorCode::IncompatibleFamily: return "IncompatibleFamily";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::QuotientDegenerate: return "QuotientDegenerate";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::ComponentNotCommutative: return "ComponentNotCommutative";
    case ErrorCode::CoverageMismatch: return "CoverageMismatch";
    case ErrorCode::NotAllScalar: return "NotAllScalar";
    case ErrorCode::BijectionFailure: return "BijectionFailure";
    case ErrorCode::NotCofinal: return "NotCofinal";
    case ErrorCode::NoLeastElement: return "NoLeastElement";
    case ErrorCode::NonUnitalStructureMap: return "NonUnitalStructureMap";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
    case ErrorCode::BadN: return "BadN";
    case ErrorCode::NotUnitalSpan: return "NotUnitalSpan";
    case ErrorCode::NotStarClosed: return "NotStarClosed";
    case ErrorCode::NotSubalgebra: return "NotSubalgebra";
    case ErrorCode::DegenerateGenerator: return "DegenerateGenerator";
    case ErrorCode::NonIntegralBlock: return "NonIntegralBlock";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::ActionInvalid: return "ActionInvalid";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::NotIntersectionClosed: return "NotIntersectionClosed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::MissingHom:
    case ErrorCode::BadN:
      return ErrorCategory::Input;
    case ErrorCode::DegenerateGenerator:
    case ErrorCode::NonIntegralBlock:
    case ErrorCode::NotUnitalSpan:
    case ErrorCode::NotStarClosed:
    case ErrorCode::NotSubalgebra:
    case ErrorCode::OracleMismatch:
    case ErrorCode::CoverageMismatch:
    case ErrorCode::BijectionFailure:
    case ErrorCode::QuotientDegenerate:
      return ErrorCategory::Numeric;
    default:
      return ErrorCategory::Check;
  }
}

}  // namespace gca
