#include "qfan/errors.hpp"

namespace qfan {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::NoRootInInterval: return "NoRootInInterval";
    case ErrorCode::MultipleRootsInInterval: return "MultipleRootsInInterval";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::NonIntegerWeight: return "NonIntegerWeight";
    case ErrorCode::NotRational: return "NotRational";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::CenterNotInCone: return "CenterNotInCone";
    case ErrorCode::IndexNotAvailable: return "IndexNotAvailable";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::UnequalSupport: return "UnequalSupport";
    case ErrorCode::EmptyWitness: return "EmptyWitness";
    case ErrorCode::ChainMismatch: return "ChainMismatch";
    case ErrorCode::DegeneratePolytope: return "DegeneratePolytope";
    case ErrorCode::NotAFacet: return "NotAFacet";
    case ErrorCode::FacetsIntersect: return "FacetsIntersect";
    case ErrorCode::NotElementary: return "NotElementary";
    case ErrorCode::EmptySlice: return "EmptySlice";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::MissingCombinationColumn: return "MissingCombinationColumn";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::UnionsDiffer: return "UnionsDiffer";
    case ErrorCode::NotValid: return "NotValid";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::ChamberLeft: return "ChamberLeft";
    case ErrorCode::VirtualMismatch: return "VirtualMismatch";
    case ErrorCode::UnrenderableDimension: return "UnrenderableDimension";
  }
  return "Unknown";
}

}  // namespace qfan
