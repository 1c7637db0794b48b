#pragma once

#include <stdexcept>
#include <string>

namespace qfan {

// Machine-readable error codes surfaced by the CLI as {"code", "message"}.
enum class ErrorCode {
  ParseError,
  Reducible,
  NoRootInInterval,
  MultipleRootsInInterval,
  DegreeCapExceeded,
  FieldMismatch,
  DimensionMismatch,
  NotInvertible,
  Infeasible,
  NonIntegral,
  NotContained,
  NonIntegerWeight,
  NotRational,
  NonPositiveWeight,
  CenterNotInCone,
  IndexNotAvailable,
  UnsupportedDimension,
  UnequalSupport,
  EmptyWitness,
  ChainMismatch,
  DegeneratePolytope,
  NotAFacet,
  FacetsIntersect,
  NotElementary,
  EmptySlice,
  NotAdmissible,
  BudgetExhausted,
  MissingCombinationColumn,
  NotComplete,
  UnionsDiffer,
  NotValid,
  NotInterior,
  ChamberLeft,
  VirtualMismatch,
  UnrenderableDimension,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) {
  throw Error(c, msg);
}

}  // namespace qfan
