#pragma once

#include <stdexcept>
#include <string>

namespace qsep {

// Every failure mode in the library carries one of these codes. The CLI maps
// codes to exit statuses, so the set is part of the external contract.
enum class Err {
  NotSquare,
  DimMismatch,
  NotHermitian,
  TraceNotOne,
  NotPositive,
  BadSubsystemIndex,
  ShapeMismatch,
  ConvergenceFailure,
  NotNormalized,
  NotBipartite,
  NoSignChange,
  TolTooSmall,
  BadRank,
  UnknownState,
  ParamOutOfRange,
  BadPermutation,
  UnequalLocalDims,
  BadFamily,
  ParseError,
  Usage,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NotSquare: return "NotSquare";
    case Err::DimMismatch: return "DimMismatch";
    case Err::NotHermitian: return "NotHermitian";
    case Err::TraceNotOne: return "TraceNotOne";
    case Err::NotPositive: return "NotPositive";
    case Err::BadSubsystemIndex: return "BadSubsystemIndex";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::ConvergenceFailure: return "ConvergenceFailure";
    case Err::NotNormalized: return "NotNormalized";
    case Err::NotBipartite: return "NotBipartite";
    case Err::NoSignChange: return "NoSignChange";
    case Err::TolTooSmall: return "TolTooSmall";
    case Err::BadRank: return "BadRank";
    case Err::UnknownState: return "UnknownState";
    case Err::ParamOutOfRange: return "ParamOutOfRange";
    case Err::BadPermutation: return "BadPermutation";
    case Err::UnequalLocalDims: return "UnequalLocalDims";
    case Err::BadFamily: return "BadFamily";
    case Err::ParseError: return "ParseError";
    case Err::Usage: return "Usage";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace qsep
