#pragma once

#include <stdexcept>
#include <string>

namespace chaoscert {

// Every failure the library reports, one code per failure class. The CLI
// maps these onto its exit codes; tests match on them.
enum class Errc {
  // matrix
  NotSquare,
  NonBinaryEntry,
  ZeroRowOrColumn,
  NotIrreducible,
  Overflow,
  BudgetExceeded,
  HypothesisViolated,
  TooShort,
  NotAdmissible,
  // symbolic
  CycleMismatch,
  CriterionFailed,
  DepthExplosion,
  SelfLoopMissing,
  // systems
  DomainViolation,
  NotMonotone,
  EmptyPreimage,
  NonIncreasingTimes,
  // certification
  Overlapping,
  NotExpanding,
  TailNotAnalyzable,
  RowSumCondition,
  CoveringFailed,
  Marginal,
  // synthesis
  DepthTooLarge,
  TolTooTight,
  IncompatibleSchedules,
  NoMonotonePreimage,
  // diagnostics
  HorizonTooShort,
  // i/o
  ParseError,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::NonBinaryEntry: return "NonBinaryEntry";
    case Errc::ZeroRowOrColumn: return "ZeroRowOrColumn";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::Overflow: return "Overflow";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::TooShort: return "TooShort";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::CycleMismatch: return "CycleMismatch";
    case Errc::CriterionFailed: return "CriterionFailed";
    case Errc::DepthExplosion: return "DepthExplosion";
    case Errc::SelfLoopMissing: return "SelfLoopMissing";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::NotMonotone: return "NotMonotone";
    case Errc::EmptyPreimage: return "EmptyPreimage";
    case Errc::NonIncreasingTimes: return "NonIncreasingTimes";
    case Errc::Overlapping: return "Overlapping";
    case Errc::NotExpanding: return "NotExpanding";
    case Errc::TailNotAnalyzable: return "TailNotAnalyzable";
    case Errc::RowSumCondition: return "RowSumCondition";
    case Errc::CoveringFailed: return "CoveringFailed";
    case Errc::Marginal: return "Marginal";
    case Errc::DepthTooLarge: return "DepthTooLarge";
    case Errc::TolTooTight: return "TolTooTight";
    case Errc::IncompatibleSchedules: return "IncompatibleSchedules";
    case Errc::NoMonotonePreimage: return "NoMonotonePreimage";
    case Errc::HorizonTooShort: return "HorizonTooShort";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

// Slack applied to every strict certified inequality; margins below it are
// "marginal" and rejected unless explicitly allowed.
inline constexpr double kEpsSlack = 1e-12;

// Endpoint tolerance of the double-precision inverse-branch solver.
inline constexpr double kTolInv = 1e-14;

}  // namespace chaoscert
