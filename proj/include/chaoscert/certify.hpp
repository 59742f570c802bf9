#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaoscert/matrix.hpp"
#include "chaoscert/system.hpp"

namespace chaoscert {

// Which chaos criterion a certificate was issued under. T31/C1/C2 work on
// bounded closed sets, T41/T42 on compact ones; on the interval backend the
// checks coincide and the route mainly selects which expansion hypotheses
// are required:
//   T31/T41: lambda on V_j0, mu elsewhere, lambda*mu^(k0-1) > 1
//   C1:      a single lambda > 1 on every set
//   C2:      self-loop at j0 (k0 = 1), lambda on V_j0, mu > 0 elsewhere
//   T42:     self-loop at j0, lambda on V_j0 only
enum class Route { T31, C1, C2, T41, T42 };

std::string to_string(Route r);
Route route_from_string(const std::string& s);

enum class InitialCovering { Verified, Assumed, Failed };

// One certified inequality. Strict inequalities need margin >= eps; closed
// inclusions are satisfied down to -eps (the slack only absorbs rounding).
struct CheckRecord {
  std::string name;
  double margin = 0.0;
  bool strict = true;
};

struct CertifyOptions {
  bool allow_marginal = false;      // accept strict margins inside (0, eps)
  bool allow_assumed_tail = false;  // accept prefix-only parameter analysis
  double eps = kEpsSlack;
  std::optional<ClosedInterval> initial_domain;  // D_0 for the time-zero lift
};

// Verified constants licensing the chaos conclusion, assembled only by
// certify() (or read back from a certificate file).
class ExpansionCertificate {
 public:
  Route route = Route::T42;
  std::vector<std::vector<int>> matrix_raw;  // validated transition matrix
  int j0 = 0;
  int k0 = 0;
  double lambda = 0.0;  // inf over steps of min |f'| on V_j0
  double mu = 0.0;      // inf over steps and j != j0 (0 when N == 1 set in play)
  double mu0 = 0.0;     // min(lambda, mu)
  double delta = 0.0;   // min pairwise partition gap
  double diam_j0 = 0.0;
  std::vector<double> diameters;
  std::int64_t n0 = 0;
  InitialCovering initial_covering = InitialCovering::Assumed;
  bool tail_assumed = false;
  std::vector<CheckRecord> checks;

  TransitionMatrix matrix() const { return TransitionMatrix::validate(matrix_raw); }

 private:
  ExpansionCertificate() = default;
  friend ExpansionCertificate certify(const SystemModel&, const TransitionMatrix&, Route, int,
                                      const CertifyOptions&);
  friend ExpansionCertificate certificate_from_json_text(const std::string&);
};

// Minimum pairwise gap of the partition; throws Overlapping (naming the
// pair) unless every gap is strictly positive.
double check_strictness(const std::vector<ClosedInterval>& partition);

// Per-(step, set) covering verdicts: image of V_i must contain every V_j
// with an i->j edge, for all steps >= n0.
struct CoveringRecord {
  std::string step;  // representative index or ray marker
  int i = 0;
  int j = 0;
  double margin = 0.0;
};

struct CoveringReport {
  bool ok = true;
  double min_margin = 0.0;
  bool tail_assumed = false;
  std::vector<CoveringRecord> records;   // all checks
  std::vector<CoveringRecord> failures;  // margin < -eps
};

CoveringReport check_covering(const SystemModel& sys, const TransitionMatrix& A, double eps);

// (lambda, mu): certified expansion lower bounds on V_j0 and the other sets.
struct ExpansionBounds {
  double lambda = 0.0;
  double mu = 0.0;
  bool tail_assumed = false;
};

ExpansionBounds check_expansion(const SystemModel& sys, int j0, Route route);

InitialCovering check_initial_covering(const SystemModel& sys,
                                       std::optional<ClosedInterval> D0);

// Full hypothesis check; throws (first failing hypothesis, with a witness in
// the message) or returns the assembled certificate.
ExpansionCertificate certify(const SystemModel& sys, const TransitionMatrix& A, Route route,
                             int j0, const CertifyOptions& opts = {});

// j0 maximizing the certified lambda among admissible choices for the route
// (ties to the smallest index).
int auto_select_j0(const SystemModel& sys, const TransitionMatrix& A, Route route);

}  // namespace chaoscert
