#include "chaoscert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chaoscert {

std::string to_string(Route r) {
  switch (r) {
    case Route::T31: return "T31";
    case Route::C1: return "C1";
    case Route::C2: return "C2";
    case Route::T41: return "T41";
    case Route::T42: return "T42";
  }
  return "?";
}

Route route_from_string(const std::string& s) {
  if (s == "T31") return Route::T31;
  if (s == "C1") return Route::C1;
  if (s == "C2") return Route::C2;
  if (s == "T41") return Route::T41;
  if (s == "T42") return Route::T42;
  fail(Errc::ParseError, "unknown route '" + s + "'");
}

double check_strictness(const std::vector<ClosedInterval>& partition) {
  if (partition.size() < 2) fail(Errc::ParseError, "strictness needs at least two sets");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < partition.size(); ++i) {
    for (std::size_t j = i + 1; j < partition.size(); ++j) {
      const double g = gap(partition[i], partition[j]);
      if (g <= 0.0)
        fail(Errc::Overlapping, "V_" + std::to_string(i + 1) + " and V_" + std::to_string(j + 1) +
                                    " have gap " + std::to_string(g));
      best = std::min(best, g);
    }
  }
  return best;
}

namespace {

bool routes_need_self_loop(Route r) { return r == Route::C2 || r == Route::T42; }

// Required containments for one step image of V_i.
void covering_for_image(const ClosedInterval& img, const TransitionMatrix& A,
                        const std::vector<ClosedInterval>& partition, const std::string& tag,
                        int i, double eps, CoveringReport& rep) {
  for (int j = 1; j <= A.size(); ++j) {
    if (!A.edge(i, j)) continue;
    const double m = inclusion_margin(img, partition[static_cast<std::size_t>(j - 1)]);
    CoveringRecord rec{tag, i, j, m};
    rep.records.push_back(rec);
    rep.min_margin = std::min(rep.min_margin, m);
    if (m < -eps) {
      rep.ok = false;
      rep.failures.push_back(rec);
    }
  }
}

}  // namespace

CoveringReport check_covering(const SystemModel& sys, const TransitionMatrix& A, double eps) {
  const auto& partition = sys.partition();
  if (static_cast<int>(partition.size()) != A.size())
    fail(Errc::ParseError, "partition size differs from matrix size");

  CoveringReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const StepSet steps = sys.certified_steps(sys.start_time());
  rep.tail_assumed = steps.tail_assumed;

  for (int i = 1; i <= A.size(); ++i) {
    const ClosedInterval& V = partition[static_cast<std::size_t>(i - 1)];
    for (const std::int64_t n : steps.indices) {
      if (sys.step_monotonicity(n, V) == Monotonicity::NotMonotone)
        fail(Errc::NotMonotone,
             "f_" + std::to_string(n) + " is not strictly monotone on V_" + std::to_string(i));
      covering_for_image(sys.step_image(n, V), A, partition, std::to_string(n), i, eps, rep);
    }
    if (steps.ray_from) {
      const auto rb = sys.step_ray_bounds(*steps.ray_from, V);
      if (!rb) {
        rep.tail_assumed = true;
      } else {
        // The ray bounds bracket every image over the unbounded tail.
        const ClosedInterval img{rb->image_lo_sup, std::min(rb->image_hi_inf,
                                                            std::numeric_limits<double>::max())};
        if (!(img.lo <= img.hi)) {
          CoveringRecord rec{"ray", i, 0, -std::numeric_limits<double>::infinity()};
          rep.ok = false;
          rep.failures.push_back(rec);
          rep.records.push_back(rec);
        } else {
          covering_for_image(img, A, partition, "ray", i, eps, rep);
        }
      }
    }
  }
  return rep;
}

ExpansionBounds check_expansion(const SystemModel& sys, int j0, Route route) {
  const auto& partition = sys.partition();
  const int N = static_cast<int>(partition.size());
  if (j0 < 1 || j0 > N) fail(Errc::ParseError, "j0 out of range");

  const StepSet steps = sys.certified_steps(sys.start_time());
  ExpansionBounds out;
  out.lambda = std::numeric_limits<double>::infinity();
  out.mu = std::numeric_limits<double>::infinity();
  out.tail_assumed = steps.tail_assumed;

  for (int j = 1; j <= N; ++j) {
    if (route == Route::T42 && j != j0) continue;  // only V_j0 is hypothesized
    const ClosedInterval& V = partition[static_cast<std::size_t>(j - 1)];
    double m = std::numeric_limits<double>::infinity();
    for (const std::int64_t n : steps.indices) {
      if (sys.step_monotonicity(n, V) == Monotonicity::NotMonotone)
        fail(Errc::NotMonotone,
             "f_" + std::to_string(n) + " is not strictly monotone on V_" + std::to_string(j));
      m = std::min(m, sys.step_min_abs_derivative(n, V));
    }
    if (steps.ray_from) {
      const auto rb = sys.step_ray_bounds(*steps.ray_from, V);
      if (!rb)
        out.tail_assumed = true;
      else
        m = std::min(m, rb->min_abs_deriv_inf);
    }
    if (j == j0)
      out.lambda = m;
    else
      out.mu = std::min(out.mu, m);
  }
  if (route == Route::T42) out.mu = 0.0;
  return out;
}

InitialCovering check_initial_covering(const SystemModel& sys,
                                       std::optional<ClosedInterval> D0) {
  const auto& partition = sys.partition();
  ClosedInterval needed = partition.front();
  for (const auto& V : partition) needed = hull(needed, V);

  const std::int64_t n0 = sys.start_time();
  if (!D0) {
    // Without an explicit starting domain the partition itself must seed the
    // construction; trivially fine at n0 = 0, unverifiable earlier.
    return n0 == 0 ? InitialCovering::Verified : InitialCovering::Assumed;
  }
  ClosedInterval J = *D0;
  for (std::int64_t n = 0; n < n0; ++n) {
    if (sys.step_monotonicity(n, J) == Monotonicity::NotMonotone) return InitialCovering::Assumed;
    J = sys.step_image(n, J);
  }
  // Closed inclusion, exact in the interval arithmetic used throughout.
  return J.contains(needed) ? InitialCovering::Verified : InitialCovering::Failed;
}

ExpansionCertificate certify(const SystemModel& sys, const TransitionMatrix& A, Route route,
                             int j0, const CertifyOptions& opts) {
  const auto& partition = sys.partition();
  const int N = static_cast<int>(partition.size());
  if (N != A.size()) fail(Errc::ParseError, "partition size differs from matrix size");
  if (j0 < 1 || j0 > N) fail(Errc::ParseError, "j0 out of range");

  ExpansionCertificate cert;
  cert.route = route;
  cert.j0 = j0;
  cert.n0 = sys.start_time();
  cert.matrix_raw.assign(static_cast<std::size_t>(N), std::vector<int>(static_cast<std::size_t>(N)));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      cert.matrix_raw[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
          A.entry(i, j);

  // Matrix-side hypotheses.
  if (!is_irreducible(A)) fail(Errc::NotIrreducible, "transition matrix is not irreducible");
  bool row2 = false;
  for (int i = 1; i <= N; ++i) row2 = row2 || A.row_sum(i) >= 2;
  if (!row2) fail(Errc::RowSumCondition, "no row sums to 2 or more");
  if (routes_need_self_loop(route) && !A.edge(j0, j0))
    fail(Errc::SelfLoopMissing, "route " + to_string(route) + " needs an edge " +
                                    std::to_string(j0) + " -> " + std::to_string(j0));
  cert.k0 = minimal_return_time(A, j0);

  // Geometry.
  cert.delta = check_strictness(partition);
  cert.checks.push_back({"partition_gap", cert.delta, true});
  cert.diameters.resize(static_cast<std::size_t>(N));
  for (int j = 1; j <= N; ++j)
    cert.diameters[static_cast<std::size_t>(j - 1)] =
        partition[static_cast<std::size_t>(j - 1)].diameter();
  cert.diam_j0 = cert.diameters[static_cast<std::size_t>(j0 - 1)];

  // Covering.
  const CoveringReport cov = check_covering(sys, A, opts.eps);
  if (!cov.ok) {
    const auto& f = cov.failures.front();
    if (f.j == 0)
      fail(Errc::CoveringFailed,
           "image of V_" + std::to_string(f.i) + " drifts unboundedly over the parameter tail");
    fail(Errc::CoveringFailed, "image of V_" + std::to_string(f.i) + " at step " + f.step +
                                   " misses V_" + std::to_string(f.j) + " by " +
                                   std::to_string(-f.margin));
  }
  cert.checks.push_back({"covering", cov.min_margin, false});

  // Expansion.
  const ExpansionBounds exp = check_expansion(sys, j0, route);
  cert.lambda = exp.lambda;
  cert.mu = exp.mu;
  cert.mu0 = std::min(cert.lambda, (route == Route::T42) ? cert.lambda : cert.mu);
  if (!(cert.lambda > 1.0))
    fail(Errc::NotExpanding,
         "lambda = " + std::to_string(cert.lambda) + " on V_" + std::to_string(j0));
  cert.checks.push_back({"lambda_gt_1", cert.lambda - 1.0, true});

  switch (route) {
    case Route::T31:
    case Route::T41: {
      if (!(cert.mu > 0.0)) fail(Errc::NotExpanding, "mu must be positive");
      const double comp = cert.lambda * std::pow(cert.mu, cert.k0 - 1);
      if (!(comp > 1.0))
        fail(Errc::CriterionFailed,
             "lambda*mu^(k0-1) = " + std::to_string(comp) + " must exceed 1");
      cert.checks.push_back({"composite_expansion", comp - 1.0, true});
      break;
    }
    case Route::C1: {
      const double m = std::min(cert.lambda, cert.mu);
      if (!(m > 1.0))
        fail(Errc::NotExpanding, "uniform expansion min(lambda,mu) = " + std::to_string(m));
      cert.checks.push_back({"uniform_expansion", m - 1.0, true});
      break;
    }
    case Route::C2: {
      if (!(cert.mu > 0.0)) fail(Errc::NotExpanding, "mu must be positive");
      if (cert.k0 != 1) fail(Errc::SelfLoopMissing, "k0 must be 1");
      cert.checks.push_back({"self_loop", 1.0, false});
      break;
    }
    case Route::T42: {
      if (cert.k0 != 1) fail(Errc::SelfLoopMissing, "k0 must be 1");
      cert.checks.push_back({"self_loop", 1.0, false});
      break;
    }
  }

  // Tail analyzability.
  cert.tail_assumed = cov.tail_assumed || exp.tail_assumed;
  if (cert.tail_assumed && !opts.allow_assumed_tail)
    fail(Errc::TailNotAnalyzable,
         "parameter tail cannot be analyzed; rerun with the assumed-tail option to accept "
         "prefix-only certification");

  // Strict margins below the slack are only accepted on request.
  for (const auto& c : cert.checks) {
    if (c.strict && c.margin < opts.eps && !opts.allow_marginal)
      fail(Errc::Marginal, "margin of '" + c.name + "' is " + std::to_string(c.margin) +
                               " < eps = " + std::to_string(opts.eps));
  }

  // A failed or assumed status narrows the conclusion to the time-n0 system;
  // it does not invalidate the certificate.
  cert.initial_covering = check_initial_covering(sys, opts.initial_domain);

  return cert;
}

int auto_select_j0(const SystemModel& sys, const TransitionMatrix& A, Route route) {
  const int N = A.size();
  int best = -1;
  double best_lambda = -std::numeric_limits<double>::infinity();
  for (int j0 = 1; j0 <= N; ++j0) {
    if (routes_need_self_loop(route) && !A.edge(j0, j0)) continue;
    try {
      const ExpansionBounds b = check_expansion(sys, j0, route);
      if (b.lambda > best_lambda) {
        best_lambda = b.lambda;
        best = j0;
      }
    } catch (const Error&) {
      continue;
    }
  }
  if (best < 0) fail(Errc::NotExpanding, "no admissible j0 for route " + to_string(route));
  return best;
}

}  // namespace chaoscert
