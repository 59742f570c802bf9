#include "chaoscert/system.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace chaoscert {

// ---------------------------------------------------------------------------
// ParamSequence

ParamSequence::ParamSequence(std::vector<double> prefix, Tail tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  if (const auto* p = std::get_if<PeriodicTail>(&tail_)) {
    if (p->values.empty()) fail(Errc::ParseError, "periodic parameter tail must be nonempty");
  } else {
    const auto& a = std::get<AffineTail>(tail_);
    if (a.c1 < 0.0) fail(Errc::ParseError, "affine parameter tail needs slope >= 0");
  }
}

ParamSequence ParamSequence::constant(double v) { return periodic({}, {v}); }

ParamSequence ParamSequence::periodic(std::vector<double> prefix, std::vector<double> values) {
  return ParamSequence(std::move(prefix), PeriodicTail{std::move(values)});
}

ParamSequence ParamSequence::affine(std::vector<double> prefix, double c0, double c1) {
  return ParamSequence(std::move(prefix), AffineTail{c0, c1});
}

double ParamSequence::value_at(std::int64_t n) const {
  if (n < 0) fail(Errc::ParseError, "parameter index must be >= 0");
  if (n < prefix_length()) return prefix_[static_cast<std::size_t>(n)];
  if (const auto* p = std::get_if<PeriodicTail>(&tail_)) {
    const std::int64_t period = static_cast<std::int64_t>(p->values.size());
    return p->values[static_cast<std::size_t>((n - prefix_length()) % period)];
  }
  const auto& a = std::get<AffineTail>(tail_);
  return a.c0 + a.c1 * static_cast<double>(n);
}

bool ParamSequence::unbounded() const {
  const auto* a = std::get_if<AffineTail>(&tail_);
  return a != nullptr && a->c1 > 0.0;
}

ParamSequence::Representatives ParamSequence::representatives(std::int64_t n_from) const {
  Representatives out;
  for (std::int64_t n = n_from; n < prefix_length(); ++n) out.indices.push_back(n);
  const std::int64_t tail_start = std::max(n_from, prefix_length());
  if (const auto* p = std::get_if<PeriodicTail>(&tail_)) {
    // Any `period` consecutive tail indices hit every residue.
    const std::int64_t period = static_cast<std::int64_t>(p->values.size());
    for (std::int64_t t = 0; t < period; ++t) out.indices.push_back(tail_start + t);
    return out;
  }
  const auto& a = std::get<AffineTail>(tail_);
  out.indices.push_back(tail_start);
  if (a.c1 > 0.0) out.ray_from = tail_start;
  return out;
}

// ---------------------------------------------------------------------------
// TimesSpec

TimesSpec::TimesSpec(std::vector<std::int64_t> prefix, std::int64_t a, std::int64_t d)
    : prefix_(std::move(prefix)), a_(a), d_(d) {
  if (d_ < 1) fail(Errc::NonIncreasingTimes, "arithmetic tail needs stride >= 1");
  std::int64_t prev = 0;
  for (std::size_t t = 0; t < prefix_.size(); ++t) {
    if (prefix_[t] <= prev)
      fail(Errc::NonIncreasingTimes,
           "times must be strictly increasing and positive at position " + std::to_string(t + 1));
    prev = prefix_[t];
  }
  const std::int64_t first_tail = a_ + d_ * (prefix_length() + 1);
  if (first_tail <= prev)
    fail(Errc::NonIncreasingTimes, "arithmetic tail does not continue past the prefix");
  if (first_tail < 1) fail(Errc::NonIncreasingTimes, "times must be positive");
}

TimesSpec TimesSpec::arithmetic(std::int64_t a, std::int64_t d) { return TimesSpec({}, a, d); }

TimesSpec TimesSpec::with_prefix(std::vector<std::int64_t> prefix, std::int64_t a,
                                 std::int64_t d) {
  return TimesSpec(std::move(prefix), a, d);
}

std::int64_t TimesSpec::at(std::int64_t n) const {
  if (n < 1) fail(Errc::ParseError, "sampling times are indexed from 1");
  if (n <= prefix_length()) return prefix_[static_cast<std::size_t>(n - 1)];
  return a_ + d_ * n;
}

// ---------------------------------------------------------------------------
// TimeVaryingSystem

TimeVaryingSystem::TimeVaryingSystem(std::shared_ptr<const MapFamily> family, ParamSequence params,
                                     std::vector<ClosedInterval> partition, std::int64_t n0,
                                     std::optional<DomainSpec> domains)
    : family_(std::move(family)),
      params_(std::move(params)),
      partition_(std::move(partition)),
      n0_(n0),
      domains_(std::move(domains)) {
  if (!family_) fail(Errc::ParseError, "system needs a map family");
  if (partition_.empty()) fail(Errc::ParseError, "system needs a nonempty partition");
  if (n0_ < 0) fail(Errc::ParseError, "n0 must be >= 0");
  for (const auto& v : partition_)
    if (!(v.lo <= v.hi)) fail(Errc::ParseError, "partition interval endpoints out of order");
  // Disjointness of the partition is a certification hypothesis, checked
  // there with a named witness; orbits are well-defined regardless.
  if (domains_) {
    auto check = [&](const ClosedInterval& D, std::int64_t n) {
      for (std::size_t j = 0; j < partition_.size(); ++j)
        if (!D.contains(partition_[j]))
          fail(Errc::DomainViolation, "V_" + std::to_string(j + 1) + " not contained in D_" +
                                          std::to_string(n));
    };
    for (std::int64_t n = n0_; n < static_cast<std::int64_t>(domains_->prefix.size()); ++n)
      check(domains_->prefix[static_cast<std::size_t>(n)], n);
    if (domains_->tail) check(*domains_->tail, -1);
  }
}

double TimeVaryingSystem::step(std::int64_t n, double x) const {
  if (n < 0) fail(Errc::ParseError, "time index must be >= 0");
  if (domains_) {
    if (auto D = domains_->at(n); D && !D->contains(x))
      fail(Errc::DomainViolation,
           "x = " + std::to_string(x) + " outside D_" + std::to_string(n));
  }
  return family_->eval(params_.value_at(n), x);
}

Monotonicity TimeVaryingSystem::step_monotonicity(std::int64_t n, const ClosedInterval& J) const {
  return family_->monotonicity(params_.value_at(n), J);
}

ClosedInterval TimeVaryingSystem::step_image(std::int64_t n, const ClosedInterval& J) const {
  return family_->image(params_.value_at(n), J);
}

double TimeVaryingSystem::step_min_abs_derivative(std::int64_t n, const ClosedInterval& J) const {
  return family_->min_abs_derivative(params_.value_at(n), J);
}

double TimeVaryingSystem::step_max_abs_derivative(std::int64_t n, const ClosedInterval& J) const {
  return family_->max_abs_derivative(params_.value_at(n), J);
}

ClosedInterval TimeVaryingSystem::step_inverse(std::int64_t n, const ClosedInterval& branch,
                                               const ClosedInterval& target) const {
  return family_->inverse_on_branch(params_.value_at(n), branch, target);
}

StepSet TimeVaryingSystem::certified_steps(std::int64_t n_from) const {
  const auto reps = params_.representatives(n_from);
  StepSet out;
  out.indices = reps.indices;
  out.ray_from = reps.ray_from;
  return out;
}

std::optional<RayBounds> TimeVaryingSystem::step_ray_bounds(std::int64_t ray_from,
                                                            const ClosedInterval& J) const {
  return family_->ray_bounds(params_.value_at(ray_from), J);
}

std::optional<ClosedInterval> TimeVaryingSystem::base_domain(std::int64_t base_time) const {
  if (!domains_) return std::nullopt;
  return domains_->at(base_time);
}

// ---------------------------------------------------------------------------
// InducedSystem

InducedSystem::InducedSystem(std::shared_ptr<const SystemModel> base, TimesSpec times)
    : base_(std::move(base)), times_(std::move(times)) {
  if (!base_) fail(Errc::ParseError, "induced system needs a base system");
  if (dynamic_cast<const InducedSystem*>(base_.get()) != nullptr)
    fail(Errc::ParseError, "induced systems can only be built over plain systems");
}

std::pair<std::int64_t, std::int64_t> InducedSystem::base_time_span(std::int64_t n) const {
  if (n < 0) fail(Errc::ParseError, "time index must be >= 0");
  const std::int64_t from = (n == 0) ? 0 : times_.at(n);
  const std::int64_t to = times_.at(n + 1);
  return {from, to};
}

double InducedSystem::step(std::int64_t n, double x) const {
  const auto [from, to] = base_time_span(n);
  for (std::int64_t t = from; t < to; ++t) x = base_->step(t, x);
  return x;
}

Monotonicity InducedSystem::step_monotonicity(std::int64_t n, const ClosedInterval& J) const {
  const auto [from, to] = base_time_span(n);
  ClosedInterval cur = J;
  bool decreasing = false;
  for (std::int64_t t = from; t < to; ++t) {
    const Monotonicity m = base_->step_monotonicity(t, cur);
    if (m == Monotonicity::NotMonotone) return Monotonicity::NotMonotone;
    if (m == Monotonicity::Decreasing) decreasing = !decreasing;
    cur = base_->step_image(t, cur);
  }
  return decreasing ? Monotonicity::Decreasing : Monotonicity::Increasing;
}

ClosedInterval InducedSystem::step_image(std::int64_t n, const ClosedInterval& J) const {
  const auto [from, to] = base_time_span(n);
  ClosedInterval cur = J;
  for (std::int64_t t = from; t < to; ++t) cur = base_->step_image(t, cur);
  return cur;
}

double InducedSystem::step_min_abs_derivative(std::int64_t n, const ClosedInterval& J) const {
  // Chain-rule lower bound: the product of per-factor minima over the running
  // images. Exact for single-map blocks.
  const auto [from, to] = base_time_span(n);
  ClosedInterval cur = J;
  double prod = 1.0;
  for (std::int64_t t = from; t < to; ++t) {
    prod *= base_->step_min_abs_derivative(t, cur);
    if (t + 1 < to) cur = base_->step_image(t, cur);
  }
  return prod;
}

double InducedSystem::step_max_abs_derivative(std::int64_t n, const ClosedInterval& J) const {
  const auto [from, to] = base_time_span(n);
  ClosedInterval cur = J;
  double prod = 1.0;
  for (std::int64_t t = from; t < to; ++t) {
    prod *= base_->step_max_abs_derivative(t, cur);
    if (t + 1 < to) cur = base_->step_image(t, cur);
  }
  return prod;
}

ClosedInterval InducedSystem::step_inverse(std::int64_t n, const ClosedInterval& branch,
                                           const ClosedInterval& target) const {
  const auto [from, to] = base_time_span(n);
  // Forward images of the branch fix the monotone sub-branches, then the
  // target is pulled back through them right to left.
  std::vector<ClosedInterval> stages;
  stages.reserve(static_cast<std::size_t>(to - from));
  ClosedInterval cur = branch;
  for (std::int64_t t = from; t < to; ++t) {
    stages.push_back(cur);
    if (t + 1 < to) cur = base_->step_image(t, cur);
  }
  ClosedInterval T = target;
  for (std::int64_t t = to - 1; t >= from; --t)
    T = base_->step_inverse(t, stages[static_cast<std::size_t>(t - from)], T);
  return T;
}

StepSet InducedSystem::certified_steps(std::int64_t n_from) const {
  const auto* base_tvs = dynamic_cast<const TimeVaryingSystem*>(base_.get());
  if (base_tvs == nullptr) fail(Errc::TailNotAnalyzable, "induced over unsupported base");
  const ParamSequence& params = base_tvs->params();

  // First block index that lies entirely in the arithmetic tail of the times.
  const std::int64_t first_tail_block = times_.prefix_length() + 1;

  if (times_.tail_d() == 1) {
    // Single-map blocks past the seam; delegate to the base reduction and
    // translate base times t = a + m back to block indices m.
    const std::int64_t start = std::max(n_from, first_tail_block);
    StepSet out;
    for (std::int64_t m = n_from; m < start; ++m) out.indices.push_back(m);
    const auto base_reps = base_->certified_steps(base_time_span(start).first);
    for (std::int64_t t : base_reps.indices) out.indices.push_back(t - times_.tail_a());
    if (base_reps.ray_from) out.ray_from = *base_reps.ray_from - times_.tail_a();
    out.tail_assumed = base_reps.tail_assumed;
    return out;
  }

  if (params.unbounded()) {
    // Multi-map blocks with unboundedly growing parameters: no finite
    // reduction; callers decide whether an assumed tail is acceptable.
    StepSet out;
    for (std::int64_t m = n_from; m < first_tail_block + 4; ++m) out.indices.push_back(m);
    out.tail_assumed = true;
    return out;
  }

  // Parameters eventually periodic with period P: block descriptors repeat
  // every L = P / gcd(P, d) blocks once both tails are active.
  std::int64_t period = 1;
  if (const auto* p = std::get_if<ParamSequence::PeriodicTail>(&params.tail()))
    period = static_cast<std::int64_t>(p->values.size());
  std::int64_t first_aligned = first_tail_block;
  while (base_time_span(first_aligned).first < params.prefix_length()) ++first_aligned;
  const std::int64_t L = period / std::gcd(period, times_.tail_d());

  StepSet out;
  const std::int64_t start = std::max(n_from, first_aligned);
  for (std::int64_t m = n_from; m < start; ++m) out.indices.push_back(m);
  for (std::int64_t t = 0; t < L; ++t) out.indices.push_back(start + t);
  return out;
}

std::optional<RayBounds> InducedSystem::step_ray_bounds(std::int64_t ray_from,
                                                        const ClosedInterval& J) const {
  if (times_.tail_d() != 1) return std::nullopt;
  return base_->step_ray_bounds(ray_from + times_.tail_a(), J);
}

// ---------------------------------------------------------------------------
// Free operations

double evaluate(const SystemModel& sys, std::int64_t n, double x) { return sys.step(n, x); }

double compose(const SystemModel& sys, std::int64_t i, std::int64_t k, double x) {
  if (i < 0 || k < 0) fail(Errc::ParseError, "compose needs i >= 0 and k >= 0");
  for (std::int64_t t = i; t < i + k; ++t) x = sys.step(t, x);
  return x;
}

std::vector<double> orbit(const SystemModel& sys, double x0, std::int64_t start,
                          std::int64_t horizon) {
  if (horizon < 0) fail(Errc::ParseError, "orbit horizon must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(horizon) + 1);
  double x = x0;
  out.push_back(x);
  for (std::int64_t t = 0; t < horizon; ++t) {
    x = sys.step(start + t, x);
    out.push_back(x);
  }
  return out;
}

ClosedInterval image_interval(const SystemModel& sys, std::int64_t n, const ClosedInterval& J) {
  return sys.step_image(n, J);
}

ClosedInterval inverse_branch(const SystemModel& sys, std::int64_t n, const ClosedInterval& branch,
                              const ClosedInterval& target) {
  return sys.step_inverse(n, branch, target);
}

double min_abs_derivative(const SystemModel& sys, std::int64_t n, const ClosedInterval& J) {
  return sys.step_min_abs_derivative(n, J);
}

double max_abs_derivative(const SystemModel& sys, std::int64_t n, const ClosedInterval& J) {
  return sys.step_max_abs_derivative(n, J);
}

std::shared_ptr<const InducedSystem> build_induced(std::shared_ptr<const SystemModel> base,
                                                   TimesSpec times) {
  return std::make_shared<InducedSystem>(std::move(base), std::move(times));
}

}  // namespace chaoscert
