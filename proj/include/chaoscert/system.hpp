#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "chaoscert/interval.hpp"
#include "chaoscert/map_family.hpp"

namespace chaoscert {

// Real-valued parameter sequence r_0, r_1, ...: an explicit prefix followed
// by either a repeating block or an affine tail c0 + c1*n (n is the absolute
// time index; c1 >= 0 so infima stay computable).
class ParamSequence {
 public:
  struct PeriodicTail {
    std::vector<double> values;
  };
  struct AffineTail {
    double c0 = 0.0;
    double c1 = 0.0;
  };
  using Tail = std::variant<PeriodicTail, AffineTail>;

  static ParamSequence constant(double v);
  static ParamSequence periodic(std::vector<double> prefix, std::vector<double> values);
  static ParamSequence affine(std::vector<double> prefix, double c0, double c1);

  double value_at(std::int64_t n) const;
  std::int64_t prefix_length() const { return static_cast<std::int64_t>(prefix_.size()); }
  const std::vector<double>& prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }
  bool unbounded() const;  // affine tail with c1 > 0

  // Finitely many indices whose parameter values exhaust everything the
  // sequence takes at times >= n_from; `ray_from` marks the start of an
  // unbounded affine tail that must be handled by a family ray oracle.
  struct Representatives {
    std::vector<std::int64_t> indices;
    std::optional<std::int64_t> ray_from;
  };
  Representatives representatives(std::int64_t n_from) const;

 private:
  ParamSequence(std::vector<double> prefix, Tail tail);

  std::vector<double> prefix_;
  Tail tail_;
};

// Sampling times k_1 < k_2 < ... for induced systems: explicit prefix, then
// k_n = a + d*n. Indices are 1-based as the values must be positive.
class TimesSpec {
 public:
  static TimesSpec arithmetic(std::int64_t a, std::int64_t d);
  static TimesSpec with_prefix(std::vector<std::int64_t> prefix, std::int64_t a, std::int64_t d);

  std::int64_t at(std::int64_t n) const;  // n >= 1
  std::int64_t prefix_length() const { return static_cast<std::int64_t>(prefix_.size()); }
  const std::vector<std::int64_t>& prefix() const { return prefix_; }
  std::int64_t tail_a() const { return a_; }
  std::int64_t tail_d() const { return d_; }

 private:
  TimesSpec(std::vector<std::int64_t> prefix, std::int64_t a, std::int64_t d);

  std::vector<std::int64_t> prefix_;
  std::int64_t a_ = 0;
  std::int64_t d_ = 1;
};

// Per-time phase-space constraint D_n: explicit prefix, then an optional
// constant tail (absent tail = unconstrained).
struct DomainSpec {
  std::vector<ClosedInterval> prefix;
  std::optional<ClosedInterval> tail;

  std::optional<ClosedInterval> at(std::int64_t n) const {
    if (n < static_cast<std::int64_t>(prefix.size())) return prefix[static_cast<std::size_t>(n)];
    return tail;
  }
};

// Reduction of the infinite family {f_n : n >= n_from} to finitely many
// checkable representatives, plus an optional parameter ray and a flag for
// tails that cannot be analyzed at all.
struct StepSet {
  std::vector<std::int64_t> indices;
  std::optional<std::int64_t> ray_from;
  bool tail_assumed = false;
};

class TimeVaryingSystem;
class InducedSystem;

// What certification, synthesis and diagnostics need from a system: exact
// per-step interval operations, plus the tail reduction that turns
// "for all n" hypotheses into finite checks.
class SystemModel {
 public:
  virtual ~SystemModel() = default;

  virtual const std::vector<ClosedInterval>& partition() const = 0;
  virtual std::int64_t start_time() const = 0;

  virtual double step(std::int64_t n, double x) const = 0;
  virtual Monotonicity step_monotonicity(std::int64_t n, const ClosedInterval& J) const = 0;
  virtual ClosedInterval step_image(std::int64_t n, const ClosedInterval& J) const = 0;
  virtual double step_min_abs_derivative(std::int64_t n, const ClosedInterval& J) const = 0;
  virtual double step_max_abs_derivative(std::int64_t n, const ClosedInterval& J) const = 0;
  virtual ClosedInterval step_inverse(std::int64_t n, const ClosedInterval& branch,
                                      const ClosedInterval& target) const = 0;

  virtual StepSet certified_steps(std::int64_t n_from) const = 0;
  virtual std::optional<RayBounds> step_ray_bounds(std::int64_t ray_from,
                                                   const ClosedInterval& J) const = 0;

  // Decomposition of step n into consecutive base-time maps [first, last);
  // trivial for plain systems, a block for induced ones. The witness engine
  // replays these in extended precision.
  virtual std::pair<std::int64_t, std::int64_t> base_time_span(std::int64_t n) const = 0;
  virtual const MapFamily& family() const = 0;
  virtual double base_param(std::int64_t base_time) const = 0;
  virtual std::optional<ClosedInterval> base_domain(std::int64_t base_time) const = 0;
};

// x_{n+1} = f_n(x_n) for one map family with a time-varying parameter.
class TimeVaryingSystem final : public SystemModel {
 public:
  TimeVaryingSystem(std::shared_ptr<const MapFamily> family, ParamSequence params,
                    std::vector<ClosedInterval> partition, std::int64_t n0,
                    std::optional<DomainSpec> domains = std::nullopt);

  const std::vector<ClosedInterval>& partition() const override { return partition_; }
  std::int64_t start_time() const override { return n0_; }

  double step(std::int64_t n, double x) const override;
  Monotonicity step_monotonicity(std::int64_t n, const ClosedInterval& J) const override;
  ClosedInterval step_image(std::int64_t n, const ClosedInterval& J) const override;
  double step_min_abs_derivative(std::int64_t n, const ClosedInterval& J) const override;
  double step_max_abs_derivative(std::int64_t n, const ClosedInterval& J) const override;
  ClosedInterval step_inverse(std::int64_t n, const ClosedInterval& branch,
                              const ClosedInterval& target) const override;

  StepSet certified_steps(std::int64_t n_from) const override;
  std::optional<RayBounds> step_ray_bounds(std::int64_t ray_from,
                                           const ClosedInterval& J) const override;

  std::pair<std::int64_t, std::int64_t> base_time_span(std::int64_t n) const override {
    return {n, n + 1};
  }
  const MapFamily& family() const override { return *family_; }
  double base_param(std::int64_t base_time) const override { return params_.value_at(base_time); }
  std::optional<ClosedInterval> base_domain(std::int64_t base_time) const override;

  const ParamSequence& params() const { return params_; }
  const std::optional<DomainSpec>& domains() const { return domains_; }

 private:
  std::shared_ptr<const MapFamily> family_;
  ParamSequence params_;
  std::vector<ClosedInterval> partition_;
  std::int64_t n0_ = 0;
  std::optional<DomainSpec> domains_;
};

// System obtained by composing the base maps over blocks [k_n, k_{n+1});
// its orbit is the base orbit subsampled at the k_n.
class InducedSystem final : public SystemModel {
 public:
  InducedSystem(std::shared_ptr<const SystemModel> base, TimesSpec times);

  const std::vector<ClosedInterval>& partition() const override { return base_->partition(); }
  std::int64_t start_time() const override { return base_->start_time(); }

  double step(std::int64_t n, double x) const override;
  Monotonicity step_monotonicity(std::int64_t n, const ClosedInterval& J) const override;
  ClosedInterval step_image(std::int64_t n, const ClosedInterval& J) const override;
  double step_min_abs_derivative(std::int64_t n, const ClosedInterval& J) const override;
  double step_max_abs_derivative(std::int64_t n, const ClosedInterval& J) const override;
  ClosedInterval step_inverse(std::int64_t n, const ClosedInterval& branch,
                              const ClosedInterval& target) const override;

  StepSet certified_steps(std::int64_t n_from) const override;
  std::optional<RayBounds> step_ray_bounds(std::int64_t ray_from,
                                           const ClosedInterval& J) const override;

  std::pair<std::int64_t, std::int64_t> base_time_span(std::int64_t n) const override;
  const MapFamily& family() const override { return base_->family(); }
  double base_param(std::int64_t base_time) const override { return base_->base_param(base_time); }
  std::optional<ClosedInterval> base_domain(std::int64_t base_time) const override {
    return base_->base_domain(base_time);
  }

  const SystemModel& base() const { return *base_; }
  const TimesSpec& times() const { return times_; }

 private:
  std::shared_ptr<const SystemModel> base_;
  TimesSpec times_;
};

// f_n(x); DomainViolation when x falls outside a supplied D_n.
double evaluate(const SystemModel& sys, std::int64_t n, double x);

// f_{i+k-1} o ... o f_i applied to x, left to right; k = 0 is the identity.
double compose(const SystemModel& sys, std::int64_t i, std::int64_t k, double x);

// [x_start, ..., x_{start+horizon}].
std::vector<double> orbit(const SystemModel& sys, double x0, std::int64_t start,
                          std::int64_t horizon);

ClosedInterval image_interval(const SystemModel& sys, std::int64_t n, const ClosedInterval& J);
ClosedInterval inverse_branch(const SystemModel& sys, std::int64_t n, const ClosedInterval& branch,
                              const ClosedInterval& target);
double min_abs_derivative(const SystemModel& sys, std::int64_t n, const ClosedInterval& J);
double max_abs_derivative(const SystemModel& sys, std::int64_t n, const ClosedInterval& J);

std::shared_ptr<const InducedSystem> build_induced(std::shared_ptr<const SystemModel> base,
                                                   TimesSpec times);

}  // namespace chaoscert
