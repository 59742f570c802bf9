#include "chaoscert/map_family.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace chaoscert {

ClosedInterval MapFamily::image(double p, const ClosedInterval& J) const {
  if (monotonicity(p, J) == Monotonicity::NotMonotone)
    fail(Errc::NotMonotone, name() + " is not strictly monotone on [" + std::to_string(J.lo) +
                                "," + std::to_string(J.hi) + "]");
  const double a = eval(p, J.lo);
  const double b = eval(p, J.hi);
  return {std::min(a, b), std::max(a, b)};
}

namespace {

ClosedInterval clip_target_to_image(const MapFamily& fam, double p, const ClosedInterval& branch,
                                    const ClosedInterval& target, ClosedInterval* image_out) {
  const ClosedInterval img = fam.image(p, branch);
  auto t = intersect(img, target);
  if (!t)
    fail(Errc::EmptyPreimage, "target [" + std::to_string(target.lo) + "," +
                                  std::to_string(target.hi) + "] misses image [" +
                                  std::to_string(img.lo) + "," + std::to_string(img.hi) + "]");
  if (image_out) *image_out = img;
  return *t;
}

ClosedInterval clamp_into(ClosedInterval J, const ClosedInterval& branch) {
  J.lo = std::max(J.lo, branch.lo);
  J.hi = std::min(J.hi, branch.hi);
  if (J.lo > J.hi) {
    // Can only happen through rounding right at the branch edge.
    const double m = std::min(std::max(0.5 * (J.lo + J.hi), branch.lo), branch.hi);
    J.lo = J.hi = m;
  }
  return J;
}

}  // namespace

ClosedInterval MapFamily::inverse_on_branch(double p, const ClosedInterval& branch,
                                            const ClosedInterval& target) const {
  const Monotonicity mono = monotonicity(p, branch);
  if (mono == Monotonicity::NotMonotone)
    fail(Errc::NotMonotone, name() + ": inverse needs a monotone branch");
  const ClosedInterval t = clip_target_to_image(*this, p, branch, target, nullptr);

  // Generic bisection solver; built-in families override with closed forms.
  auto solve = [&](double y) {
    double lo = branch.lo, hi = branch.hi;
    const bool inc = (mono == Monotonicity::Increasing);
    while (hi - lo > kTolInv) {
      const double mid = lo + 0.5 * (hi - lo);
      const double v = eval(p, mid);
      const bool go_right = inc ? (v < y) : (v > y);
      if (go_right)
        lo = mid;
      else
        hi = mid;
    }
    return lo + 0.5 * (hi - lo);
  };
  const double a = solve(t.lo);
  const double b = solve(t.hi);
  return clamp_into({std::min(a, b), std::max(a, b)}, branch);
}

namespace {

// f(x) = p*x*(1-x), vertex at 1/2.
class LogisticFamily final : public MapFamily {
 public:
  std::string name() const override { return "logistic"; }
  FamilyTag tag() const override { return FamilyTag::Logistic; }

  double eval(double p, double x) const override { return (p * x) * (1.0 - x); }

  Monotonicity monotonicity(double p, const ClosedInterval& J) const override {
    if (p == 0.0) return Monotonicity::NotMonotone;
    if (J.hi <= 0.5) return p > 0 ? Monotonicity::Increasing : Monotonicity::Decreasing;
    if (J.lo >= 0.5) return p > 0 ? Monotonicity::Decreasing : Monotonicity::Increasing;
    return Monotonicity::NotMonotone;
  }

  // |f'(x)| = |p - 2 p x|, V-shaped with zero at 1/2.
  double min_abs_derivative(double p, const ClosedInterval& J) const override {
    if (J.lo < 0.5 && 0.5 < J.hi) return 0.0;
    const double x = (J.hi <= 0.5) ? J.hi : J.lo;
    return std::fabs(p - 2.0 * p * x);
  }

  double max_abs_derivative(double p, const ClosedInterval& J) const override {
    return std::max(std::fabs(p - 2.0 * p * J.lo), std::fabs(p - 2.0 * p * J.hi));
  }

  ClosedInterval inverse_on_branch(double p, const ClosedInterval& branch,
                                   const ClosedInterval& target) const override {
    if (monotonicity(p, branch) == Monotonicity::NotMonotone)
      fail(Errc::NotMonotone, "logistic: inverse needs a monotone branch");
    const ClosedInterval t = clip_target_to_image(*this, p, branch, target, nullptr);
    // p x (1-x) = y  =>  x = (1 -+ sqrt(1 - 4y/p)) / 2; the branch side picks
    // the root.
    const bool left_side = branch.hi <= 0.5;
    auto root = [&](double y) {
      double d = 1.0 - 4.0 * y / p;
      if (d < 0.0) d = 0.0;  // y grazes the vertex value
      const double s = std::sqrt(d);
      return left_side ? 0.5 * (1.0 - s) : 0.5 * (1.0 + s);
    };
    const double a = root(t.lo);
    const double b = root(t.hi);
    return clamp_into({std::min(a, b), std::max(a, b)}, branch);
  }

  std::vector<ClosedInterval> monotone_branches(double p,
                                                const ClosedInterval& domain) const override {
    if (p == 0.0) return {};
    std::vector<ClosedInterval> out;
    if (domain.lo < 0.5) out.push_back({domain.lo, std::min(domain.hi, 0.5)});
    if (domain.hi > 0.5) out.push_back({std::max(domain.lo, 0.5), domain.hi});
    if (out.empty()) out.push_back(domain);
    return out;
  }

  std::optional<RayBounds> ray_bounds(double p0, const ClosedInterval& J) const override {
    if (p0 <= 0.0) return std::nullopt;
    if (monotonicity(p0, J) == Monotonicity::NotMonotone) return std::nullopt;
    // Image endpoints scale linearly through the origin in p, so their sign
    // at p0 fixes the direction of growth over the whole ray.
    const ClosedInterval I0 = image(p0, J);
    const double inf = std::numeric_limits<double>::infinity();
    RayBounds rb{};
    rb.image_lo_sup = (I0.lo > 0.0) ? inf : I0.lo;
    rb.image_hi_inf = (I0.hi < 0.0) ? -inf : I0.hi;
    rb.min_abs_deriv_inf = min_abs_derivative(p0, J);  // = p * const, grows with p
    return rb;
  }
};

// f(x) = p*x left of 1/2, p*(1-x) right of it.
class TentFamily final : public MapFamily {
 public:
  std::string name() const override { return "tent"; }
  FamilyTag tag() const override { return FamilyTag::Tent; }

  double eval(double p, double x) const override { return x <= 0.5 ? p * x : p * (1.0 - x); }

  Monotonicity monotonicity(double p, const ClosedInterval& J) const override {
    if (p == 0.0) return Monotonicity::NotMonotone;
    if (J.hi <= 0.5) return p > 0 ? Monotonicity::Increasing : Monotonicity::Decreasing;
    if (J.lo >= 0.5) return p > 0 ? Monotonicity::Decreasing : Monotonicity::Increasing;
    return Monotonicity::NotMonotone;
  }

  double min_abs_derivative(double p, const ClosedInterval&) const override { return std::fabs(p); }
  double max_abs_derivative(double p, const ClosedInterval&) const override { return std::fabs(p); }

  ClosedInterval inverse_on_branch(double p, const ClosedInterval& branch,
                                   const ClosedInterval& target) const override {
    if (monotonicity(p, branch) == Monotonicity::NotMonotone)
      fail(Errc::NotMonotone, "tent: inverse needs a monotone branch");
    const ClosedInterval t = clip_target_to_image(*this, p, branch, target, nullptr);
    const bool left_side = branch.hi <= 0.5;
    auto root = [&](double y) { return left_side ? y / p : 1.0 - y / p; };
    const double a = root(t.lo);
    const double b = root(t.hi);
    return clamp_into({std::min(a, b), std::max(a, b)}, branch);
  }

  std::vector<ClosedInterval> monotone_branches(double p,
                                                const ClosedInterval& domain) const override {
    if (p == 0.0) return {};
    std::vector<ClosedInterval> out;
    if (domain.lo < 0.5) out.push_back({domain.lo, std::min(domain.hi, 0.5)});
    if (domain.hi > 0.5) out.push_back({std::max(domain.lo, 0.5), domain.hi});
    if (out.empty()) out.push_back(domain);
    return out;
  }

  std::optional<RayBounds> ray_bounds(double p0, const ClosedInterval& J) const override {
    if (p0 <= 0.0) return std::nullopt;
    if (monotonicity(p0, J) == Monotonicity::NotMonotone) return std::nullopt;
    const ClosedInterval I0 = image(p0, J);
    const double inf = std::numeric_limits<double>::infinity();
    RayBounds rb{};
    rb.image_lo_sup = (I0.lo > 0.0) ? inf : I0.lo;
    rb.image_hi_inf = (I0.hi < 0.0) ? -inf : I0.hi;
    rb.min_abs_deriv_inf = min_abs_derivative(p0, J);
    return rb;
  }
};

// f(x) = p*x + b with fixed offset b.
class AffineFamily final : public MapFamily {
 public:
  explicit AffineFamily(double b) : b_(b) {}

  std::string name() const override { return "affine"; }
  FamilyTag tag() const override { return FamilyTag::Affine; }
  double offset() const override { return b_; }

  double eval(double p, double x) const override { return p * x + b_; }

  Monotonicity monotonicity(double p, const ClosedInterval&) const override {
    if (p == 0.0) return Monotonicity::NotMonotone;
    return p > 0 ? Monotonicity::Increasing : Monotonicity::Decreasing;
  }

  double min_abs_derivative(double p, const ClosedInterval&) const override { return std::fabs(p); }
  double max_abs_derivative(double p, const ClosedInterval&) const override { return std::fabs(p); }

  ClosedInterval inverse_on_branch(double p, const ClosedInterval& branch,
                                   const ClosedInterval& target) const override {
    if (p == 0.0) fail(Errc::NotMonotone, "affine: zero slope");
    const ClosedInterval t = clip_target_to_image(*this, p, branch, target, nullptr);
    const double a = (t.lo - b_) / p;
    const double b = (t.hi - b_) / p;
    return clamp_into({std::min(a, b), std::max(a, b)}, branch);
  }

  std::vector<ClosedInterval> monotone_branches(double p,
                                                const ClosedInterval& domain) const override {
    if (p == 0.0) return {};
    return {domain};
  }

  std::optional<RayBounds> ray_bounds(double p0, const ClosedInterval& J) const override {
    if (p0 <= 0.0) return std::nullopt;
    const double inf = std::numeric_limits<double>::infinity();
    // Image endpoints are p*J.lo + b and p*J.hi + b; the interval endpoint is
    // the growth coefficient.
    RayBounds rb{};
    rb.image_lo_sup = (J.lo > 0.0) ? inf : (J.lo == 0.0 ? b_ : p0 * J.lo + b_);
    rb.image_hi_inf = (J.hi < 0.0) ? -inf : (J.hi == 0.0 ? b_ : p0 * J.hi + b_);
    rb.min_abs_deriv_inf = std::fabs(p0);
    return rb;
  }

 private:
  double b_;
};

class PluginFamily final : public MapFamily {
 public:
  PluginFamily(std::string name, PluginHooks hooks)
      : name_(std::move(name)), hooks_(std::move(hooks)) {
    if (!hooks_.eval || !hooks_.monotonicity || !hooks_.min_abs_derivative ||
        !hooks_.max_abs_derivative || !hooks_.monotone_branches)
      fail(Errc::ParseError, "plugin family '" + name_ + "' is missing required hooks");
  }

  std::string name() const override { return name_; }
  FamilyTag tag() const override { return FamilyTag::Plugin; }

  double eval(double p, double x) const override { return hooks_.eval(p, x); }
  Monotonicity monotonicity(double p, const ClosedInterval& J) const override {
    return hooks_.monotonicity(p, J);
  }
  double min_abs_derivative(double p, const ClosedInterval& J) const override {
    return hooks_.min_abs_derivative(p, J);
  }
  double max_abs_derivative(double p, const ClosedInterval& J) const override {
    return hooks_.max_abs_derivative(p, J);
  }
  std::vector<ClosedInterval> monotone_branches(double p,
                                                const ClosedInterval& domain) const override {
    return hooks_.monotone_branches(p, domain);
  }
  std::optional<RayBounds> ray_bounds(double p0, const ClosedInterval& J) const override {
    if (!hooks_.ray_bounds) return std::nullopt;
    return hooks_.ray_bounds(p0, J);
  }

 private:
  std::string name_;
  PluginHooks hooks_;
};

}  // namespace

std::shared_ptr<const MapFamily> make_logistic() { return std::make_shared<LogisticFamily>(); }
std::shared_ptr<const MapFamily> make_tent() { return std::make_shared<TentFamily>(); }
std::shared_ptr<const MapFamily> make_affine(double offset) {
  return std::make_shared<AffineFamily>(offset);
}
std::shared_ptr<const MapFamily> make_plugin(std::string name, PluginHooks hooks) {
  return std::make_shared<PluginFamily>(std::move(name), std::move(hooks));
}

std::shared_ptr<const MapFamily> family_by_name(const std::string& tag, double offset) {
  if (tag == "logistic") return make_logistic();
  if (tag == "tent") return make_tent();
  if (tag == "affine") return make_affine(offset);
  fail(Errc::ParseError, "unknown map family '" + tag + "'");
}

}  // namespace chaoscert
