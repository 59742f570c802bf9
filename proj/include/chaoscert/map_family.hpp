#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chaoscert/interval.hpp"

namespace chaoscert {

enum class Monotonicity { Increasing, Decreasing, NotMonotone };

// Built-in families get exact closed-form treatment in the high-precision
// witness engine; plugins fall back to the generic double-precision path.
enum class FamilyTag { Logistic, Tent, Affine, Plugin };

// Bounds valid for every parameter value p >= p0, used when a parameter
// sequence grows without bound. image_lo_sup / image_hi_inf bracket the image
// endpoints over the whole ray; min_abs_deriv_inf bounds the expansion
// constant from below.
struct RayBounds {
  double image_lo_sup;
  double image_hi_inf;
  double min_abs_deriv_inf;
};

// One-parameter interval map family. All interval operations require (and
// report on) strict monotonicity; images and preimages are exact endpoint
// computations for the built-in families.
class MapFamily {
 public:
  virtual ~MapFamily() = default;

  virtual std::string name() const = 0;
  virtual FamilyTag tag() const = 0;

  virtual double eval(double p, double x) const = 0;
  virtual Monotonicity monotonicity(double p, const ClosedInterval& J) const = 0;
  virtual double min_abs_derivative(double p, const ClosedInterval& J) const = 0;
  virtual double max_abs_derivative(double p, const ClosedInterval& J) const = 0;

  // Exact image of a monotone branch; throws NotMonotone otherwise.
  ClosedInterval image(double p, const ClosedInterval& J) const;

  // {x in branch : f_p(x) in target} for a monotone branch. Closed-form for
  // the built-ins, bisection to kTolInv otherwise. Throws EmptyPreimage when
  // target misses the image of the branch.
  virtual ClosedInterval inverse_on_branch(double p, const ClosedInterval& branch,
                                           const ClosedInterval& target) const;

  // Maximal monotone pieces of the domain, ordered left to right. Used when
  // pulling points back through times before the certified window.
  virtual std::vector<ClosedInterval> monotone_branches(double p,
                                                        const ClosedInterval& domain) const = 0;

  // Tail oracle for unbounded parameter rays; nullopt when the family cannot
  // analyze them (certification then degrades to prefix-only).
  virtual std::optional<RayBounds> ray_bounds(double p0, const ClosedInterval& J) const {
    (void)p0;
    (void)J;
    return std::nullopt;
  }

  // Fixed additive offset (affine family); exposed so exact reconstruction in
  // other precisions is possible.
  virtual double offset() const { return 0.0; }
};

std::shared_ptr<const MapFamily> make_logistic();
std::shared_ptr<const MapFamily> make_tent();
std::shared_ptr<const MapFamily> make_affine(double offset);

// Escape hatch for user-supplied maps. Monotonicity and derivative ranges
// must be supplied; the inverse defaults to bisection.
struct PluginHooks {
  std::function<double(double p, double x)> eval;
  std::function<Monotonicity(double p, const ClosedInterval&)> monotonicity;
  std::function<double(double p, const ClosedInterval&)> min_abs_derivative;
  std::function<double(double p, const ClosedInterval&)> max_abs_derivative;
  std::function<std::vector<ClosedInterval>(double p, const ClosedInterval&)> monotone_branches;
  std::function<std::optional<RayBounds>(double p0, const ClosedInterval&)> ray_bounds;  // optional
};

std::shared_ptr<const MapFamily> make_plugin(std::string name, PluginHooks hooks);

// Lookup by config tag: "logistic", "tent", "affine" (affine takes `offset`).
std::shared_ptr<const MapFamily> family_by_name(const std::string& tag, double offset = 0.0);

}  // namespace chaoscert
