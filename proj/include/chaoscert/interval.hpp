#pragma once

#include <algorithm>
#include <optional>

#include "chaoscert/errors.hpp"

namespace chaoscert {

// Closed real interval [lo, hi]. The one-dimensional phase sets V_j, their
// images and preimages are all of this shape.
struct ClosedInterval {
  double lo = 0.0;
  double hi = 0.0;

  double diameter() const { return hi - lo; }
  double midpoint() const { return lo + 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const ClosedInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  ClosedInterval widened(double eps) const { return {lo - eps, hi + eps}; }

  bool operator==(const ClosedInterval&) const = default;
};

inline ClosedInterval make_interval(double lo, double hi) {
  if (!(lo <= hi)) fail(Errc::ParseError, "interval endpoints out of order");
  return {lo, hi};
}

// Signed separation: positive gap when disjoint, <= 0 when they touch or
// overlap (the negative of the overlap length).
inline double gap(const ClosedInterval& a, const ClosedInterval& b) {
  return std::max(b.lo - a.hi, a.lo - b.hi);
}

inline std::optional<ClosedInterval> intersect(const ClosedInterval& a, const ClosedInterval& b) {
  double lo = std::max(a.lo, b.lo);
  double hi = std::min(a.hi, b.hi);
  if (lo > hi) return std::nullopt;
  return ClosedInterval{lo, hi};
}

inline ClosedInterval hull(const ClosedInterval& a, const ClosedInterval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// How deep `inner` sits inside `outer`; >= 0 iff inner is contained.
inline double inclusion_margin(const ClosedInterval& outer, const ClosedInterval& inner) {
  return std::min(inner.lo - outer.lo, outer.hi - inner.hi);
}

}  // namespace chaoscert
