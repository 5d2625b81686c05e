#include "coreent/lamination.hpp"

#include <algorithm>

#include "coreent/errors.hpp"
#include "coreent/itinerary.hpp"

namespace coreent {

namespace {

// Major over the ccw arc [x, y]: x/2 joined to the preimage of y that lies in
// the half circle after x/2.
Leaf half_major(const Angle& x, const Angle& y) {
  const Angle x_half = halves(x).first;
  const auto [y0, y1] = halves(y);
  const Angle other = in_open_arc(y0, x_half, antipode(x_half)) ? y0 : y1;
  return Leaf(x_half, other);
}

std::pair<Leaf, Leaf> majors_over(const Angle& x, const Angle& y) {
  const Leaf m = half_major(x, y);
  return {m, Leaf(antipode(m.a), antipode(m.b))};
}

bool majors_avoid(const std::pair<Leaf, Leaf>& ms, const Angle& x, const Angle& y) {
  for (const Leaf* l : {&ms.first, &ms.second})
    for (const Angle* e : {&l->a, &l->b})
      if (in_open_arc(*e, x, y)) return false;
  return true;
}

// Chooses between [lo, hi] and [hi, lo] for a non-degenerate minor.
std::pair<Angle, Angle> oriented_minor(const Leaf& minor) {
  const bool first = majors_avoid(majors_over(minor.a, minor.b), minor.a, minor.b);
  const bool second = majors_avoid(majors_over(minor.b, minor.a), minor.b, minor.a);
  if (first == second)
    throw InvariantViolation("characteristic arc of " + minor.str() + " is not unique");
  return first ? std::pair{minor.a, minor.b} : std::pair{minor.b, minor.a};
}

}  // namespace

Leaf::Leaf(Angle x, Angle y) : a(std::min(x, y)), b(std::max(x, y)) {}

std::string Leaf::str() const {
  if (degenerate()) return "{" + a.str() + "}";
  return "{" + a.str() + ", " + b.str() + "}";
}

bool CircArc::contains(const Angle& x) const {
  if (degenerate) return x == lo;
  return in_closed_arc(x, lo, hi);
}

bool CircArc::contains_interior(const Angle& x) const {
  if (degenerate) return false;
  return in_open_arc(x, lo, hi);
}

std::string CircArc::str() const {
  if (degenerate) return "{" + lo.str() + "}";
  return "[" + lo.str() + ", " + hi.str() + "]";
}

std::string ComponentRoot::str() const {
  return "{" + minus.str() + ", " + plus.str() + "} period " + std::to_string(period) +
         (satellite ? " satellite" : " primitive");
}

Leaf minor_class(const Angle& theta) {
  const std::vector<Angle> cls = value_class(theta);
  if (cls.size() < 2) return Leaf(theta, theta);
  const auto [lo, hi] = shortest_gap(cls);
  return Leaf(lo, hi);
}

std::pair<Leaf, Leaf> majors(const Angle& theta) {
  const Leaf minor = minor_class(theta);
  if (minor.degenerate()) {
    const auto [h0, h1] = halves(minor.a);
    return {Leaf(h0, h0), Leaf(h1, h1)};
  }
  const auto [x, y] = oriented_minor(minor);
  return majors_over(x, y);
}

CircArc characteristic_arc(const Angle& theta) {
  const Leaf minor = minor_class(theta);
  if (minor.degenerate()) return CircArc::point(minor.a);
  const auto [x, y] = oriented_minor(minor);
  return CircArc{x, y, false};
}

bool arc_contains(const CircArc& outer, const CircArc& inner) {
  if (inner.degenerate) return outer.contains(inner.lo);
  if (outer.degenerate) return false;
  if (!outer.contains(inner.lo) || !outer.contains(inner.hi)) return false;
  // inner must not run the long way round past outer.hi
  if (inner.lo == outer.lo) return true;
  return in_closed_arc(inner.lo, outer.lo, inner.hi);
}

ComponentRoot root_pair(const Angle& theta) {
  if (theta.is_zero()) throw NotARoot("0 lands at the cusp, not at a component root pair");
  const OrbitInfo o = orbit(theta);
  if (o.preperiod != 0) throw NotARoot(theta.str() + " is not periodic under doubling");
  const auto other = companion(theta);
  if (!other) throw NotARoot(theta.str() + " has no companion angle");
  ComponentRoot r{std::min(theta, *other), std::max(theta, *other), o.period, false};
  r.satellite = is_satellite(r);
  return r;
}

bool is_satellite(const ComponentRoot& r) {
  const OrbitInfo o = orbit(r.minus);
  return std::find(o.points.begin(), o.points.end(), r.plus) != o.points.end();
}

std::optional<Angle> rotation_number(const ComponentRoot& r) {
  std::vector<Angle> cycle = orbit(r.minus).points;
  const std::size_t p = cycle.size();
  if (p < 2) return std::nullopt;
  std::vector<Angle> sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  auto pos = [&](const Angle& x) {
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) -
                                    sorted.begin());
  };
  const std::size_t step = (pos(cycle[1]) + p - pos(cycle[0])) % p;
  for (std::size_t i = 0; i < p; ++i) {
    const std::size_t s = (pos(cycle[(i + 1) % p]) + p - pos(cycle[i])) % p;
    if (s != step) return std::nullopt;
  }
  return Angle::make(static_cast<std::int64_t>(step), static_cast<std::int64_t>(p));
}

bool is_cardioid_satellite(const ComponentRoot& r) {
  return is_satellite(r) && rotation_number(r).has_value();
}

std::vector<ComponentRoot> roots_of_period(std::size_t period) {
  if (period < 2 || period > kMaxScanPeriod)
    throw InvalidInput("root enumeration needs 2 <= period <= " + std::to_string(kMaxScanPeriod));
  const std::uint64_t den = (std::uint64_t{1} << period) - 1;
  std::vector<ComponentRoot> out;
  for (std::uint64_t k = 1; k < den; ++k) {
    const Angle a = Angle::from_unsigned(k, den);
    if (orbit(a).period != period) continue;
    const ComponentRoot r = root_pair(a);
    if (r.minus == a) out.push_back(r);
  }
  return out;
}

}  // namespace coreent
