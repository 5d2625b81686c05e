#pragma once

// Minor and major leaves, the characteristic arc, and root pairs of
// hyperbolic components.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coreent/angle.hpp"

namespace coreent {

/// Unordered pair of angles, stored with a <= b. a == b is a degenerate leaf.
struct Leaf {
  Angle a;
  Angle b;

  Leaf() = default;
  Leaf(Angle x, Angle y);

  bool degenerate() const { return a == b; }
  std::string str() const;

  friend bool operator==(const Leaf&, const Leaf&) = default;
};

/// Closed counterclockwise arc [lo, hi], or the single point lo when degenerate.
struct CircArc {
  Angle lo;
  Angle hi;
  bool degenerate = false;

  static CircArc point(const Angle& x) { return {x, x, true}; }

  bool contains(const Angle& x) const;
  /// x strictly inside; never true for a degenerate arc.
  bool contains_interior(const Angle& x) const;
  std::string str() const;

  friend bool operator==(const CircArc&, const CircArc&) = default;
};

struct ComponentRoot {
  Angle minus;
  Angle plus;
  std::size_t period = 0;
  bool satellite = false;

  std::string str() const;
};

/// Minor leaf of the lamination induced by theta.
///
/// Uses the identification class of theta: a one-point class gives the
/// degenerate leaf {theta}; otherwise the endpoints of its shortest
/// complementary arc.
Leaf minor_class(const Angle& theta);

/// The two majors, {x/2, y/2} over the characteristic arc [x, y] and its
/// antipodal image. For a degenerate minor, the two preimage points.
std::pair<Leaf, Leaf> majors(const Angle& theta);

CircArc characteristic_arc(const Angle& theta);

/// inner is a subset of outer as closed subsets of the circle.
bool arc_contains(const CircArc& outer, const CircArc& inner);

/// Root pair {theta, companion(theta)} of the hyperbolic component whose
/// root the periodic angle theta lands on. Throws NotARoot otherwise.
ComponentRoot root_pair(const Angle& theta);

/// Both angles lie on one cycle under doubling.
bool is_satellite(const ComponentRoot& r);

/// Combinatorial rotation number q/p of the cycle of r.minus when doubling
/// advances every point by the same number of places in circular order.
std::optional<Angle> rotation_number(const ComponentRoot& r);

/// is_satellite and rotation_number both hold: a satellite of the main cardioid.
bool is_cardioid_satellite(const ComponentRoot& r);

/// All root pairs of exact period p, each listed once (minus < plus).
std::vector<ComponentRoot> roots_of_period(std::size_t period);

}  // namespace coreent
