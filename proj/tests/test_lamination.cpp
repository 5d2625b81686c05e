#include <doctest.h>

#include <algorithm>

#include "coreent/angle.hpp"
#include "coreent/errors.hpp"
#include "coreent/itinerary.hpp"
#include "coreent/lamination.hpp"
#include "oracles.hpp"

using namespace coreent;

namespace {
Angle A(std::int64_t n, std::int64_t d) { return Angle::make(n, d); }

Leaf image(const Leaf& l) { return Leaf(sigma(l.a), sigma(l.b)); }
Angle reflect(const Angle& x) {
  return Angle::from_unsigned(x.den() - x.num(), x.den());
}
}  // namespace

TEST_CASE("minor leaves") {
  CHECK(minor_class(A(3, 7)) == Leaf(A(3, 7), A(4, 7)));
  CHECK(minor_class(A(1, 2)).degenerate());
  CHECK(minor_class(A(7, 12)) == Leaf(A(5, 12), A(7, 12)));
  CHECK(minor_class(A(3, 7)).str() == "{3/7, 4/7}");
}

TEST_CASE("majors") {
  const auto [m1, m2] = majors(A(7, 12));
  CHECK(m1 == Leaf(A(5, 24), A(7, 24)));
  CHECK(m2 == Leaf(A(17, 24), A(19, 24)));
  const auto [d1, d2] = majors(A(1, 2));
  CHECK(d1 == Leaf(A(1, 4), A(1, 4)));
  CHECK(d2 == Leaf(A(3, 4), A(3, 4)));
  // both majors of the airplane map onto its minor and are antipodal
  const auto [a1, a2] = majors(A(3, 7));
  CHECK(image(a1) == minor_class(A(3, 7)));
  CHECK(image(a2) == minor_class(A(3, 7)));
  CHECK(Leaf(antipode(a1.a), antipode(a1.b)) == a2);
}

TEST_CASE("characteristic arcs and containment") {
  CHECK(characteristic_arc(A(3, 7)) == CircArc{A(3, 7), A(4, 7), false});
  CHECK(characteristic_arc(A(7, 12)) == CircArc{A(5, 12), A(7, 12), false});
  CHECK(characteristic_arc(A(1, 2)) == CircArc::point(A(1, 2)));
  CHECK(characteristic_arc(A(1, 2)).str() == "{1/2}");
  CHECK(characteristic_arc(A(3, 7)).str() == "[3/7, 4/7]");

  const CircArc outer{A(5, 12), A(7, 12), false}, inner{A(3, 7), A(4, 7), false};
  CHECK(arc_contains(outer, inner));
  CHECK(arc_contains(inner, CircArc::point(A(1, 2))));
  CHECK_FALSE(arc_contains(inner, outer));
}

TEST_CASE("root pairs") {
  const auto r1 = root_pair(A(1, 3));
  CHECK(r1.minus == A(1, 3));
  CHECK(r1.plus == A(2, 3));
  CHECK(r1.period == 2);
  CHECK(r1.satellite);
  const auto r2 = root_pair(A(3, 7));
  CHECK(r2.period == 3);
  CHECK_FALSE(r2.satellite);
  const auto r3 = root_pair(A(3, 5));
  CHECK(r3.minus == A(2, 5));
  CHECK(r3.period == 4);
  CHECK(r3.satellite);
  CHECK_THROWS_AS(root_pair(A(0, 1)), NotARoot);
  CHECK_THROWS_AS(root_pair(A(1, 6)), NotARoot);
}

TEST_CASE("satellite classification and rotation numbers") {
  CHECK(is_satellite(root_pair(A(1, 7))));
  CHECK_FALSE(is_satellite(root_pair(A(3, 7))));
  CHECK(is_satellite(root_pair(A(2, 5))));
  CHECK(rotation_number(root_pair(A(1, 3))) == A(1, 2));
  CHECK(rotation_number(root_pair(A(1, 7))) == A(1, 3));
  CHECK_FALSE(rotation_number(root_pair(A(2, 5))).has_value());
  CHECK(is_cardioid_satellite(root_pair(A(1, 7))));
  CHECK_FALSE(is_cardioid_satellite(root_pair(A(2, 5))));
  CHECK_FALSE(is_cardioid_satellite(root_pair(A(3, 7))));
}

TEST_CASE("root enumeration matches the Lavaurs pairing") {
  const auto chords = oracle::lavaurs_pairs(9);
  std::size_t n = 0;
  for (std::size_t p = 2; p <= 9; ++p) {
    for (const auto& r : roots_of_period(p)) {
      REQUIRE(r.minus < r.plus);
      const auto it = std::find_if(chords.begin(), chords.end(), [&](const auto& c) {
        return Angle::from_unsigned(c.first.n, c.first.d) == r.minus &&
               Angle::from_unsigned(c.second.n, c.second.d) == r.plus;
      });
      REQUIRE(it != chords.end());
      ++n;
    }
  }
  CHECK(n == chords.size());
  CHECK(roots_of_period(3).size() == 3);
  CHECK(roots_of_period(4).size() == 6);
  CHECK_THROWS_AS(roots_of_period(1), InvalidInput);
}

TEST_CASE("property: majors map to the minor and the arc holds theta") {
  for (std::uint64_t d : {7u, 15u, 31u, 63u, 127u, 6u, 10u, 12u, 14u, 28u, 30u, 56u}) {
    for (std::uint64_t n = 1; n < d; ++n) {
      const Angle t = Angle::from_unsigned(n, d);
      const Leaf minor = minor_class(t);
      const auto [m1, m2] = majors(t);
      REQUIRE(image(m1) == minor);
      REQUIRE(image(m2) == minor);
      REQUIRE(Leaf(antipode(m1.a), antipode(m1.b)) == m2);
      const CircArc arc = characteristic_arc(t);
      // theta sits in the class whose shortest leaf is the minor
      const auto cls = value_class(t);
      INFO(t.str());
      REQUIRE(std::find(cls.begin(), cls.end(), minor.a) != cls.end());
      REQUIRE(std::find(cls.begin(), cls.end(), minor.b) != cls.end());
      REQUIRE(arc.contains(minor.a));
      REQUIRE(arc.contains(minor.b));
      if (cls.size() <= 2) REQUIRE(arc.contains(t));
      for (const Angle& x : {m1.a, m1.b, m2.a, m2.b}) REQUIRE_FALSE(arc.contains_interior(x));
      const Leaf mirrored(reflect(minor.a), reflect(minor.b));
      const auto c = companion(t);
      if (c && cls.size() == 2) REQUIRE((*c == reflect(t)) == (mirrored == minor));
    }
  }
}

TEST_CASE("property: root pairs share the characteristic arc") {
  for (std::size_t p = 2; p <= 8; ++p)
    for (const auto& r : roots_of_period(p)) {
      REQUIRE(characteristic_arc(r.minus) == characteristic_arc(r.plus));
      REQUIRE(identified(r.minus, r.plus, r.minus));
    }
}
