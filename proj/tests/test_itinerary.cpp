#include <doctest.h>

#include <random>

#include "coreent/angle.hpp"
#include "coreent/errors.hpp"
#include "coreent/itinerary.hpp"
#include "oracles.hpp"

using namespace coreent;

namespace {
Angle A(std::int64_t n, std::int64_t d) { return Angle::make(n, d); }
}  // namespace

TEST_CASE("critical portraits") {
  CHECK(portrait(A(1, 6)).lo == A(1, 12));
  CHECK(portrait(A(1, 6)).hi == A(7, 12));
  CHECK(portrait(A(3, 7)).lo == A(3, 14));
  CHECK(portrait(A(3, 7)).hi == A(5, 7));
  CHECK(portrait(A(0, 1)).lo.is_zero());
  CHECK(portrait(A(0, 1)).hi == A(1, 2));
}

TEST_CASE("symbol sequences parse, print and canonicalize") {
  CHECK(SymbolSeq::parse("1(10)").str() == "1(10)");
  CHECK(SymbolSeq::parse("(1010)").str() == "(10)");
  CHECK(SymbolSeq::parse("10(10)").str() == "(10)");
  CHECK(SymbolSeq::parse("*(1*)").str() == "(*1)");
  CHECK(SymbolSeq::parse("0(1)").at(1) == Symbol::Zero);
  CHECK(SymbolSeq::parse("0(1)").at(5) == Symbol::One);
  CHECK(SymbolSeq::parse("0(1)").shifted().str() == "(1)");
  CHECK_THROWS_AS(SymbolSeq::parse("10"), InvalidInput);
  CHECK_THROWS_AS(SymbolSeq::parse("1(2)"), InvalidInput);
  CHECK_THROWS_AS(SymbolSeq::parse("()"), InvalidInput);
}

TEST_CASE("itineraries of the worked examples") {
  CHECK(itinerary(A(1, 6), A(1, 6)).str() == "1(10)");
  CHECK(itinerary(A(1, 6), A(1, 3)) == SymbolSeq::parse("*(1*)"));
  CHECK(itinerary(A(7, 12), A(7, 12)).str() == "10(1)");
  CHECK(itinerary(A(3, 7), A(3, 7)).str() == "(10*)");
  CHECK(itinerary(A(4, 7), A(3, 7)).str() == "(101)");
}

TEST_CASE("wildcard equality") {
  CHECK(wildcard_equal(SymbolSeq::parse("(101)"), SymbolSeq::parse("(10*)")));
  CHECK_FALSE(wildcard_equal(SymbolSeq::parse("(1)"), SymbolSeq::parse("(0)")));
  const auto s = SymbolSeq::parse("01(110)");
  CHECK(wildcard_equal(s, s));
  CHECK(wildcard_equal(SymbolSeq::parse("(10)"), SymbolSeq::parse("1(01)")));
  CHECK_FALSE(wildcard_equal(SymbolSeq::parse("(10)"), SymbolSeq::parse("(100)")));
}

TEST_CASE("identification") {
  CHECK(identified(A(5, 12), A(7, 12), A(7, 12)));
  CHECK(identified(A(3, 7), A(4, 7), A(3, 7)));
  CHECK_FALSE(identified(A(1, 7), A(3, 7), A(3, 7)));
}

TEST_CASE("companions of the worked examples") {
  CHECK(companion(A(1, 3)) == A(2, 3));
  CHECK(companion(A(3, 7)) == A(4, 7));
  CHECK(companion(A(7, 12)) == A(5, 12));
  CHECK(companion(A(1, 5)) == A(4, 15));
  CHECK_FALSE(companion(A(1, 2)).has_value());
  CHECK_FALSE(companion(A(1, 6)).has_value());
}

TEST_CASE("property: companion matches an independent Lavaurs pairing up to period 10") {
  const auto chords = oracle::lavaurs_pairs(10);
  std::size_t checked = 0;
  for (const auto& [lo, hi] : chords) {
    const Angle a = Angle::from_unsigned(lo.n, lo.d), b = Angle::from_unsigned(hi.n, hi.d);
    REQUIRE(companion(a) == b);
    REQUIRE(companion(b) == a);
    ++checked;
  }
  // every periodic angle of period 2..10 is on exactly one chord
  std::size_t total = 0;
  for (unsigned p = 2; p <= 10; ++p)
    for (std::uint64_t k = 1; k < (1u << p) - 1; ++k)
      if (oracle::orbit_shape(k, (1u << p) - 1).second == p) ++total;
  CHECK(2 * checked == total);
}

TEST_CASE("property: shift compatibility and wildcard symmetry") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 400; ++i) {
    const std::uint64_t dx = 2 + rng() % 60, da = 2 + rng() % 60;
    const Angle xi = Angle::from_unsigned(rng() % dx, dx);
    const Angle alpha = Angle::from_unsigned(rng() % da, da);
    const auto s = itinerary(xi, alpha);
    REQUIRE(itinerary(sigma(xi), alpha) == s.shifted());
    const auto p = portrait(alpha);
    for (std::size_t n = 1; n <= 12; ++n) {
      const Angle x = sigma_n(xi, n - 1);
      REQUIRE((s.at(n) == Symbol::Star) == p.contains(x));
    }
    const Angle eta = Angle::from_unsigned(rng() % dx, dx);
    if (eta != xi) REQUIRE(identified(xi, eta, alpha) == identified(eta, xi, alpha));
  }
}

TEST_CASE("property: companion is an involution and stays in the signature") {
  for (std::uint64_t d : {15u, 31u, 63u, 12u, 24u, 28u, 56u, 60u}) {
    for (std::uint64_t n = 1; n < d; ++n) {
      const Angle t = Angle::from_unsigned(n, d);
      const auto c = companion(t);
      if (!c) continue;
      REQUIRE(companion(*c) == t);
      const auto ot = orbit(t), oc = orbit(*c);
      REQUIRE(ot.preperiod == oc.preperiod);
      REQUIRE(ot.period == oc.period);
    }
  }
}

TEST_CASE("value classes") {
  const auto cls = value_class(A(3, 7));
  REQUIRE(cls.size() == 2);
  CHECK(cls[0] == A(3, 7));
  CHECK(cls[1] == A(4, 7));
  CHECK(value_class(A(1, 2)).size() == 1);
  const auto [lo, hi] = shortest_gap({A(3, 7), A(4, 7)});
  CHECK(lo == A(3, 7));
  CHECK(hi == A(4, 7));
}
