#include <doctest.h>

#include <cmath>
#include <random>

#include "coreent/entropy.hpp"
#include "coreent/errors.hpp"
#include "coreent/lamination.hpp"
#include "coreent/tuning.hpp"
#include "oracles.hpp"

using namespace coreent;

namespace {

Angle A(std::int64_t n, std::int64_t d) { return Angle::make(n, d); }

// Reference substitution on long-division digits, one expansion only.
Angle substitute(const TuningWords& w, const Angle& t) {
  const auto [pre, rep] = oracle::binary_digits(t.num(), t.den());
  std::string p, r;
  for (char c : pre) p += c == '0' ? w.u : w.v;
  for (char c : rep) r += c == '0' ? w.u : w.v;
  return from_binary(p, r);
}

}  // namespace

TEST_CASE("tuning words") {
  const auto b = tuning_words(root_pair(A(1, 3)));
  CHECK(b.u == "01");
  CHECK(b.v == "10");
  CHECK(b.period == 2);
  CHECK(tuning_words(root_pair(A(3, 7))).u == "011");
  CHECK(tuning_words(root_pair(A(3, 7))).v == "100");
  CHECK(tuning_words(root_pair(A(2, 5))).u == "0110");
  CHECK(tuning_words(root_pair(A(2, 5))).v == "1001");
}

TEST_CASE("tuned angles") {
  const auto b = tuning_words(root_pair(A(1, 3)));
  CHECK(tune_angle(b, A(1, 2)) == std::vector<Angle>{A(5, 12), A(7, 12)});
  CHECK(tune_angle(b, A(1, 3)) == std::vector<Angle>{A(2, 5)});
  CHECK(tune_angle(b, A(3, 7)) == std::vector<Angle>{A(26, 63)});
  const auto a = tuning_words(root_pair(A(3, 7)));
  const auto t = tune_angle(a, A(1, 2));
  REQUIRE(t.size() == 2);
  CHECK(t[1] == A(31, 56));
  CHECK(t[0] == A(25, 56));
  CHECK(tune_angle(a, A(0, 1)) == std::vector<Angle>{A(3, 7)});
}

TEST_CASE("entropy formulas at the anchors") {
  const auto r1 = tuned_entropy_check(root_pair(A(1, 3)), A(1, 2));
  CHECK(r1.pass);
  CHECK(r1.expected == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
  const auto r2 = tuned_entropy_check(root_pair(A(3, 7)), A(1, 2));
  CHECK(r2.pass);
  CHECK(r2.h_tuned[1] == doctest::Approx(std::log(oracle::golden())).epsilon(1e-9));
  const auto r3 = tuned_entropy_check(root_pair(A(1, 3)), A(3, 7));
  CHECK(r3.pass);
  CHECK(r3.h_tuned[0] == doctest::Approx(0.5 * std::log(oracle::golden())).epsilon(1e-9));
  CHECK(renorm_inequality_check(root_pair(A(1, 3)), A(1, 2)));
  CHECK(renorm_inequality_check(root_pair(A(3, 7)), A(1, 2)));
  CHECK(renorm_inequality_check(root_pair(A(1, 3)), A(1, 3)));
}

TEST_CASE("the cusp is refused for satellite roots") {
  CHECK_THROWS_AS(tuned_entropy_check(root_pair(A(1, 3)), A(0, 1)), PreconditionError);
  CHECK(tuned_entropy_check(root_pair(A(3, 7)), A(0, 1)).pass);
}

TEST_CASE("property: substitution homomorphism and agreement with a digit oracle") {
  std::mt19937_64 rng(99);
  for (std::size_t p = 2; p <= 5; ++p) {
    for (const auto& r : roots_of_period(p)) {
      const auto w = tuning_words(r);
      for (int i = 0; i < 20; ++i) {
        const std::uint64_t d = 3 + 2 * (rng() % 6);  // odd denominators keep words short
        const Angle t = Angle::from_unsigned(1 + rng() % (d - 1), d);
        const auto tuned = tune_angle(w, t);
        REQUIRE(tuned.size() == 1);
        REQUIRE(tuned[0] == substitute(w, t));
        const auto shifted = tune_angle(w, sigma(t));
        REQUIRE(shifted.size() == 1);
        REQUIRE(shifted[0] == sigma_n(tuned[0], p));
        REQUIRE(characteristic_arc(r.minus).contains(tuned[0]));
      }
    }
  }
}

TEST_CASE("property: tuned entropy is constant for a primitive root") {
  const auto r = root_pair(A(3, 7));
  const auto w = tuning_words(r);
  double lo = 1e9, hi = -1e9;
  for (const auto& t : {A(1, 2), A(1, 3), A(1, 6), A(3, 7), A(1, 4), A(7, 12), A(1, 5), A(2, 7),
                        A(1, 10), A(3, 10), A(5, 14), A(1, 12), A(5, 12), A(3, 5), A(1, 9),
                        A(4, 9), A(1, 11), A(3, 11), A(5, 6), A(9, 14)}) {
    for (const auto& x : tune_angle(w, t)) {
      const double h = core_entropy(x).h;
      lo = std::min(lo, h);
      hi = std::max(hi, h);
    }
  }
  CHECK(hi - lo <= 1e-6);
  CHECK(lo == doctest::Approx(std::log(oracle::golden())).epsilon(1e-9));
}
