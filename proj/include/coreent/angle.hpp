#pragma once

// Exact rational points of the circle R/Z and their orbits under t -> d*t.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coreent {

/// A rational angle num/den in [0, 1), always stored in lowest terms.
///
/// Numerator and denominator are 64-bit; any operation whose exact result
/// would not fit throws `Overflow` instead of rounding.
class Angle {
 public:
  constexpr Angle() = default;

  /// Reduced representative of num/den mod 1. Throws InvalidInput on den == 0.
  static Angle make(std::int64_t num, std::int64_t den);
  /// Same as make() for already nonnegative values of any size up to 2^64.
  static Angle from_unsigned(std::uint64_t num, std::uint64_t den);
  /// Parses "p/q", "0" or a bare integer.
  static Angle parse(std::string_view text);

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  /// Odd denominator: purely periodic under doubling.
  bool is_periodic2() const { return (den_ & 1u) == 1u; }
  /// Denominator a power of two (including 0 = 0/1).
  bool is_dyadic() const { return (den_ & (den_ - 1)) == 0; }

  /// Approximate value, for display and floating estimates only.
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const;

  friend bool operator==(const Angle& a, const Angle& b) = default;
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b);

 private:
  constexpr Angle(std::uint64_t n, std::uint64_t d) : num_(n), den_(d) {}

  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

struct OrbitInfo {
  std::vector<Angle> points;  ///< theta, sigma(theta), ... ; all distinct
  std::size_t preperiod = 0;
  std::size_t period = 1;
};

/// Binary expansion .pre(rep) of an angle.
struct BinaryWords {
  std::string pre;
  std::string rep;
  /// Set for dyadic angles other than 0: the terminating expansion
  /// .alt_pre(0) denotes the same angle.
  bool has_alternative = false;
  std::string alt_pre;
  std::string alt_rep;
};

Angle make_angle(std::int64_t num, std::int64_t den);

/// d * theta mod 1. Throws InvalidDegree for d < 2.
Angle sigma(const Angle& theta, int d = 2);
/// Iterate sigma n times.
Angle sigma_n(const Angle& theta, std::size_t n, int d = 2);

OrbitInfo orbit(const Angle& theta, int d = 2);

/// Strictly inside the counterclockwise open arc from a to b. Throws InvalidArc when a == b.
bool in_open_arc(const Angle& x, const Angle& a, const Angle& b);
/// Counterclockwise closed arc from a to b; a == b is the single point.
bool in_closed_arc(const Angle& x, const Angle& a, const Angle& b);

/// Antipode theta + 1/2.
Angle antipode(const Angle& theta);
/// The two preimages under doubling: theta/2 and theta/2 + 1/2, in that order.
std::pair<Angle, Angle> halves(const Angle& theta);

BinaryWords to_binary(const Angle& theta);
/// Value of .pre(rep); rep must be nonempty and pre+rep at most 62 digits.
Angle from_binary(const BinaryWords& w);
Angle from_binary(std::string_view pre, std::string_view rep);

/// Strict "counterclockwise length of [a,b] < length of [c,d]", exact.
bool arc_length_less(const Angle& a, const Angle& b, const Angle& c, const Angle& d);

/// Exact multiplicative order of 2 modulo an odd modulus (1 for modulus 1).
std::uint64_t order_of_two(std::uint64_t odd_modulus);

struct AngleHash {
  std::size_t operator()(const Angle& a) const noexcept {
    return std::hash<std::uint64_t>{}(a.num() * 0x9E3779B97F4A7C15ull ^ a.den());
  }
};

}  // namespace coreent
