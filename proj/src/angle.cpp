#include "coreent/angle.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <numeric>
#include <unordered_map>

#include "coreent/errors.hpp"

namespace coreent {

namespace {

using u128 = unsigned __int128;

std::uint64_t narrow(u128 v) {
  if (v > static_cast<u128>(UINT64_MAX)) throw Overflow("angle exceeds 64-bit fraction range");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

Angle Angle::from_unsigned(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw InvalidInput("zero denominator");
  num %= den;
  const std::uint64_t g = std::gcd(num, den);
  if (num == 0) return Angle(0, 1);
  return Angle(num / g, den / g);
}

Angle Angle::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidInput("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t r = num % den;
  if (r < 0) r += den;
  return from_unsigned(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(den));
}

Angle Angle::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw InvalidInput("cannot parse angle '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return make(parse_int(text), 1);
  return make(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Angle::str() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
  const u128 lhs = static_cast<u128>(a.num_) * b.den_;
  const u128 rhs = static_cast<u128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

Angle make_angle(std::int64_t num, std::int64_t den) { return Angle::make(num, den); }

Angle sigma(const Angle& theta, int d) {
  if (d < 2) throw InvalidDegree("degree must be at least 2");
  const u128 n = static_cast<u128>(theta.num()) * static_cast<unsigned>(d);
  return Angle::from_unsigned(static_cast<std::uint64_t>(n % theta.den()), theta.den());
}

Angle sigma_n(const Angle& theta, std::size_t n, int d) {
  Angle t = theta;
  for (std::size_t i = 0; i < n; ++i) t = sigma(t, d);
  return t;
}

OrbitInfo orbit(const Angle& theta, int d) {
  if (d < 2) throw InvalidDegree("degree must be at least 2");
  OrbitInfo info;
  std::unordered_map<Angle, std::size_t, AngleHash> seen;
  Angle t = theta;
  while (true) {
    auto [it, inserted] = seen.emplace(t, info.points.size());
    if (!inserted) {
      info.preperiod = it->second;
      info.period = info.points.size() - it->second;
      return info;
    }
    info.points.push_back(t);
    t = sigma(t, d);
  }
}

bool in_open_arc(const Angle& x, const Angle& a, const Angle& b) {
  if (a == b) throw InvalidArc("open arc with equal endpoints");
  if (a < b) return a < x && x < b;
  return x > a || x < b;
}

bool in_closed_arc(const Angle& x, const Angle& a, const Angle& b) {
  if (a == b) return x == a;
  return x == a || x == b || in_open_arc(x, a, b);
}

Angle antipode(const Angle& theta) {
  const u128 den2 = static_cast<u128>(theta.den()) * 2;
  const u128 num2 = static_cast<u128>(theta.num()) * 2 + theta.den();
  if (den2 > static_cast<u128>(UINT64_MAX)) {
    // den even: theta + 1/2 keeps the denominator
    if (theta.den() % 2 == 0)
      return Angle::from_unsigned(theta.num() + theta.den() / 2, theta.den());
    throw Overflow("antipode overflows");
  }
  return Angle::from_unsigned(narrow(num2 % den2), narrow(den2));
}

std::pair<Angle, Angle> halves(const Angle& theta) {
  const std::uint64_t den2 = narrow(static_cast<u128>(theta.den()) * 2);
  const Angle lo = Angle::from_unsigned(theta.num(), den2);
  return {lo, antipode(lo)};
}

BinaryWords to_binary(const Angle& theta) {
  BinaryWords w;
  if (theta.is_zero()) {
    w.rep = "0";
    return w;
  }
  std::uint64_t den = theta.den();
  std::size_t twos = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  const std::uint64_t period = order_of_two(den);
  auto digits = [&](std::size_t count) {
    std::string out;
    std::uint64_t r = theta.num();
    for (std::size_t i = 0; i < count; ++i) {
      const u128 twice = static_cast<u128>(r) * 2;
      out.push_back(twice >= theta.den() ? '1' : '0');
      r = static_cast<std::uint64_t>(twice % theta.den());
    }
    return out;
  };
  if (den == 1) {
    // dyadic: terminating expansion has `twos` digits ending in 1
    std::string term = digits(twos);
    w.has_alternative = true;
    w.alt_pre = term;
    w.alt_rep = "0";
    term.back() = '0';
    w.pre = term;
    w.rep = "1";
    return w;
  }
  const std::string all = digits(twos + period);
  w.pre = all.substr(0, twos);
  w.rep = all.substr(twos);
  return w;
}

Angle from_binary(std::string_view pre, std::string_view rep) {
  if (rep.empty()) throw InvalidInput("empty repetend");
  if (pre.size() + rep.size() > 62) throw Overflow("binary word too long");
  auto value = [](std::string_view s) {
    std::uint64_t v = 0;
    for (char c : s) {
      if (c != '0' && c != '1') throw InvalidInput("binary word must use 0/1");
      v = v * 2 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  };
  const std::uint64_t r_den = (std::uint64_t{1} << rep.size()) - 1;
  const u128 num = static_cast<u128>(value(pre)) * r_den + value(rep);
  const u128 den = static_cast<u128>(r_den) << pre.size();
  // .(1) repeating equals 1, which reduces to 0 mod 1
  return Angle::from_unsigned(narrow(num % den), narrow(den));
}

Angle from_binary(const BinaryWords& w) { return from_binary(w.pre, w.rep); }

bool arc_length_less(const Angle& a, const Angle& b, const Angle& c, const Angle& d) {
  using boost::multiprecision::int512_t;
  auto length = [](const Angle& lo, const Angle& hi) {
    int512_t num = int512_t(hi.num()) * lo.den() - int512_t(lo.num()) * hi.den();
    const int512_t den = int512_t(lo.den()) * hi.den();
    if (num < 0) num += den;
    return std::pair{num, den};
  };
  const auto [n1, d1] = length(a, b);
  const auto [n2, d2] = length(c, d);
  return n1 * d2 < n2 * d1;
}

std::uint64_t order_of_two(std::uint64_t odd_modulus) {
  if (odd_modulus % 2 == 0) throw InvalidInput("order_of_two needs an odd modulus");
  if (odd_modulus == 1) return 1;
  std::uint64_t k = 1;
  u128 r = 2 % odd_modulus;
  while (r != 1) {
    r = (r * 2) % odd_modulus;
    ++k;
  }
  return k;
}

}  // namespace coreent
