#include "coreent/itinerary.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "coreent/errors.hpp"

namespace coreent {

namespace {

using u128 = unsigned __int128;

// All angles whose orbit has exactly the given preperiod and period.
std::vector<Angle> signature_candidates(std::size_t preperiod, std::size_t period) {
  if (preperiod + period > kMaxScanPeriod)
    throw InvalidInput("signature scan too large (preperiod + period > " +
                       std::to_string(kMaxScanPeriod) + ")");
  const std::uint64_t cycle_den = (std::uint64_t{1} << period) - 1;
  const std::uint64_t den = cycle_den << preperiod;
  std::vector<Angle> out;
  for (std::uint64_t k = 0; k < den; ++k) {
    const Angle a = Angle::from_unsigned(k, den);
    if (a.den() != den && preperiod > 0) {
      // denominators with a smaller 2-part have smaller preperiod
      std::uint64_t d = a.den();
      std::size_t twos = 0;
      while (d % 2 == 0) {
        d /= 2;
        ++twos;
      }
      if (twos != preperiod) continue;
    } else if (preperiod == 0 && a.den() % 2 == 0) {
      continue;
    }
    const OrbitInfo o = orbit(a);
    if (o.preperiod == preperiod && o.period == period) out.push_back(a);
  }
  return out;
}

std::vector<Angle> closure_over(const Angle& seed, const std::vector<Angle>& candidates,
                                const Angle& alpha) {
  std::vector<SymbolSeq> its;
  its.reserve(candidates.size());
  for (const auto& c : candidates) its.push_back(itinerary(c, alpha));
  const SymbolSeq seed_it = itinerary(seed, alpha);

  std::vector<bool> in_class(candidates.size(), false);
  std::vector<SymbolSeq> frontier{seed_it};
  std::vector<Angle> members{seed};
  while (!frontier.empty()) {
    const SymbolSeq s = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (in_class[i] || candidates[i] == seed) continue;
      if (wildcard_equal(s, its[i])) {
        in_class[i] = true;
        members.push_back(candidates[i]);
        frontier.push_back(its[i]);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

// Numerator arithmetic over a power-of-two multiple of a fixed base
// denominator. Positions are integers N representing N / den.
struct ScaledPoint {
  u128 num;
  u128 den;
};

// Fixed points of the inverse-branch composition that follows the given
// symbol word (word[0] applied last). Breakpoints are the sigma-images of the
// portrait's alpha, all of which have denominator dividing alpha.den().
std::vector<Angle> periodic_class_by_branches(const std::vector<Symbol>& word,
                                              const CriticalPortrait& cp) {
  const std::size_t n = word.size();
  const std::uint64_t q = cp.alpha.den();
  if (n > 62 || std::bit_width(q) + n + 3 > 127)
    throw Overflow("periodic class computation exceeds 128-bit range");

  std::vector<std::uint64_t> cuts;
  {
    Angle t = cp.alpha;
    for (std::size_t i = 0; i <= n; ++i) {
      cuts.push_back(t.num() * (q / t.den()));
      t = sigma(t);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }

  std::set<Angle> found;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const u128 a = cuts[i];
    const u128 b = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts[0] + q;
    // midpoint (a + b) / (2q), taken mod 1
    ScaledPoint y{(a + b) % (2 * static_cast<u128>(q)), 2 * static_cast<u128>(q)};
    std::uint64_t digits = 0;
    bool star = false;
    for (std::size_t step = 0; step < n; ++step) {
      const Symbol s = word[n - 1 - step];
      // candidates y/2 and y/2 + 1/2 over denominator 2*den
      const u128 den2 = y.den * 2;
      const u128 lo = static_cast<u128>(cp.alpha.num()) * (den2 / (2 * static_cast<u128>(cp.alpha.den())));
      auto rel = [&](u128 x) { return (x + den2 - lo) % den2; };
      const u128 c0 = y.num;
      const u128 c1 = y.num + y.den;
      const u128 r0 = rel(c0);
      if (r0 == 0 || r0 == y.den) {
        star = true;
        break;
      }
      const bool c0_in_one = r0 < y.den;
      const bool pick_upper = (s == Symbol::One) ? !c0_in_one : c0_in_one;
      y = ScaledPoint{pick_upper ? c1 : c0, den2};
      digits |= static_cast<std::uint64_t>(pick_upper) << step;
    }
    if (star) continue;
    // digits bit `step` is binary digit number n - step of the fixed point
    const std::uint64_t cycle_den = (std::uint64_t{1} << n) - 1;
    found.insert(Angle::from_unsigned(digits, cycle_den));
  }

  std::vector<Angle> out;
  for (const auto& cand : found) {
    Angle t = cand;
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      ok = symbol_of(t, cp) == word[k];
      t = sigma(t);
    }
    if (ok && t == cand) out.push_back(cand);
  }
  return out;
}

}  // namespace

char to_char(Symbol s) {
  switch (s) {
    case Symbol::Zero:
      return '0';
    case Symbol::One:
      return '1';
    case Symbol::Star:
      return '*';
  }
  return '?';
}

SymbolSeq::SymbolSeq(std::vector<Symbol> pre, std::vector<Symbol> rep)
    : pre_(std::move(pre)), rep_(std::move(rep)) {
  if (rep_.empty()) throw InvalidInput("symbol sequence needs a nonempty repetend");
  canonicalize();
}

SymbolSeq SymbolSeq::parse(const std::string& text) {
  auto sym = [&](char c) {
    switch (c) {
      case '0':
        return Symbol::Zero;
      case '1':
        return Symbol::One;
      case '*':
        return Symbol::Star;
      default:
        throw InvalidInput("bad symbol in '" + text + "'");
    }
  };
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    throw InvalidInput("symbol sequence needs a parenthesized repetend: '" + text + "'");
  std::vector<Symbol> pre, rep;
  for (std::size_t i = 0; i < open; ++i) pre.push_back(sym(text[i]));
  for (std::size_t i = open + 1; i + 1 < text.size(); ++i) rep.push_back(sym(text[i]));
  return SymbolSeq(std::move(pre), std::move(rep));
}

void SymbolSeq::canonicalize() {
  const std::size_t n = rep_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = rep_[i] == rep_[i - d];
    if (periodic) {
      rep_.resize(d);
      break;
    }
  }
  while (!pre_.empty() && pre_.back() == rep_.back()) {
    pre_.pop_back();
    std::rotate(rep_.rbegin(), rep_.rbegin() + 1, rep_.rend());
  }
}

Symbol SymbolSeq::at(std::size_t n) const {
  if (n == 0) throw InvalidInput("symbol index is 1-based");
  const std::size_t i = n - 1;
  if (i < pre_.size()) return pre_[i];
  return rep_[(i - pre_.size()) % rep_.size()];
}

SymbolSeq SymbolSeq::shifted() const {
  if (!pre_.empty()) return SymbolSeq({pre_.begin() + 1, pre_.end()}, rep_);
  std::vector<Symbol> r = rep_;
  std::rotate(r.begin(), r.begin() + 1, r.end());
  return SymbolSeq({}, std::move(r));
}

bool SymbolSeq::has_star() const {
  auto star = [](Symbol s) { return s == Symbol::Star; };
  return std::any_of(pre_.begin(), pre_.end(), star) || std::any_of(rep_.begin(), rep_.end(), star);
}

std::string SymbolSeq::str() const {
  std::string out;
  for (auto s : pre_) out.push_back(to_char(s));
  out.push_back('(');
  for (auto s : rep_) out.push_back(to_char(s));
  out.push_back(')');
  return out;
}

CriticalPortrait portrait(const Angle& alpha) {
  const auto [lo, hi] = halves(alpha);
  return {alpha, lo, hi};
}

Symbol symbol_of(const Angle& x, const CriticalPortrait& p) {
  if (p.contains(x)) return Symbol::Star;
  return in_open_arc(x, p.lo, p.hi) ? Symbol::One : Symbol::Zero;
}

SymbolSeq itinerary(const Angle& xi, const Angle& alpha) {
  const CriticalPortrait cp = portrait(alpha);
  const OrbitInfo o = orbit(xi);
  std::vector<Symbol> pre, rep;
  for (std::size_t i = 0; i < o.points.size(); ++i)
    (i < o.preperiod ? pre : rep).push_back(symbol_of(o.points[i], cp));
  return SymbolSeq(std::move(pre), std::move(rep));
}

bool wildcard_equal(const SymbolSeq& s, const SymbolSeq& t) {
  const std::size_t horizon = std::max(s.pre().size(), t.pre().size()) +
                              std::lcm(s.rep().size(), t.rep().size());
  for (std::size_t n = 1; n <= horizon; ++n) {
    const Symbol a = s.at(n);
    const Symbol b = t.at(n);
    if (a != b && a != Symbol::Star && b != Symbol::Star) return false;
  }
  return true;
}

bool identified(const Angle& xi, const Angle& xi2, const Angle& alpha) {
  if (xi == xi2) return true;
  return wildcard_equal(itinerary(xi, alpha), itinerary(xi2, alpha));
}

std::vector<Angle> scan_class(const Angle& x, const Angle& alpha) {
  const OrbitInfo o = orbit(x);
  return closure_over(x, signature_candidates(o.preperiod, o.period), alpha);
}

std::vector<Angle> value_class(const Angle& theta) {
  if (theta.is_zero()) return {theta};
  const OrbitInfo o = orbit(theta);
  if (o.preperiod == 0) {
    if (o.period > kMaxScanPeriod)
      throw InvalidInput("period of " + theta.str() + " too large for an exhaustive scan");
    return closure_over(theta, signature_candidates(0, o.period), theta);
  }

  const CriticalPortrait cp = portrait(theta);
  std::vector<Symbol> symbols;
  for (const auto& p : o.points) {
    const Symbol s = symbol_of(p, cp);
    if (s == Symbol::Star)
      throw InvariantViolation("preperiodic orbit of " + theta.str() + " meets its portrait");
    symbols.push_back(s);
  }
  const std::vector<Symbol> word(symbols.begin() + static_cast<std::ptrdiff_t>(o.preperiod),
                                 symbols.end());
  const std::vector<Angle> periodic = periodic_class_by_branches(word, cp);
  const Angle& v = o.points[o.preperiod];
  if (std::find(periodic.begin(), periodic.end(), v) == periodic.end())
    throw InvariantViolation("periodic class of " + v.str() + " misses the point itself");

  std::vector<Angle> cls = periodic;
  for (std::size_t k = o.preperiod; k-- > 0;) {
    std::vector<Angle> prev;
    prev.reserve(cls.size());
    for (const auto& x : cls) {
      const auto [h0, h1] = halves(x);
      prev.push_back(symbol_of(h0, cp) == symbols[k] ? h0 : h1);
    }
    cls = std::move(prev);
  }
  std::sort(cls.begin(), cls.end());
  if (!std::binary_search(cls.begin(), cls.end(), theta))
    throw InvariantViolation("pulled-back class misses " + theta.str());
  return cls;
}

std::pair<Angle, Angle> shortest_gap(const std::vector<Angle>& cls) {
  if (cls.size() < 2) throw InvalidInput("shortest_gap needs at least two angles");
  std::size_t best = 0;
  for (std::size_t i = 1; i < cls.size(); ++i) {
    const auto& lo = cls[i];
    const auto& hi = cls[(i + 1) % cls.size()];
    if (arc_length_less(lo, hi, cls[best], cls[(best + 1) % cls.size()])) best = i;
  }
  return {cls[best], cls[(best + 1) % cls.size()]};
}

std::optional<Angle> companion(const Angle& theta) {
  if (theta.is_zero()) return std::nullopt;
  const std::vector<Angle> cls = value_class(theta);
  if (cls.size() < 2) return std::nullopt;
  const auto [lo, hi] = shortest_gap(cls);
  if (lo == theta) return hi;
  if (hi == theta) return lo;
  return std::nullopt;
}

}  // namespace coreent
