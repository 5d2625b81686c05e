#pragma once

// Itineraries of angles relative to a critical portrait {alpha/2, (alpha+1)/2},
// the wildcard identification rule, and the identification class of the
// critical value.

#include <optional>
#include <string>
#include <vector>

#include "coreent/angle.hpp"

namespace coreent {

struct CriticalPortrait {
  Angle alpha;
  Angle lo;  ///< alpha/2
  Angle hi;  ///< (alpha+1)/2

  bool contains(const Angle& x) const { return x == lo || x == hi; }
};

enum class Symbol : unsigned char { Zero, One, Star };

char to_char(Symbol s);

/// Eventually periodic symbol sequence s_1 s_2 ... = pre (rep)(rep)...
class SymbolSeq {
 public:
  SymbolSeq(std::vector<Symbol> pre, std::vector<Symbol> rep);

  /// Parses the printed form, e.g. "10(1)" or "(1*)".
  static SymbolSeq parse(const std::string& text);

  const std::vector<Symbol>& pre() const { return pre_; }
  const std::vector<Symbol>& rep() const { return rep_; }

  /// n-th symbol, 1-based.
  Symbol at(std::size_t n) const;

  /// Drops the first symbol.
  SymbolSeq shifted() const;

  bool has_star() const;

  std::string str() const;

  friend bool operator==(const SymbolSeq&, const SymbolSeq&) = default;

 private:
  void canonicalize();

  std::vector<Symbol> pre_;
  std::vector<Symbol> rep_;
};

CriticalPortrait portrait(const Angle& alpha);

/// Symbol of a single point relative to the portrait of alpha.
Symbol symbol_of(const Angle& x, const CriticalPortrait& p);

SymbolSeq itinerary(const Angle& xi, const Angle& alpha);

bool wildcard_equal(const SymbolSeq& s, const SymbolSeq& t);

/// Generating relation of the lamination induced by the portrait of alpha.
/// Equal angles are trivially identified.
bool identified(const Angle& xi, const Angle& xi2, const Angle& alpha);

/// Identification class of theta itself under the lamination induced by the
/// portrait of theta, sorted by angle value.
///
/// Periodic theta: closure of the wildcard relation over all angles of the
/// same exact period (exhaustive scan, period at most kMaxScanPeriod).
/// Strictly preperiodic theta: all angles with exactly the itinerary of
/// theta, obtained from the fixed points of the inverse-branch composition
/// along the periodic part and pulled back along the preperiodic part.
std::vector<Angle> value_class(const Angle& theta);

/// Class of a periodic or preperiodic point x for an arbitrary portrait,
/// restricted to x's own (preperiod, period) signature. Only for small
/// signatures; used as an independent check of value_class in tests.
std::vector<Angle> scan_class(const Angle& x, const Angle& alpha);

/// Largest period for which exhaustive scans are attempted.
inline constexpr std::size_t kMaxScanPeriod = 24;

/// The shortest complementary arc of a class, as the ccw pair (lo, hi).
/// Requires at least two members.
std::pair<Angle, Angle> shortest_gap(const std::vector<Angle>& sorted_class);

/// The partner of theta on the minor leaf, if theta is an endpoint of a
/// non-degenerate minor.
std::optional<Angle> companion(const Angle& theta);

}  // namespace coreent
