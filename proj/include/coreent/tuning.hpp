#pragma once

// Tuning by binary substitution 0 -> u, 1 -> v, where u and v are the
// repetends of a hyperbolic component's root angles.

#include <string>
#include <vector>

#include "coreent/angle.hpp"
#include "coreent/lamination.hpp"

namespace coreent {

struct TuningWords {
  std::string u;  ///< repetend of the smaller root angle
  std::string v;  ///< repetend of the larger root angle
  std::size_t period = 0;
};

TuningWords tuning_words(const ComponentRoot& r);

/// Substitutes every binary expansion of theta (two for nonzero dyadic theta).
/// Result sorted and deduplicated. Throws Overflow when the tuned expansion
/// has more than 62 digits.
std::vector<Angle> tune_angle(const TuningWords& w, const Angle& theta);

struct TuningReport {
  ComponentRoot root;
  Angle theta;
  std::vector<Angle> tuned;
  std::vector<double> h_tuned;
  double h_root = 0.0;
  double h_theta = 0.0;
  double expected = 0.0;  ///< h_root (primitive) or max(h_root, h_theta / p)
  double residual = 0.0;  ///< largest |h_tuned - expected|
  bool pass = false;
};

/// Entropy of tuned angles against the primitive or satellite formula.
/// Throws PreconditionError for a satellite root with theta = 0 (the cusp).
TuningReport tuned_entropy_check(const ComponentRoot& r, const Angle& theta, double tol = 1e-6);

/// h(tuned) >= h(theta) / period - 1e-9 for every tuned angle.
bool renorm_inequality_check(const ComponentRoot& r, const Angle& theta);

}  // namespace coreent
