#include "coreent/tuning.hpp"

#include <algorithm>
#include <cmath>

#include "coreent/entropy.hpp"
#include "coreent/errors.hpp"

namespace coreent {

namespace {

std::string repetend_of(const Angle& x, std::size_t period) {
  const BinaryWords b = to_binary(x);
  if (!b.pre.empty()) throw InvalidInput(x.str() + " is not periodic");
  std::string w;
  while (w.size() < period) w += b.rep;
  if (w.size() != period) throw InvalidInput("period of " + x.str() + " does not divide " + std::to_string(period));
  return w;
}

std::string substitute(const std::string& word, const TuningWords& w) {
  std::string out;
  for (char c : word) out += c == '0' ? w.u : w.v;
  return out;
}

void require_allowed(const ComponentRoot& r, const Angle& theta) {
  if (r.satellite && theta.is_zero())
    throw PreconditionError("the satellite formula excludes the cusp parameter (angle 0)");
}

}  // namespace

TuningWords tuning_words(const ComponentRoot& r) {
  return {repetend_of(r.minus, r.period), repetend_of(r.plus, r.period), r.period};
}

std::vector<Angle> tune_angle(const TuningWords& w, const Angle& theta) {
  if (w.u.size() != w.period || w.v.size() != w.period || w.u == w.v)
    throw InvalidInput("tuning words must be two distinct words of the period's length");
  const BinaryWords b = to_binary(theta);
  std::vector<Angle> out{from_binary(substitute(b.pre, w), substitute(b.rep, w))};
  if (b.has_alternative) out.push_back(from_binary(substitute(b.alt_pre, w), substitute(b.alt_rep, w)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TuningReport tuned_entropy_check(const ComponentRoot& r, const Angle& theta, double tol) {
  require_allowed(r, theta);
  TuningReport rep;
  rep.root = r;
  rep.theta = theta;
  rep.tuned = tune_angle(tuning_words(r), theta);
  rep.h_root = core_entropy(r.minus).h;
  rep.h_theta = core_entropy(theta).h;
  rep.expected = r.satellite ? std::max(rep.h_root, rep.h_theta / static_cast<double>(r.period)) : rep.h_root;
  for (const Angle& t : rep.tuned) {
    const double h = core_entropy(t).h;
    rep.h_tuned.push_back(h);
    rep.residual = std::max(rep.residual, std::abs(h - rep.expected));
  }
  const auto [lo, hi] = std::minmax_element(rep.h_tuned.begin(), rep.h_tuned.end());
  rep.pass = rep.residual <= tol && *hi - *lo <= tol;
  return rep;
}

bool renorm_inequality_check(const ComponentRoot& r, const Angle& theta) {
  require_allowed(r, theta);
  const double bound = core_entropy(theta).h / static_cast<double>(r.period) - 1e-9;
  for (const Angle& t : tune_angle(tuning_words(r), theta))
    if (core_entropy(t).h < bound) return false;
  return true;
}

}  // namespace coreent
