#include "coreent/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "coreent/entropy.hpp"
#include "coreent/errors.hpp"
#include "coreent/hubbard_tree.hpp"
#include "coreent/itinerary.hpp"
#include "coreent/tuning.hpp"

namespace coreent {

namespace {

bool den_num_less(const Angle& a, const Angle& b) {
  return a.den() != b.den() ? a.den() < b.den() : a.num() < b.num();
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

CaseResult make_case(std::string name, bool pass, std::string detail) {
  return {std::move(name), pass, std::move(detail)};
}

// Runs fn on every element, keeping results in input order.
template <class T, class F>
std::vector<CaseResult> map_cases(const std::vector<T>& items, unsigned jobs, F fn) {
  std::vector<CaseResult> out(items.size());
  parallel_for(items.size(), jobs, [&](std::size_t i) {
    try {
      out[i] = fn(items[i]);
    } catch (const Error& e) {
      out[i] = make_case("case " + std::to_string(i), false, std::string("error: ") + e.what());
    }
  });
  return out;
}

std::vector<ComponentRoot> roots_up_to(unsigned period_max) {
  std::vector<ComponentRoot> out;
  for (unsigned p = 2; p <= period_max; ++p)
    for (const ComponentRoot& r : roots_of_period(p)) out.push_back(r);
  return out;
}

SuiteResult suite_monotonicity(const ScanConfig& cfg) {
  const std::vector<Angle> angles = periodic_angles(8);
  struct Info {
    CircArc arc;
    double h = 0.0;
    bool primitive = false;
  };
  std::vector<Info> info(angles.size());
  parallel_for(angles.size(), cfg.jobs, [&](std::size_t i) {
    info[i].arc = characteristic_arc(angles[i]);
    info[i].h = core_entropy(angles[i], cfg.perron()).h;
    info[i].primitive = !root_pair(angles[i]).satellite;
  });
  SuiteResult res{"monotonicity", {}};
  for (std::size_t j = 0; j < angles.size(); ++j) {
    if (!info[j].primitive) continue;
    std::size_t nested = 0;
    double excess = -1.0;
    std::string worst;
    for (std::size_t i = 0; i < angles.size(); ++i) {
      if (i == j || info[i].arc == info[j].arc || !arc_contains(info[i].arc, info[j].arc)) continue;
      ++nested;
      const double d = info[i].h - info[j].h;
      if (d > excess) {
        excess = d;
        worst = angles[i].str();
      }
    }
    const bool ok = excess <= 1e-9;
    res.cases.push_back(make_case(angles[j].str(), ok,
                                  std::to_string(nested) + " enclosing arcs" +
                                      (nested ? ", max h excess " + sci(excess) + " at " + worst : "")));
  }
  return res;
}

std::vector<Angle> sample_angles(const ScanConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> pre_len(0, 2), rep_len(1, 4), bit(0, 1);
  std::vector<Angle> out;
  while (out.size() < cfg.samples) {
    std::string pre, rep;
    for (int n = pre_len(rng); n > 0; --n) pre += static_cast<char>('0' + bit(rng));
    for (int n = rep_len(rng); n > 0; --n) rep += static_cast<char>('0' + bit(rng));
    out.push_back(from_binary(pre, rep));
  }
  return out;
}

SuiteResult suite_tuning(const ScanConfig& cfg) {
  std::vector<Angle> thetas{Angle{}, Angle::make(1, 2), Angle::make(1, 3), Angle::make(3, 7), Angle::make(1, 6)};
  for (const Angle& a : sample_angles(cfg)) thetas.push_back(a);
  std::vector<std::pair<ComponentRoot, Angle>> work;
  for (const ComponentRoot& r : roots_up_to(4))
    for (const Angle& t : thetas)
      if (!(r.satellite && t.is_zero())) work.emplace_back(r, t);
  SuiteResult res{"tuning", map_cases(work, cfg.jobs, [](const std::pair<ComponentRoot, Angle>& w) {
                    const auto& [r, t] = w;
                    const TuningReport rep = tuned_entropy_check(r, t);
                    const bool ineq = renorm_inequality_check(r, t);
                    std::string tuned;
                    for (const Angle& a : rep.tuned) tuned += (tuned.empty() ? "" : " ") + a.str();
                    return make_case(r.minus.str() + "/" + r.plus.str() + " tuning " + t.str(), rep.pass && ineq,
                                     "tuned " + tuned + ", h " + fixed(rep.h_tuned.front(), 9) + ", expected " +
                                         fixed(rep.expected, 9) + ", residual " + sci(rep.residual) +
                                         (ineq ? "" : ", renormalization inequality fails"));
                  })};
  return res;
}

SuiteResult suite_primitive_bound(const ScanConfig& cfg) {
  std::vector<ComponentRoot> prim;
  for (const ComponentRoot& r : roots_up_to(8))
    if (!r.satellite) prim.push_back(r);
  return {"primitive-bound", map_cases(prim, cfg.jobs, [](const ComponentRoot& r) {
            const bool bound = primitive_bound_check(r);
            std::string detail = "h " + fixed(core_entropy(r.minus).h, 9) + " >= log2/" + std::to_string(r.period);
            bool ok = bound;
            if (r.period <= 6) {
              const auto w = find_horseshoe(r, static_cast<unsigned>(2 * r.period));
              ok = ok && w.has_value();
              detail += w ? ", horseshoe k = " + std::to_string(w->k) : ", no horseshoe";
            }
            return make_case(r.minus.str() + "/" + r.plus.str(), ok, detail);
          })};
}

SuiteResult suite_cross_oracle(const ScanConfig& cfg) {
  std::vector<Angle> angles = preperiodic_angles(120);
  for (const Angle& a : periodic_angles(8)) angles.push_back(a);
  return {"cross-oracle", map_cases(angles, cfg.jobs, [&](const Angle& a) {
            const double hp = core_entropy(a, cfg.perron()).h;
            const double ht = tree_entropy(a, cfg.perron()).h;
            return make_case(a.str(), std::abs(hp - ht) <= 1e-6,
                             "pairs " + fixed(hp, 9) + ", tree " + fixed(ht, 9));
          })};
}

SuiteResult suite_survivor(const ScanConfig& cfg) {
  std::vector<Angle> angles;
  for (const char* s : {"1/2", "3/7", "7/12", "1/6", "5/12", "1/4", "3/14", "26/63", "31/56"})
    angles.push_back(Angle::parse(s));
  const double ln2 = std::log(2.0);
  return {"survivor", map_cases(angles, cfg.jobs, [&](const Angle& a) {
            const double h = core_entropy(a, cfg.perron()).h;
            const DimensionReport d = survivor_dimension(a, cfg.depth, cfg.perron());
            const double et = std::abs(ln2 * d.transfer - h);
            const double ec = std::abs(ln2 * d.counting - h);
            return make_case(a.str(), et <= 1e-6 && ec <= 0.02,
                             "h " + fixed(h, 9) + ", transfer dim " + fixed(d.transfer, 9) + ", count dim " +
                                 fixed(d.counting, 6) + " (depth " + std::to_string(cfg.depth) + ")");
          })};
}

SuiteResult suite_iterate(const ScanConfig& cfg) {
  std::vector<std::pair<Angle, unsigned>> work;
  for (const char* s : {"1/2", "1/6", "3/7", "7/12"})
    for (unsigned n = 1; n <= 4; ++n) work.emplace_back(Angle::parse(s), n);
  return {"iterate", map_cases(work, cfg.jobs, [](const std::pair<Angle, unsigned>& w) {
            return make_case(w.first.str() + " n=" + std::to_string(w.second),
                             iterate_entropy_check(w.first, w.second), "");
          })};
}

}  // namespace

void ScanConfig::validate() const {
  if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
  if (jobs < 1) throw InvalidInput("jobs must be at least 1");
  if (max_iter < 1) throw InvalidInput("iteration cap must be at least 1");
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < std::min<std::size_t>(jobs, n); ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<Angle> periodic_angles(unsigned period_max) {
  std::vector<Angle> out;
  for (unsigned p = 2; p <= period_max; ++p) {
    const std::uint64_t den = (std::uint64_t{1} << p) - 1;
    for (std::uint64_t k = 1; k < den; ++k) {
      const Angle a = Angle::from_unsigned(k, den);
      if (orbit(a).period == p) out.push_back(a);
    }
  }
  return out;
}

std::vector<Angle> preperiodic_angles(unsigned den_max) {
  std::vector<Angle> out;
  for (std::uint64_t q = 2; q <= den_max; q += 2)
    for (std::uint64_t p = 1; p < q; ++p)
      if (std::gcd(p, q) == 1) out.push_back(Angle::from_unsigned(p, q));
  return out;
}

std::vector<Angle> scan_family(unsigned period_max, unsigned preperiodic_den_max) {
  if (period_max > 24) throw InvalidInput("period bound above 24 is out of range");
  std::set<Angle> all;
  for (unsigned p = 1; p <= period_max; ++p) {
    const std::uint64_t den = (std::uint64_t{1} << p) - 1;
    for (std::uint64_t k = 0; k < std::max<std::uint64_t>(den, 1); ++k) all.insert(Angle::from_unsigned(k, den));
  }
  for (const Angle& a : preperiodic_angles(preperiodic_den_max)) all.insert(a);
  std::vector<Angle> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), den_num_less);
  return out;
}

ScanRow scan_row(const Angle& theta, const PerronOptions& opt) {
  ScanRow row;
  row.angle = theta;
  const OrbitInfo o = orbit(theta);
  row.preperiod = o.preperiod;
  row.period = o.period;
  const EntropyResult r = core_entropy(theta, opt);
  row.h = r.h;
  row.method = r.method;
  row.residual = r.residual;
  row.minor = minor_class(theta);
  if (!theta.is_zero() && o.preperiod == 0 && !row.minor.degenerate()) row.satellite = is_satellite(root_pair(theta));
  return row;
}

std::vector<ScanRow> run_scan(const std::vector<Angle>& angles, const ScanConfig& cfg) {
  cfg.validate();
  std::vector<ScanRow> rows(angles.size());
  parallel_for(angles.size(), cfg.jobs, [&](std::size_t i) { rows[i] = scan_row(angles[i], cfg.perron()); });
  std::sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) { return den_num_less(a.angle, b.angle); });
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = "angle_num,angle_den,preperiod,period,h,method,residual,minor_lo,minor_hi,satellite\n";
  for (const ScanRow& r : rows) {
    out += std::to_string(r.angle.num()) + "," + std::to_string(r.angle.den()) + "," + std::to_string(r.preperiod) +
           "," + std::to_string(r.period) + "," + fixed(r.h, 12) + "," + to_string(r.method) + "," +
           sci(r.residual) + "," + r.minor.a.str() + "," + r.minor.b.str() + "," +
           (r.satellite ? (*r.satellite ? "true" : "false") : "n/a") + "\n";
  }
  return out;
}

std::size_t SuiteResult::failures() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.pass; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"monotonicity", "tuning", "primitive-bound",
                                              "cross-oracle", "survivor", "iterate"};
  return names;
}

SuiteResult run_suite(const std::string& name, const ScanConfig& cfg) {
  cfg.validate();
  if (name == "monotonicity") return suite_monotonicity(cfg);
  if (name == "tuning") return suite_tuning(cfg);
  if (name == "primitive-bound") return suite_primitive_bound(cfg);
  if (name == "cross-oracle") return suite_cross_oracle(cfg);
  if (name == "survivor") return suite_survivor(cfg);
  if (name == "iterate") return suite_iterate(cfg);
  throw InvalidInput("unknown suite '" + name + "'");
}

}  // namespace coreent
