#pragma once

// Bulk entropy scans over angle families and the property suites behind the
// `verify` command.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coreent/angle.hpp"
#include "coreent/lamination.hpp"
#include "coreent/perron.hpp"

namespace coreent {

struct ScanConfig {
  double tol = 1e-10;
  std::size_t max_iter = 1'000'000;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  unsigned samples = 20;
  unsigned depth = 22;  ///< cylinder depth for survivor counts

  PerronOptions perron() const { return {tol, max_iter}; }
  /// Throws InvalidInput unless tol > 0 and jobs >= 1.
  void validate() const;
};

struct ScanRow {
  Angle angle;
  std::size_t preperiod = 0;
  std::size_t period = 1;
  double h = 0.0;
  EntropyMethod method = EntropyMethod::Pairs;
  double residual = 0.0;
  Leaf minor;
  std::optional<bool> satellite;  ///< periodic angles with a companion only
};

/// Runs fn(0..n-1) on `jobs` threads. The first exception is rethrown.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// All k/(2^p - 1) with p <= period_max, then all reduced p/q with even
/// q <= preperiodic_den_max; deduplicated and sorted by (den, num).
std::vector<Angle> scan_family(unsigned period_max, unsigned preperiodic_den_max);

ScanRow scan_row(const Angle& theta, const PerronOptions& opt = {});

/// Rows sorted by (den, num) whatever the thread count.
std::vector<ScanRow> run_scan(const std::vector<Angle>& angles, const ScanConfig& cfg);

/// Columns: angle_num, angle_den, preperiod, period, h, method, residual,
/// minor_lo, minor_hi, satellite.
std::string scan_csv(const std::vector<ScanRow>& rows);

/// Every angle of exact period 2..period_max under doubling (0 excluded).
std::vector<Angle> periodic_angles(unsigned period_max);
/// Every reduced p/q, 0 < p < q, q even and q <= den_max.
std::vector<Angle> preperiodic_angles(unsigned den_max);

struct CaseResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CaseResult> cases;

  std::size_t failures() const;
  bool pass() const { return failures() == 0; }
};

/// Suite names accepted by run_suite, "all" excluded.
const std::vector<std::string>& suite_names();

/// Runs one named property suite. Throws InvalidInput for an unknown name.
SuiteResult run_suite(const std::string& name, const ScanConfig& cfg);

}  // namespace coreent
