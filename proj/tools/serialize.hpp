#pragma once

// JSON records for the command-line tool.

#include <json.hpp>

#include "coreent/entropy.hpp"
#include "coreent/hubbard_tree.hpp"
#include "coreent/scan.hpp"
#include "coreent/tuning.hpp"

namespace coreent::cli {

nlohmann::ordered_json entropy_json(const Angle& theta, const EntropyResult& r);
nlohmann::ordered_json tree_json(const HubbardTree& t);
nlohmann::ordered_json tuning_json(const TuningReport& r);
nlohmann::ordered_json dimension_json(const Angle& theta, const DimensionReport& d, double h);
nlohmann::ordered_json suite_json(const SuiteResult& s);

}  // namespace coreent::cli
