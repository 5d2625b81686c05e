#include "serialize.hpp"

#include <cmath>

namespace coreent::cli {

namespace {

nlohmann::ordered_json angles_json(const std::vector<Angle>& xs) {
  auto out = nlohmann::ordered_json::array();
  for (const Angle& x : xs) out.push_back(x.str());
  return out;
}

}  // namespace

nlohmann::ordered_json entropy_json(const Angle& theta, const EntropyResult& r) {
  const OrbitInfo o = orbit(theta);
  return {{"angle", theta.str()},        {"preperiod", o.preperiod}, {"period", o.period},
          {"method", to_string(r.method)}, {"rho", r.rho},             {"h", r.h},
          {"matrix_size", r.matrix_size},  {"residual", r.residual}};
}

nlohmann::ordered_json tree_json(const HubbardTree& t) {
  nlohmann::ordered_json vs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < t.vertices.size(); ++i) {
    const TreeVertex& v = t.vertices[i];
    nlohmann::ordered_json j{{"id", i}, {"steiner", v.steiner}, {"angles", angles_json(v.cls.angles)}};
    if (v.steiner) j["spans"] = v.spans;
    else j["postcritical"] = v.postcritical;
    vs.push_back(j);
  }
  nlohmann::ordered_json es = nlohmann::ordered_json::array();
  for (const auto& [u, v] : t.edges) es.push_back({u, v});
  return {{"angle", t.theta.str()}, {"vertices", vs}, {"edges", es}, {"vertex_map", t.vertex_map},
          {"marked_critical", t.marked_critical}};
}

nlohmann::ordered_json tuning_json(const TuningReport& r) {
  return {{"root", {r.root.minus.str(), r.root.plus.str()}},
          {"period", r.root.period},
          {"satellite", r.root.satellite},
          {"angle", r.theta.str()},
          {"tuned", angles_json(r.tuned)},
          {"h_tuned", r.h_tuned},
          {"h_root", r.h_root},
          {"h_angle", r.h_theta},
          {"expected", r.expected},
          {"residual", r.residual},
          {"pass", r.pass}};
}

nlohmann::ordered_json dimension_json(const Angle& theta, const DimensionReport& d, double h) {
  return {{"angle", theta.str()},
          {"empty_hole", d.empty_hole},
          {"transfer", d.transfer},
          {"counting", d.counting},
          {"depth", d.depth},
          {"h", h},
          {"log2_times_transfer", std::log(2.0) * d.transfer}};
}

nlohmann::ordered_json suite_json(const SuiteResult& s) {
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const CaseResult& c : s.cases) cases.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"suite", s.suite}, {"pass", s.pass()}, {"failures", s.failures()}, {"cases", cases}};
}

}  // namespace coreent::cli
