#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "coreent/errors.hpp"
#include "serialize.hpp"

namespace {

using namespace coreent;

enum Exit { kOk = 0, kUsage = 1, kCompute = 2, kVerify = 3 };

struct Options {
  std::string angle;
  std::string root;
  std::string method = "pairs";
  std::string format = "text";
  std::string suite;
  std::string out;
  bool json = false;
  unsigned period_max = 0;
  unsigned den_max = 0;
  ScanConfig cfg;
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

void print_json(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_entropy(const Options& o) {
  const Angle theta = Angle::parse(o.angle);
  std::vector<EntropyResult> results;
  if (o.method == "pairs" || o.method == "both") results.push_back(core_entropy(theta, o.cfg.perron()));
  if (o.method == "tree" || o.method == "both") results.push_back(tree_entropy(theta, o.cfg.perron()));
  if (o.json) {
    if (results.size() == 1) {
      print_json(cli::entropy_json(theta, results[0]));
    } else {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : results) arr.push_back(cli::entropy_json(theta, r));
      print_json(arr);
    }
    return kOk;
  }
  for (const auto& r : results)
    std::cout << theta.str() << "  " << to_string(r.method) << "  h=" << fmt(r.h) << "  rho=" << fmt(r.rho, 9)
              << "  matrix=" << r.matrix_size << "\n";
  return kOk;
}

int cmd_tree(const Options& o) {
  const HubbardTree t = build_tree(Angle::parse(o.angle));
  if (o.format == "dot") {
    std::cout << to_dot(t);
    return kOk;
  }
  if (o.format == "json" || o.json) {
    print_json(cli::tree_json(t));
    return kOk;
  }
  std::cout << "tree of " << t.theta.str() << ": " << t.vertices.size() << " vertices, " << t.edges.size()
            << " edges\n";
  for (std::size_t i = 0; i < t.vertices.size(); ++i) {
    const auto& v = t.vertices[i];
    std::cout << "  " << i << (v.steiner ? "  branch" : "  " + v.cls.str()) << (i == t.marked_critical ? "  critical" : "")
              << "  -> " << t.vertex_map[i] << "\n";
  }
  for (const auto& [u, v] : t.edges) std::cout << "  edge " << u << " - " << v << "\n";
  return kOk;
}

int cmd_tune(const Options& o) {
  const Angle root_angle = Angle::parse(o.root);
  const ComponentRoot r = root_pair(root_angle);
  const TuningReport rep = tuned_entropy_check(r, Angle::parse(o.angle), 1e-6);
  if (o.json) {
    print_json(cli::tuning_json(rep));
  } else {
    std::cout << "root " << r.str() << "\n";
    for (std::size_t i = 0; i < rep.tuned.size(); ++i)
      std::cout << "  " << rep.tuned[i].str() << "  h=" << fmt(rep.h_tuned[i]) << "\n";
    std::cout << "expected " << fmt(rep.expected) << "  residual " << rep.residual << "  formula "
              << (rep.pass ? "PASS" : "FAIL") << "\n";
  }
  return rep.pass ? kOk : kVerify;
}

int cmd_scan(const Options& o) {
  const std::string csv = scan_csv(run_scan(scan_family(o.period_max, o.den_max), o.cfg));
  if (o.out.empty()) {
    std::cout << csv;
    return kOk;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + o.out);
  f << csv;
  f.close();
  if (!f) throw InvalidInput("cannot write " + o.out);
  return kOk;
}

int cmd_dimension(const Options& o) {
  const Angle theta = Angle::parse(o.angle);
  const DimensionReport d = survivor_dimension(theta, o.cfg.depth, o.cfg.perron());
  const double h = core_entropy(theta, o.cfg.perron()).h;
  if (o.json) {
    print_json(cli::dimension_json(theta, d, h));
    return kOk;
  }
  std::cout << theta.str() << "  transfer dim=" << fmt(d.transfer, 9) << "  count dim=" << fmt(d.counting)
            << " (depth " << d.depth << ")" << (d.empty_hole ? "  tree-side model" : "")
            << "\n  log2*dim=" << fmt(std::log(2.0) * d.transfer, 9) << "  h=" << fmt(h, 9) << "\n";
  return kOk;
}

int cmd_verify(const Options& o) {
  std::vector<std::string> suites;
  if (o.suite == "all")
    suites = suite_names();
  else
    suites.push_back(o.suite);
  bool ok = true;
  auto arr = nlohmann::ordered_json::array();
  for (const std::string& name : suites) {
    const SuiteResult s = run_suite(name, o.cfg);
    ok = ok && s.pass();
    if (o.json) {
      arr.push_back(cli::suite_json(s));
      continue;
    }
    for (const CaseResult& c : s.cases)
      std::cout << (c.pass ? "PASS " : "FAIL ") << s.suite << "  " << c.name << (c.detail.empty() ? "" : "  " + c.detail)
                << "\n";
    std::cout << s.suite << ": " << (s.cases.size() - s.failures()) << "/" << s.cases.size() << " passed\n";
  }
  if (o.json) print_json(arr);
  return ok ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Core entropy of quadratic polynomials from rational external angles"};
  app.require_subcommand(1);
  Options o;

  auto add_tol = [&](CLI::App* c) {
    c->add_option("--tol", o.cfg.tol, "Perron root tolerance")->check(CLI::PositiveNumber);
  };
  auto add_jobs = [&](CLI::App* c) { c->add_option("--jobs", o.cfg.jobs, "worker threads")->check(CLI::PositiveNumber); };

  auto* entropy = app.add_subcommand("entropy", "core entropy of one angle");
  entropy->add_option("angle", o.angle, "angle p/q")->required();
  entropy->add_option("--method", o.method, "pairs, tree or both")->check(CLI::IsMember({"pairs", "tree", "both"}));
  entropy->add_flag("--json", o.json, "emit JSON");
  add_tol(entropy);

  auto* tree = app.add_subcommand("tree", "Hubbard tree of one angle");
  tree->add_option("angle", o.angle, "angle p/q")->required();
  tree->add_option("--format", o.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
  tree->add_flag("--json", o.json, "same as --format json");

  auto* tune = app.add_subcommand("tune", "tune an angle into a hyperbolic component");
  tune->add_option("--root", o.root, "periodic root angle")->required();
  tune->add_option("angle", o.angle, "angle to tune")->required();
  tune->add_flag("--json", o.json, "emit JSON");
  add_tol(tune);

  auto* scan = app.add_subcommand("scan", "entropy table over angle families as CSV");
  scan->add_option("--period-max", o.period_max, "include k/(2^p - 1) for p up to this bound");
  scan->add_option("--preperiodic-denominator-max", o.den_max, "include p/q with even q up to this bound");
  scan->add_option("--out", o.out, "output file (default stdout)");
  add_jobs(scan);
  add_tol(scan);

  auto* dim = app.add_subcommand("dimension", "survivor-set dimension of one angle");
  dim->add_option("angle", o.angle, "angle p/q")->required();
  dim->add_option("--depth", o.cfg.depth, "cylinder depth for the counting estimate")->check(CLI::Range(1u, 30u));
  dim->add_flag("--json", o.json, "emit JSON");
  add_tol(dim);

  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", o.suite, "suite name")->required()->check(CLI::IsMember(suites));
  verify->add_option("--samples", o.cfg.samples, "sampled angles for the tuning suite");
  verify->add_option("--seed", o.cfg.seed, "random seed for sampled suites");
  verify->add_option("--depth", o.cfg.depth, "cylinder depth for the survivor suite")->check(CLI::Range(1u, 30u));
  verify->add_flag("--json", o.json, "emit JSON");
  add_jobs(verify);
  add_tol(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*entropy) return cmd_entropy(o);
    if (*tree) return cmd_tree(o);
    if (*tune) return cmd_tune(o);
    if (*scan) return cmd_scan(o);
    if (*dim) return cmd_dimension(o);
    if (*verify) return cmd_verify(o);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotARoot& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArc& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return kCompute;
  }
  return kUsage;
}
