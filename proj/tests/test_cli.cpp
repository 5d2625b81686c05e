#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("entropy command") {
  auto r = run("entropy 1/2");
  CHECK(r.code == 0);
  CHECK(r.out.find("h=0.693147") != std::string::npos);
  r = run("entropy 1/7");
  CHECK(r.out.find("h=0.000000") != std::string::npos);
  r = run("entropy 3/7 --method both");
  CHECK(r.code == 0);
  CHECK(r.out.find("pairs  h=0.481212") != std::string::npos);
  CHECK(r.out.find("tree  h=0.481212") != std::string::npos);
}

TEST_CASE("entropy json record") {
  const auto r = run("entropy 1/6 --json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["angle"] == "1/6");
  CHECK(j["preperiod"] == 1);
  CHECK(j["period"] == 2);
  CHECK(j["method"] == "pairs");
  CHECK(j["matrix_size"] == 3);
  CHECK(j["h"].get<double>() == doctest::Approx(0.4196176).epsilon(1e-6));
  CHECK(j.contains("rho"));
  CHECK(j.contains("residual"));
}

TEST_CASE("tree command formats") {
  auto r = run("tree 1/2");
  CHECK(r.code == 0);
  CHECK(r.out.find("3 vertices, 2 edges") != std::string::npos);
  r = run("tree 3/7 --format dot");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("digraph", 0) == 0);
  r = run("tree 1/6 --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["edges"].size() + 1 == j["vertices"].size());
  CHECK(j.contains("vertex_map"));
  CHECK(j.contains("marked_critical"));
}

TEST_CASE("tune command") {
  auto r = run("tune --root 1/3 1/2");
  CHECK(r.code == 0);
  CHECK(r.out.find("5/12") != std::string::npos);
  CHECK(r.out.find("7/12") != std::string::npos);
  CHECK(r.out.find("formula PASS") != std::string::npos);
  r = run("tune --root 3/7 1/2 --json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(run("tune --root 1/6 1/2").code == 1);
  CHECK(run("tune --root 1/3 0").code == 1);
}

TEST_CASE("scan command") {
  auto r = run("scan --period-max 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("\n0,1,0,1,0.000000000000,") != std::string::npos);
  r = run("scan --period-max 3");
  CHECK(r.out.find("\n3,7,0,3,0.48121") != std::string::npos);
  r = run("scan --period-max 1 --preperiodic-denominator-max 12");
  CHECK(r.out.find("\n7,12,2,2,0.346573") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "coreent_cli_test";
  std::filesystem::create_directories(dir);
  CHECK(run("scan --period-max 6 --jobs 1 --out " + (dir / "a.csv").string()).code == 0);
  CHECK(run("scan --period-max 6 --jobs 4 --out " + (dir / "b.csv").string()).code == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK_FALSE(slurp(dir / "a.csv").empty());
  std::filesystem::remove_all(dir);
  CHECK(run("scan --period-max 2 --out /nonexistent/dir/x.csv").code == 1);
}

TEST_CASE("dimension command") {
  const auto r = run("dimension 3/7 --depth 16 --json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["transfer"].get<double>() == doctest::Approx(0.694241914).epsilon(1e-8));
}

TEST_CASE("verify command") {
  auto r = run("verify --suite iterate");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(run("verify --suite tuning --samples 5 --seed 3").code == 0);
  CHECK(run("verify --suite nope").code == 1);
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 1);
  CHECK(run("entropy 1/0").code == 1);
  CHECK(run("entropy abc").code == 1);
  CHECK(run("entropy 1/2 --tol -1").code == 1);
  CHECK(run("entropy 1/2 --method fast").code == 1);
  CHECK(run("entropy 1/6 --tol 1e-300").code == 2);
}
