#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nctlab/harness.hpp"

using namespace nct;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("registry covers every criterion") {
  const auto& reg = check_registry();
  std::set<std::string> names;
  std::set<int> criteria;
  for (const auto& info : reg) {
    CHECK_FALSE(info.summary.empty());
    names.insert(info.name);
    criteria.insert(info.criterion);
  }
  CHECK(names.size() == reg.size());
  CHECK(criteria.size() == 15);
  CHECK(*criteria.begin() == 1);
  CHECK(*criteria.rbegin() == 15);
  for (const char* n : {"weyl-law", "commutation", "quantization-iso", "rational-center", "wbz-roundtrip",
                        "quasi-periodicity", "constraint-dichotomy", "classical-hermitian", "deformed-hermitian",
                        "module-action-oracle", "theta-functional", "holomorphic-dimension", "chern-homogeneous",
                        "chern-grassmann", "projection-validity", "determinism"})
    CHECK(names.count(n) == 1);

  // every check has a default tolerance
  const auto config = SuiteConfig::defaults();
  for (const auto& info : reg) CHECK(config.tol(info.name) > 0.0);
}

TEST_CASE("complex number parsing") {
  CHECK(parse_complex("0.3+1.1i") == cplx(0.3, 1.1));
  CHECK(parse_complex("0.3-1.1i") == cplx(0.3, -1.1));
  CHECK(parse_complex("2i") == cplx(0.0, 2.0));
  CHECK(parse_complex("i") == cplx(0.0, 1.0));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("1.5") == cplx(1.5, 0.0));
  CHECK(parse_complex("0.3,1.1") == cplx(0.3, 1.1));
  CHECK(parse_complex("1e-3+2e+1i") == cplx(1e-3, 20.0));
  CHECK(parse_complex(" 0.5 + 2 i") == cplx(0.5, 2.0));
  CHECK_THROWS_AS(parse_complex(""), UsageError);
  CHECK_THROWS_AS(parse_complex("abc"), UsageError);
}

TEST_CASE("config parsing") {
  const auto c = parse_config(R"(
# sweep override
seed = 7
p = 2, 5
theta = 0.1,0.2
tau = i, 0.25+1.5i
N = 6
tol.weyl-law = 1e-9
tol.chern-grassmann.order = 0.2
chern_grid = 128
output_dir = out   # trailing comment
)");
  CHECK(c.seed == 7);
  CHECK(c.p == std::vector<int>{2, 5});
  CHECK(c.theta == std::vector<double>{0.1, 0.2});
  REQUIRE(c.tau.size() == 2);
  CHECK(c.tau[1] == cplx(0.25, 1.5));
  CHECK(c.N == std::vector<int>{6});
  CHECK(c.tol("weyl-law") == 1e-9);
  CHECK(c.tol("chern-grassmann.order") == 0.2);
  CHECK(c.chern_grid == 128);
  CHECK(c.output_dir == "out");
  // untouched keys keep their defaults
  CHECK(c.grid == SuiteConfig::defaults().grid);
  CHECK(c.tol("commutation") == SuiteConfig::defaults().tol("commutation"));
}

TEST_CASE("config errors are usage errors") {
  CHECK_THROWS_AS(parse_config("p ="), UsageError);
  CHECK_THROWS_AS(parse_config("theta = 1.2"), UsageError);
  CHECK_THROWS_AS(parse_config("tau = 1-0.5i"), UsageError);
  CHECK_THROWS_AS(parse_config("tol.weyl-law = -1"), UsageError);
  CHECK_THROWS_AS(parse_config("tol.no-such-check = 1"), UsageError);
  CHECK_THROWS_AS(parse_config("colour = blue"), UsageError);
  CHECK_THROWS_AS(parse_config("seed"), UsageError);
  CHECK_THROWS_AS(parse_config("N = 8x"), UsageError);
  CHECK_THROWS_AS(parse_config("chern_grid = 100"), UsageError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), UsageError);
  CHECK_THROWS_AS(SuiteConfig::defaults().tol("nope"), UsageError);
}

TEST_CASE("runner filter") {
  const auto config = SuiteConfig::defaults();
  CHECK_THROWS_AS(run_suite(config, std::string("no-such-*")), UsageError);

  auto bad = config;
  bad.p.clear();
  CHECK_THROWS_AS(run_suite(bad, std::string("chern-homogeneous")), UsageError);

  const auto results = run_suite(config, std::string("c*-h*"));
  std::set<std::string> names;
  for (const auto& r : results) names.insert(r.name);
  CHECK(names == std::set<std::string>{"chern-homogeneous", "classical-hermitian"});
  CHECK(all_pass(results));
  for (std::size_t i = 1; i < results.size(); ++i) {
    const bool ordered = results[i - 1].name < results[i].name ||
                         (results[i - 1].name == results[i].name && results[i - 1].index < results[i].index);
    CHECK(ordered);
  }
}

TEST_CASE("geometry filter") {
  const auto results = run_suite(SuiteConfig::defaults(), std::string("chern-*"));
  std::set<std::string> names;
  for (const auto& r : results) names.insert(r.name);
  CHECK(names == std::set<std::string>{"chern-grassmann", "chern-homogeneous"});
  CHECK(all_pass(results));
}

TEST_CASE("pass follows the comparison") {
  auto config = SuiteConfig::defaults();
  config.tolerances["chern-homogeneous"] = 1e-300;
  // the homogeneous route is exact, so it still passes at an absurd tolerance
  CHECK(all_pass(run_suite(config, std::string("chern-homogeneous"))));

  config = SuiteConfig::defaults();
  config.tolerances["rational-center.irrational"] = 10.0;  // an at-least bound no defect reaches
  const auto rs = run_suite(config, std::string("rational-center"));
  bool saw_failure = false;
  for (const auto& r : rs) {
    if (r.comparison == Comparison::at_least) {
      CHECK_FALSE(r.pass);
      saw_failure = true;
    } else {
      CHECK(r.pass == (r.metric <= r.tolerance));
    }
  }
  CHECK(saw_failure);
  CHECK_FALSE(all_pass(rs));
}

TEST_CASE("reports") {
  const auto results = run_suite(SuiteConfig::defaults(), std::string("chern-homogeneous"));
  REQUIRE_FALSE(results.empty());
  const auto json = nlohmann::json::parse(report_json(results));
  REQUIRE(json.is_array());
  CHECK(json.size() == results.size());
  for (const auto& entry : json) {
    for (const char* field : {"name", "index", "params", "metric", "comparison", "tolerance", "pass"})
      CHECK(entry.contains(field));
    CHECK_FALSE(entry.contains("runtime_ms"));
  }
  const auto text = report_text(results);
  CHECK(text.find("chern-homogeneous") != std::string::npos);
  CHECK(text.find("PASS") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "nctlab-report-test";
  std::filesystem::remove_all(dir);
  emit_report(results, ReportFormat::json, (dir / "sub" / "r.json").string());
  CHECK(read_file(dir / "sub" / "r.json") == report_json(results));
  std::filesystem::remove_all(dir);
}

TEST_CASE("reports are deterministic and match the golden file") {
  const auto config = SuiteConfig::defaults();
  const auto a = report_json(run_suite(config, std::string("chern-homogeneous")));
  const auto b = report_json(run_suite(config, std::string("chern-homogeneous")));
  CHECK(a == b);
  const std::string golden = read_file(std::filesystem::path(NCTLAB_GOLDEN_DIR) / "chern-homogeneous.json");
  REQUIRE_FALSE(golden.empty());
  CHECK(a == golden);
}

TEST_CASE("seed changes randomized checks only through the seed") {
  auto config = SuiteConfig::defaults();
  const auto first = report_json(run_suite(config, std::string("weyl-law")));
  config.seed += 1;
  const auto other = report_json(run_suite(config, std::string("weyl-law")));
  CHECK(first != other);
  config.seed -= 1;
  CHECK(report_json(run_suite(config, std::string("weyl-law"))) == first);
}
