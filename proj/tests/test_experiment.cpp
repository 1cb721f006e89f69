#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "randcons/config.hpp"
#include "randcons/errors.hpp"
#include "randcons/experiment.hpp"

using namespace randcons;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("randcons_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("trace header") {
  CHECK(trace_header(2) == "seed,k,agent,x0,x1,decision,dist_own,d0,spread_max\n");
  CHECK(trace_header(3) == "seed,k,agent,x0,x1,x2,decision,dist_own,d0,spread_max\n");
}

TEST_CASE("horizon 0 writes only the initial state") {
  ExperimentConfig c = preset("section6");
  c.seeds = {7};
  c.horizon = 0;
  c.output_dir = scratch("h0");
  const ExperimentResult r = run_experiment(c, {2, true, true});
  const auto rows = csv_rows(c.output_dir / "trace.csv");
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][0] == "7");
    CHECK(rows[i][1] == "0");
    CHECK(rows[i][5] == "none");
    CHECK(std::stod(rows[i][7]) == doctest::Approx(2 * std::sqrt(2.0)));
  }
  CHECK(r.ensembles.front().runs.front().final_d0 == doctest::Approx(2 * std::sqrt(2.0)));
  fs::remove_all(c.output_dir);
}

TEST_CASE("outputs do not depend on the thread count") {
  ExperimentConfig c = preset("section6");
  c.seeds = seed_range(1, 40);
  c.horizon = 60;
  c.output_dir = scratch("t1");
  run_experiment(c, {1, true, true});
  const std::string one = slurp(c.output_dir / "trace.csv");
  c.output_dir = scratch("t4");
  run_experiment(c, {4, true, true});
  CHECK(slurp(c.output_dir / "trace.csv") == one);
  CHECK(fs::exists(c.output_dir / "reference_trace.csv"));
  fs::remove_all(scratch("t1"));
  fs::remove_all(c.output_dir);
}

TEST_CASE("trace file agrees with the summary") {
  ExperimentConfig c = preset("section6");
  c.seeds = seed_range(1, 25);
  c.horizon = 300;
  c.output_dir = scratch("csv");
  const ExperimentResult r = run_experiment(c, {3, true, true});
  const auto rows = csv_rows(c.output_dir / "trace.csv");
  const auto ref_rows = csv_rows(c.output_dir / "reference_trace.csv");

  // first k with d0 <= 1e-6 per seed, recomputed from the CSV alone
  auto first_hits = [](const std::vector<std::vector<std::string>>& t) {
    std::map<std::uint64_t, double> hit;
    std::map<std::uint64_t, double> last;
    for (std::size_t i = 1; i < t.size(); ++i) {
      const auto seed = std::stoull(t[i][0]);
      const double k = std::stod(t[i][1]);
      const double d0 = std::stod(t[i][7]);
      if (last.count(seed)) CHECK(d0 <= last[seed] + 1e-9);
      last[seed] = d0;
      if (d0 <= 1e-6 && !hit.count(seed)) hit[seed] = k;
      if (!hit.count(seed) && k == 300) hit[seed] = INFINITY;
    }
    return hit;
  };
  const auto hits = first_hits(rows);
  const auto ref = first_hits(ref_rows).begin()->second;
  std::size_t wins = 0;
  for (const auto& [seed, k] : hits) wins += k < ref;
  const auto& stats = r.ensembles.front().stats.at(1e-6);
  CHECK(static_cast<double>(wins) / hits.size() == stats.win_fraction.value());

  const auto doc = nlohmann::json::parse(slurp(c.output_dir / "summary.json"));
  CHECK(doc["ensembles"][0]["runs"].size() == 25);
  CHECK(doc["reference"]["d0"].size() == 301);
  CHECK(doc["ensembles"][0]["stats"]["mean_d0"].size() == 301);
  fs::remove_all(c.output_dir);
}

TEST_CASE("a p sweep yields one ensemble per value") {
  ExperimentConfig c = preset("p_sweep");
  c.seeds = seed_range(1, 10);
  c.horizon = 50;
  c.output_dir = scratch("sweep");
  const ExperimentResult r = run_experiment(c, {0, true, true});
  REQUIRE(r.ensembles.size() == 3);
  CHECK(r.ensembles[0].p == 0.2);
  CHECK(r.ensembles[2].p == 0.8);
  CHECK(fs::exists(c.output_dir / "trace_p0.5.csv"));
  CHECK(r.violations() == 0);
  fs::remove_all(c.output_dir);
}

TEST_CASE("unwritable output directory raises IoError") {
  ExperimentConfig c = preset("section6");
  c.seeds = {1};
  c.horizon = 5;
  const fs::path blocker = scratch("blocker");
  { std::ofstream(blocker) << "x"; }
  c.output_dir = blocker / "sub";
  CHECK_THROWS_AS(run_experiment(c), IoError);
  fs::remove_all(blocker);
}

TEST_CASE("in-memory runs skip files") {
  ExperimentConfig c = preset("susc_demo");
  c.seeds = seed_range(1, 4);
  c.horizon = 400;
  c.output_dir = scratch("mem");
  const ExperimentResult r = run_experiment(c, {0, false, true});
  CHECK_FALSE(fs::exists(c.output_dir));
  CHECK(r.ensembles.front().runs.size() == 4);
  CHECK_FALSE(r.reference);
}
