#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "randcons/config.hpp"
#include "randcons/errors.hpp"

using namespace randcons;
using nlohmann::json;

namespace {

Point p2(double a, double b) { return (Point(2) << a, b).finished(); }

json section6_doc() { return to_json(preset("section6")); }

}  // namespace

TEST_CASE("section6 preset") {
  const ExperimentConfig c = preset("section6");
  CHECK(c.protocol.size() == 3);
  CHECK(c.initial == std::vector<Point>{p2(-2, 2), p2(-2, -2), p2(2, -2)});
  const auto& fixed = std::get<FixedGraph>(c.graph.variant());
  CHECK(fixed.arcs == std::vector<Arc>{{0, 1}, {1, 2}, {2, 0}});
  CHECK(std::get<Randomized>(c.protocol.mode()).p == 0.5);
  CHECK(std::get<SelfWeighted>(c.graph.weight_rule()).self == 0.5);
  for (int i = 0; i < 3; ++i) CHECK(c.protocol.own_set(i).kind() == "ball");
  CHECK(c.horizon == 300);
  CHECK(c.seeds.size() == 1000);
  CHECK(c.compare_deterministic);
}

TEST_CASE("other presets") {
  CHECK(preset("p_sweep").p_sweep == std::vector<double>{0.2, 0.5, 0.8});
  CHECK_FALSE(preset("section6_deterministic").protocol.randomized());
  const ExperimentConfig susc = preset("susc_demo");
  const auto& w = std::get<WindowedBackbone>(susc.graph.variant());
  CHECK(w.window == 5);
  CHECK(w.q == 0.7);
  CHECK(susc.protocol.size() == 6);
  const ExperimentConfig sic = preset("sic_bidirectional_demo");
  CHECK_FALSE(sic.graph.directed());
  CHECK(sic.protocol.size() == 5);
  CHECK_THROWS_AS(preset("nope"), UnknownPreset);
}

TEST_CASE("every preset round-trips through json") {
  for (const std::string& name : preset_names()) {
    const json doc = to_json(preset(name));
    CHECK(to_json(parse_config(doc)) == doc);
  }
}

TEST_CASE("shipped config files match the presets") {
  const std::filesystem::path dir = RANDCONS_CONFIG_DIR;
  for (const std::string& name : preset_names()) {
    INFO(name);
    const auto path = dir / (name + ".json");
    REQUIRE(std::filesystem::exists(path));
    CHECK(to_json(load_config(path)) == to_json(preset(name)));
    CHECK(to_json(resolve_config(path.string())) == to_json(preset(name)));
  }
  CHECK(to_json(resolve_config("susc_demo")) == to_json(preset("susc_demo")));
}

TEST_CASE("validation errors carry field paths") {
  json doc = section6_doc();
  doc["protocol"]["p"] = 1.2;
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("p in (0,1)"), ValidationError);

  doc = section6_doc();
  doc["initial"][1] = json::array({1.0, 2.0, 3.0});
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("dimension"), ValidationError);

  doc = section6_doc();
  doc["sets"][0]["radius"] = -1.0;
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("sets[0]"), ValidationError);

  doc = section6_doc();
  doc["epsilons"] = json::array({1e-3, 1e-2});
  CHECK_THROWS_AS(parse_config(doc), ValidationError);

  doc = section6_doc();
  doc["horizon"] = 0;
  CHECK_THROWS_AS(parse_config(doc), ValidationError);

  doc = section6_doc();
  doc["graph"]["eta"] = 0.6;
  CHECK_THROWS_AS(parse_config(doc), ValidationError);

  doc = section6_doc();
  doc.erase("graph");
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("graph"), ParseError);
}

TEST_CASE("malformed files report a line") {
  const auto path = std::filesystem::temp_directory_path() / "randcons_bad_config.json";
  {
    std::ofstream out(path);
    out << "{\n  \"name\": \"x\",\n  \"horizon\": ,\n}\n";
  }
  CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains(":3:"), ParseError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config("/nonexistent/randcons.json"), IoError);
}

TEST_CASE("set json") {
  const json ball = {{"type", "ball"}, {"center", {0, 0}}, {"radius", 1}};
  CHECK(convex_set_from_json(ball).kind() == "ball");
  const json inter = {{"type", "intersection"},
                      {"members", {ball, {{"type", "halfspace"}, {"normal", {1, 0}}, {"offset", 0.5}}}}};
  const ConvexSet k = convex_set_from_json(inter);
  CHECK(distance(k, p2(2, 0)) == doctest::Approx(1.5));
  CHECK(to_json(convex_set_from_json(to_json(k))) == to_json(k));
  CHECK_THROWS(convex_set_from_json({{"type", "torus"}}));
}

TEST_CASE("seed ranges") {
  CHECK(seed_range(5, 3) == std::vector<std::uint64_t>{5, 6, 7});
  CHECK(seed_range(1, 0).empty());
}
