#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "randcons/convex.hpp"
#include "randcons/graphs.hpp"
#include "randcons/protocol.hpp"

namespace randcons {

/// Everything needed to run one Monte Carlo study.
struct ExperimentConfig {
  std::string name;
  ProtocolConfig protocol;
  /// When non-empty, one ensemble per p value replaces the single ensemble.
  std::vector<double> p_sweep;
  /// Run the deterministic alternating baseline as the win-fraction reference.
  bool compare_deterministic = false;
  Phase reference_phase = Phase::kAverageFirst;
  GraphProcess graph;
  std::vector<Point> initial;
  std::uint64_t horizon = 300;
  std::vector<std::uint64_t> seeds;
  /// Positive, strictly descending.
  std::vector<double> epsilons;
  std::filesystem::path output_dir;
  bool write_trace = true;
};

/// Parses and validates. Errors name the offending field path, e.g.
/// "protocol.p: p in (0,1)". Throws ParseError or ValidationError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const ConvexSet& set);
ConvexSet convex_set_from_json(const nlohmann::json& node, const std::string& path = "set");

/// Cross-field checks (dimensions, agent counts, seeds, epsilons). Throws ValidationError.
void validate(const ExperimentConfig& config);

/// section6, section6_deterministic, p_sweep, susc_demo, sic_bidirectional_demo.
ExperimentConfig preset(std::string_view name);
const std::vector<std::string>& preset_names();

/// A preset name, or otherwise a path to a config file.
ExperimentConfig resolve_config(std::string_view name_or_path);

/// Consecutive seeds base, base + 1, ...
std::vector<std::uint64_t> seed_range(std::uint64_t base, std::uint64_t count);

}  // namespace randcons
