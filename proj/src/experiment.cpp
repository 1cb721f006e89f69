#include "randcons/experiment.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <iterator>
#include <mutex>
#include <thread>

#include <fmt/format.h>

namespace randcons {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string_view decision_tag(std::span<const Decision> decisions, int agent) {
  if (decisions.empty()) return "none";
  return decisions[agent] == Decision::kAverage ? "average" : "project";
}

struct SeedOutcome {
  RunSummary summary;
  std::string csv;
  std::uint64_t monotonicity = 0;
  std::uint64_t drift = 0;
  std::vector<InvariantMonitor::Breach> breaches;
};

SeedOutcome run_one(const ProtocolConfig& protocol, const ExperimentConfig& config,
                    std::uint64_t seed, bool trace) {
  SeedOutcome out;
  InvariantMonitor monitor(protocol);
  std::vector<StepMetrics> metrics;
  metrics.reserve(config.horizon + 1);
  run(protocol, config.graph, NetworkState{0, config.initial}, config.horizon, RandomSource(seed),
      [&](const NetworkState& state, std::span<const Decision> decisions) {
        StepMetrics m = observe(state, protocol, decisions);
        monitor.check(state, m);
        if (trace) append_trace_rows(out.csv, seed, state, m);
        metrics.push_back(std::move(m));
      });
  out.summary = summarize(metrics, config.epsilons, seed);
  out.monotonicity = monitor.monotonicity_violations();
  out.drift = monitor.drift_violations();
  out.breaches = monitor.breaches();
  for (auto& b : out.breaches) b.seed = seed;
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
  return out;
}

void write_or_throw(std::ofstream& out, std::string_view data, const std::filesystem::path& path) {
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError(fmt::format("write failed for {}", path.string()));
}

EnsembleResult run_ensemble(const ProtocolConfig& protocol, const ExperimentConfig& config,
                            unsigned threads, const std::optional<std::filesystem::path>& trace,
                            const RunSummary* reference) {
  EnsembleResult result;
  if (const auto* r = std::get_if<Randomized>(&protocol.mode())) result.p = r->p;

  std::optional<std::ofstream> file;
  if (trace) {
    file = open_output(*trace);
    write_or_throw(*file, trace_header(protocol.dimension()), *trace);
    result.trace_file = *trace;
  }

  const std::size_t total = config.seeds.size();
  std::vector<std::optional<SeedOutcome>> slots(total);
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      {
        std::lock_guard lock(mutex);
        if (failure) return;
      }
      try {
        SeedOutcome outcome = run_one(protocol, config, config.seeds[idx], trace.has_value());
        std::lock_guard lock(mutex);
        slots[idx] = std::move(outcome);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
      }
      ready.notify_all();
    }
  };

  std::vector<std::jthread> pool;
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);

  // single writer: consume slots strictly in seed order
  result.runs.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    SeedOutcome outcome;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return slots[idx].has_value() || failure; });
      if (!slots[idx]) break;
      outcome = std::move(*slots[idx]);
      slots[idx].reset();
    }
    if (file) write_or_throw(*file, outcome.csv, *trace);
    result.monotonicity_violations += outcome.monotonicity;
    result.drift_violations += outcome.drift;
    for (auto& b : outcome.breaches) {
      if (result.breaches.size() < 16) result.breaches.push_back(std::move(b));
    }
    result.runs.push_back(std::move(outcome.summary));
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);

  result.stats = aggregate(result.runs, reference);
  return result;
}

}  // namespace

std::uint64_t ExperimentResult::violations() const {
  std::uint64_t total = reference_violations;
  for (const auto& e : ensembles) total += e.monotonicity_violations + e.drift_violations;
  return total;
}

std::string trace_header(Eigen::Index dimension) {
  std::string h = "seed,k,agent";
  for (Eigen::Index j = 0; j < dimension; ++j) h += fmt::format(",x{}", j);
  h += ",decision,dist_own,d0,spread_max\n";
  return h;
}

void append_trace_rows(std::string& out, std::uint64_t seed, const NetworkState& state,
                       const StepMetrics& metrics) {
  auto it = std::back_inserter(out);
  for (std::size_t i = 0; i < state.states.size(); ++i) {
    fmt::format_to(it, "{},{},{}", seed, metrics.k, i + 1);
    const Point& x = state.states[i];
    for (Eigen::Index j = 0; j < x.size(); ++j) fmt::format_to(it, ",{}", x[j]);
    fmt::format_to(it, ",{},{},{},{}\n", decision_tag(metrics.decisions, static_cast<int>(i)),
                   metrics.own[i], metrics.d0, metrics.spread_max);
  }
}

json to_json(const RunSummary& s) {
  json hits = json::object();
  for (std::size_t e = 0; e < s.epsilons.size(); ++e) {
    hits[fmt::format("{}", s.epsilons[e])] =
        s.first_hit[e] ? json(*s.first_hit[e]) : json(nullptr);
  }
  return {{"seed", s.seed},
          {"first_hit", hits},
          {"final_d0", s.final_d0},
          {"final_spread_max", s.final_spread_max},
          {"monotonicity_violations", s.monotonicity_violations},
          {"averaging_fraction", s.averaging_fraction},
          {"tail_slope", s.tail_slope ? json(*s.tail_slope) : json(nullptr)}};
}

json to_json(const EnsembleStats& st) {
  json thresholds = json::array();
  for (const auto& t : st.thresholds) {
    thresholds.push_back({{"epsilon", t.epsilon},
                          {"hits", t.hits},
                          {"hit_fraction", t.hit_fraction},
                          {"mean_first_hit", number_or_null(t.mean)},
                          {"censored_mean_first_hit", t.censored_mean},
                          {"median_first_hit", number_or_null(t.median)},
                          {"win_fraction",
                           t.win_fraction ? json(*t.win_fraction) : json(nullptr)}});
  }
  return {{"runs", st.runs},
          {"thresholds", thresholds},
          {"mean_final_d0", st.mean_final_d0},
          {"mean_averaging_fraction", st.mean_averaging_fraction},
          {"monotonicity_violations", st.monotonicity_violations},
          {"mean_d0", st.mean_d0}};
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  const unsigned threads =
      options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  const bool trace = options.write_files && config.write_trace;
  if (options.write_files) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) {
      throw IoError(fmt::format("cannot create {}: {}", config.output_dir.string(), ec.message()));
    }
  }

  ExperimentResult result;
  json reference_json = nullptr;
  if (config.compare_deterministic && config.protocol.randomized()) {
    // the baseline is deterministic; seed 0 only drives a random graph process
    ExperimentConfig ref = config;
    ref.seeds = {0};
    const ProtocolConfig baseline =
        config.protocol.with_mode(DeterministicAlternating{config.reference_phase});
    std::optional<std::filesystem::path> ref_trace;
    if (trace) ref_trace = config.output_dir / "reference_trace.csv";
    EnsembleResult r = run_ensemble(baseline, ref, 1, ref_trace, nullptr);
    result.reference = r.runs.front();
    reference_json = to_json(*result.reference);
    reference_json["d0"] = result.reference->d0_trajectory;
    result.reference_violations = r.monotonicity_violations + r.drift_violations;
    result.reference_breaches = std::move(r.breaches);
  }
  const RunSummary* ref_ptr = result.reference ? &*result.reference : nullptr;

  if (config.p_sweep.empty()) {
    std::optional<std::filesystem::path> path;
    if (trace) path = config.output_dir / "trace.csv";
    result.ensembles.push_back(run_ensemble(config.protocol, config, threads, path, ref_ptr));
  } else {
    for (double p : config.p_sweep) {
      std::optional<std::filesystem::path> path;
      if (trace) path = config.output_dir / fmt::format("trace_p{}.csv", p);
      result.ensembles.push_back(
          run_ensemble(config.protocol.with_mode(Randomized{p}), config, threads, path, ref_ptr));
    }
  }

  if (options.write_files) {
    json ensembles = json::array();
    for (const auto& e : result.ensembles) {
      json runs = json::array();
      for (const auto& r : e.runs) runs.push_back(to_json(r));
      ensembles.push_back({{"p", e.p ? json(*e.p) : json(nullptr)},
                           {"trace", e.trace_file.filename().string()},
                           {"monotonicity_violations", e.monotonicity_violations},
                           {"drift_violations", e.drift_violations},
                           {"stats", to_json(e.stats)},
                           {"runs", runs}});
    }
    const json doc{{"config", to_json(config)},
                   {"reference", reference_json},
                   {"reference_violations", result.reference_violations},
                   {"ensembles", ensembles}};
    result.summary_file = config.output_dir / "summary.json";
    std::ofstream out = open_output(result.summary_file);
    write_or_throw(out, doc.dump(2) + "\n", result.summary_file);
  }

  if (options.fail_on_violation && result.violations() > 0) {
    std::vector<InvariantMonitor::Breach> all = result.reference_breaches;
    for (const auto& e : result.ensembles) all.insert(all.end(), e.breaches.begin(), e.breaches.end());
    const auto& b = all.front();
    throw InvariantViolation(
        fmt::format("{} invariant breached at seed {} step {} (agent {}, magnitude {:.3e}); {} "
                    "violations in total",
                    b.kind, b.seed, b.step, b.agent + 1, b.magnitude, result.violations()),
        b.seed, static_cast<long>(b.step), b.agent, b.magnitude);
  }
  return result;
}

}  // namespace randcons
