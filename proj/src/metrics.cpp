#include "randcons/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace randcons {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxRecordedBreaches = 16;

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  if (v.size() % 2 == 1) return v[m];
  return 0.5 * (v[m - 1] + v[m]);
}

std::optional<double> log_tail_slope(std::span<const double> d0) {
  const std::size_t n = d0.size();
  const std::size_t start = n - std::max<std::size_t>(n / 5, std::min<std::size_t>(n, 2));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t k = start; k < n; ++k) {
    if (!(d0[k] > 0.0)) continue;
    const double x = static_cast<double>(k);
    const double y = std::log(d0[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double c = static_cast<double>(count);
  const double denom = c * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (c * sxy - sx * sy) / denom;
}

}  // namespace

StepMetrics observe(const NetworkState& state, const ProtocolConfig& config,
                    std::span<const Decision> decisions) {
  const int n = config.size();
  if (static_cast<int>(state.states.size()) != n) {
    throw DimensionMismatch(fmt::format("observe: {} states for {} agents", state.states.size(), n));
  }
  const auto d = config.dimension();
  StepMetrics m;
  m.k = state.step;
  m.own.resize(n);
  m.spread.assign(d, 0.0);
  m.decisions.assign(decisions.begin(), decisions.end());
  Point lo = Point::Constant(d, kInf);
  Point hi = Point::Constant(d, -kInf);
  for (int i = 0; i < n; ++i) {
    const Point& x = state.states[i];
    m.d0 = std::max(m.d0, distance(config.intersection(), x));
    m.own[i] = distance(config.own_set(i), x);
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    m.spread[j] = hi[j] - lo[j];
    m.spread_max = std::max(m.spread_max, m.spread[j]);
  }
  return m;
}

InvariantMonitor::InvariantMonitor(const ProtocolConfig& config, double tolerance)
    : config_(&config), tolerance_(tolerance), previous_anchor_(config.size(), 0.0) {}

void InvariantMonitor::record(Breach b) {
  if (breaches_.size() < kMaxRecordedBreaches) breaches_.push_back(std::move(b));
}

void InvariantMonitor::check(const NetworkState& state, const StepMetrics& metrics) {
  const int n = config_->size();
  std::vector<double> anchor(n, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i) {
      anchor[a] = std::max(anchor[a], distance(config_->own_set(a), state.states[i]));
    }
  }
  const double own_max = metrics.own.empty()
                             ? 0.0
                             : *std::max_element(metrics.own.begin(), metrics.own.end());
  if (has_previous_) {
    ++checked_;
    const double rise = metrics.d0 - previous_d0_;
    if (rise > tolerance_) {
      ++monotonicity_;
      int worst = 0;
      double worst_d = -1.0;
      for (int i = 0; i < n; ++i) {
        const double di = distance(config_->intersection(), state.states[i]);
        if (di > worst_d) {
          worst_d = di;
          worst = i;
        }
      }
      record({"monotonicity", metrics.k, worst, rise});
    }
    for (int a = 0; a < n; ++a) {
      const double excess = anchor[a] - (previous_anchor_[a] + previous_own_max_);
      if (excess > tolerance_) {
        ++drift_;
        record({"anchor-drift", metrics.k, a, excess});
      }
    }
  }
  has_previous_ = true;
  previous_d0_ = metrics.d0;
  previous_own_max_ = own_max;
  previous_anchor_ = std::move(anchor);
}

std::optional<std::uint64_t> RunSummary::first_hit_at(double epsilon) const {
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    if (epsilons[e] == epsilon) return first_hit[e];
  }
  throw ValidationError(fmt::format("no first-hit statistic recorded for epsilon {}", epsilon));
}

RunSummary summarize(std::span<const StepMetrics> trace, std::span<const double> epsilons,
                     std::uint64_t seed) {
  if (trace.empty()) throw EmptyTrace("cannot summarize an empty trace");
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    if (!(epsilons[e] > 0.0) || (e > 0 && !(epsilons[e] < epsilons[e - 1]))) {
      throw ValidationError("epsilons must be positive and strictly descending");
    }
  }
  RunSummary s;
  s.seed = seed;
  s.epsilons.assign(epsilons.begin(), epsilons.end());
  s.first_hit.assign(epsilons.size(), std::nullopt);
  s.d0_trajectory.reserve(trace.size());
  std::uint64_t averaged = 0;
  std::uint64_t decided = 0;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const StepMetrics& m = trace[t];
    s.d0_trajectory.push_back(m.d0);
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      if (!s.first_hit[e] && m.d0 <= epsilons[e]) s.first_hit[e] = m.k;
    }
    if (t > 0 && m.d0 - trace[t - 1].d0 > 1e-9) ++s.monotonicity_violations;
    for (Decision d : m.decisions) {
      ++decided;
      averaged += d == Decision::kAverage;
    }
  }
  s.final_d0 = trace.back().d0;
  s.final_spread_max = trace.back().spread_max;
  s.averaging_fraction =
      decided == 0 ? 0.0 : static_cast<double>(averaged) / static_cast<double>(decided);
  s.tail_slope = log_tail_slope(s.d0_trajectory);
  return s;
}

const FirstHitStats& EnsembleStats::at(double epsilon) const {
  for (const auto& t : thresholds) {
    if (t.epsilon == epsilon) return t;
  }
  throw ValidationError(fmt::format("no ensemble statistic for epsilon {}", epsilon));
}

EnsembleStats aggregate(std::span<const RunSummary> summaries, const RunSummary* reference) {
  if (summaries.empty()) throw EmptyTrace("cannot aggregate zero runs");
  EnsembleStats out;
  out.runs = summaries.size();
  const auto& epsilons = summaries.front().epsilons;
  std::size_t shortest = summaries.front().d0_trajectory.size();
  for (const RunSummary& s : summaries) {
    if (s.epsilons != epsilons) throw ValidationError("runs disagree on their epsilon lists");
    shortest = std::min(shortest, s.d0_trajectory.size());
    out.mean_final_d0 += s.final_d0;
    out.mean_averaging_fraction += s.averaging_fraction;
    out.monotonicity_violations += s.monotonicity_violations;
  }
  const double count = static_cast<double>(summaries.size());
  out.mean_final_d0 /= count;
  out.mean_averaging_fraction /= count;

  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    FirstHitStats st;
    st.epsilon = epsilons[e];
    std::vector<double> values;
    values.reserve(summaries.size());
    double censored = 0.0;
    std::size_t wins = 0;
    double ref = kInf;
    if (reference != nullptr) {
      const auto r = reference->first_hit_at(epsilons[e]);
      if (r) ref = static_cast<double>(*r);
    }
    for (const RunSummary& s : summaries) {
      const auto& hit = s.first_hit[e];
      const double v = hit ? static_cast<double>(*hit) : kInf;
      values.push_back(v);
      st.hits += hit.has_value();
      censored += hit ? v : static_cast<double>(s.d0_trajectory.size());
      wins += v < ref;
    }
    st.hit_fraction = static_cast<double>(st.hits) / count;
    st.mean = st.hits == summaries.size() ? 0.0 : kInf;
    if (st.hits == summaries.size()) {
      for (double v : values) st.mean += v;
      st.mean /= count;
    }
    st.censored_mean = censored / count;
    st.median = median_of(values);
    if (reference != nullptr) st.win_fraction = static_cast<double>(wins) / count;
    out.thresholds.push_back(st);
  }

  out.mean_d0.assign(shortest, 0.0);
  for (const RunSummary& s : summaries) {
    for (std::size_t k = 0; k < shortest; ++k) out.mean_d0[k] += s.d0_trajectory[k];
  }
  for (double& v : out.mean_d0) v /= count;
  return out;
}

std::vector<StepMetrics> traced_run(const ProtocolConfig& config, const GraphProcess& graph,
                                    const NetworkState& initial, std::uint64_t horizon,
                                    const RandomSource& source, InvariantMonitor* monitor) {
  std::vector<StepMetrics> trace;
  trace.reserve(horizon + 1);
  run(config, graph, initial, horizon, source,
      [&](const NetworkState& state, std::span<const Decision> decisions) {
        trace.push_back(observe(state, config, decisions));
        if (monitor != nullptr) monitor->check(state, trace.back());
      });
  return trace;
}

}  // namespace randcons
