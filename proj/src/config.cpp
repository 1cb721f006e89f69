#include "randcons/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace randcons {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string join_path(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : fmt::format("{}.{}", path, key);
}

std::string index_path(const std::string& path, std::size_t i) {
  return fmt::format("{}[{}]", path, i);
}

const json& field(const json& node, std::string_view key, const std::string& path) {
  if (!node.is_object()) throw ParseError(fmt::format("{}: expected an object", path));
  const auto it = node.find(key);
  if (it == node.end()) {
    throw ParseError(fmt::format("{}: missing field", join_path(path, key)));
  }
  return *it;
}

const json* optional_field(const json& node, std::string_view key) {
  const auto it = node.find(key);
  return it == node.end() ? nullptr : &*it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(fmt::format("{}: expected a number", path));
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(fmt::format("{}: must be finite", path));
  return x;
}

std::uint64_t count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ParseError(fmt::format("{}: expected a non-negative integer", path));
  }
  return v.get<std::uint64_t>();
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(fmt::format("{}: expected a string", path));
  return v.get<std::string>();
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(fmt::format("{}: expected an array", path));
  return v;
}

Point point(const json& v, const std::string& path) {
  const json& a = array(v, path);
  Point p(static_cast<Eigen::Index>(a.size()));
  for (std::size_t j = 0; j < a.size(); ++j) p[j] = number(a[j], index_path(path, j));
  return p;
}

json point_json(const Point& p) {
  json a = json::array();
  for (Eigen::Index j = 0; j < p.size(); ++j) a.push_back(p[j]);
  return a;
}

std::vector<Arc> arcs_from_json(const json& v, int n, const std::string& path) {
  std::vector<Arc> arcs;
  const json& a = array(v, path);
  for (std::size_t t = 0; t < a.size(); ++t) {
    const std::string p = index_path(path, t);
    const json& pair = array(a[t], p);
    if (pair.size() != 2) throw ParseError(fmt::format("{}: an arc is a pair [from, to]", p));
    const auto from = count(pair[0], p + "[0]");
    const auto to = count(pair[1], p + "[1]");
    if (from < 1 || to < 1 || from > static_cast<std::uint64_t>(n) ||
        to > static_cast<std::uint64_t>(n)) {
      throw ValidationError(fmt::format("{}: node ids must lie in 1..{}", p, n));
    }
    arcs.push_back({static_cast<int>(from) - 1, static_cast<int>(to) - 1});
  }
  return arcs;
}

json arcs_json(const std::vector<Arc>& arcs) {
  json a = json::array();
  for (const Arc& arc : arcs) a.push_back({arc.from + 1, arc.to + 1});
  return a;
}

template <class F>
auto validated(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path, e.what()));
  } catch (const Error& e) {
    throw ValidationError(fmt::format("{}: {}", path, e.what()));
  }
}

Phase phase_from(const std::string& s, const std::string& path) {
  if (s == "average_first") return Phase::kAverageFirst;
  if (s == "project_first") return Phase::kProjectFirst;
  throw ValidationError(fmt::format("{}: phase must be average_first or project_first", path));
}

std::string_view phase_name(Phase p) {
  return p == Phase::kAverageFirst ? "average_first" : "project_first";
}

WeightRule weight_rule_from(const json& v, const std::string& path) {
  const std::string rule = text(field(v, "rule", path), join_path(path, "rule"));
  if (rule == "equal") return EqualWeights{};
  if (rule == "self_weighted") {
    return SelfWeighted{number(field(v, "self", path), join_path(path, "self"))};
  }
  throw ValidationError(fmt::format("{}.rule: expected equal or self_weighted", path));
}

json weight_rule_json(const WeightRule& rule) {
  return std::visit(Overloaded{[](const EqualWeights&) { return json{{"rule", "equal"}}; },
                               [](const SelfWeighted& s) {
                                 return json{{"rule", "self_weighted"}, {"self", s.self}};
                               }},
                    rule);
}

IntervalSchedule intervals_from(const json& v, const std::string& path) {
  if (const json* e = optional_field(v, "endpoints")) {
    std::vector<std::uint64_t> ends;
    const std::string p = join_path(path, "endpoints");
    const json& a = array(*e, p);
    for (std::size_t t = 0; t < a.size(); ++t) ends.push_back(count(a[t], index_path(p, t)));
    return validated(p, [&] { return IntervalSchedule(std::move(ends)); });
  }
  const std::string p = join_path(path, "geometric");
  const json& g = field(v, "geometric", path);
  const double first = number(field(g, "first_length", p), join_path(p, "first_length"));
  const double growth = number(field(g, "growth", p), join_path(p, "growth"));
  const auto cover = count(field(g, "cover_until", p), join_path(p, "cover_until"));
  return validated(p, [&] { return IntervalSchedule::geometric(first, growth, cover); });
}

json intervals_json(const IntervalSchedule& s) {
  if (const auto& r = s.rule()) {
    return {{"geometric",
             {{"first_length", r->first_length},
              {"growth", r->growth},
              {"cover_until", r->cover_until}}}};
  }
  return {{"endpoints", s.endpoints()}};
}

GraphProcess graph_from(const json& v, const std::string& path) {
  const auto n_raw = count(field(v, "n", path), join_path(path, "n"));
  if (n_raw < 1) throw ValidationError(fmt::format("{}.n: need at least one node", path));
  const int n = static_cast<int>(n_raw);
  const double eta = number(field(v, "eta", path), join_path(path, "eta"));
  const WeightRule rule = weight_rule_from(field(v, "weights", path), join_path(path, "weights"));
  const std::string pp = join_path(path, "process");
  const json& p = field(v, "process", path);
  const std::string type = text(field(p, "type", pp), join_path(pp, "type"));
  GraphProcess::Variant process;
  if (type == "fixed") {
    process = FixedGraph{arcs_from_json(field(p, "arcs", pp), n, join_path(pp, "arcs"))};
  } else if (type == "independent") {
    const std::string mp = join_path(pp, "probability");
    const json& rows = array(field(p, "probability", pp), mp);
    if (rows.size() != static_cast<std::size_t>(n)) {
      throw ValidationError(fmt::format("{}: expected {} rows", mp, n));
    }
    Eigen::MatrixXd prob(n, n);
    for (int i = 0; i < n; ++i) {
      const Point row = point(rows[i], index_path(mp, i));
      if (row.size() != n) {
        throw ValidationError(fmt::format("{}: expected {} columns", index_path(mp, i), n));
      }
      prob.row(i) = row.transpose();
    }
    process = IndependentArcs{prob};
  } else if (type == "windowed") {
    const auto window = count(field(p, "window", pp), join_path(pp, "window"));
    process = WindowedBackbone{static_cast<int>(window),
                               number(field(p, "q", pp), join_path(pp, "q")),
                               arcs_from_json(field(p, "backbone", pp), n,
                                              join_path(pp, "backbone"))};
  } else if (type == "sic") {
    process = SicSchedule{intervals_from(field(p, "intervals", pp), join_path(pp, "intervals")),
                          number(field(p, "q", pp), join_path(pp, "q")),
                          arcs_from_json(field(p, "backbone", pp), n, join_path(pp, "backbone"))};
  } else {
    throw ValidationError(
        fmt::format("{}.type: expected fixed, independent, windowed or sic", pp));
  }
  return validated(path, [&] { return GraphProcess(n, std::move(process), eta, rule); });
}

json graph_json(const GraphProcess& g) {
  json process = std::visit(
      Overloaded{[](const FixedGraph& f) { return json{{"type", "fixed"}, {"arcs", arcs_json(f.arcs)}}; },
                 [](const IndependentArcs& f) {
                   json rows = json::array();
                   for (Eigen::Index i = 0; i < f.probability.rows(); ++i) {
                     rows.push_back(point_json(f.probability.row(i).transpose()));
                   }
                   return json{{"type", "independent"}, {"probability", rows}};
                 },
                 [](const WindowedBackbone& w) {
                   return json{{"type", "windowed"},
                               {"window", w.window},
                               {"q", w.q},
                               {"backbone", arcs_json(w.backbone)}};
                 },
                 [](const SicSchedule& s) {
                   return json{{"type", "sic"},
                               {"q", s.q},
                               {"intervals", intervals_json(s.intervals)},
                               {"backbone", arcs_json(s.backbone)}};
                 }},
      g.variant());
  return {{"n", g.size()},
          {"eta", g.eta()},
          {"weights", weight_rule_json(g.weight_rule())},
          {"process", process}};
}

ProtocolMode mode_from(const json& v, const std::string& path) {
  const std::string mode = text(field(v, "mode", path), join_path(path, "mode"));
  if (mode == "randomized") {
    return Randomized{number(field(v, "p", path), join_path(path, "p"))};
  }
  if (mode == "deterministic") {
    Phase phase = Phase::kAverageFirst;
    if (const json* ph = optional_field(v, "phase")) {
      phase = phase_from(text(*ph, join_path(path, "phase")), join_path(path, "phase"));
    }
    return DeterministicAlternating{phase};
  }
  throw ValidationError(fmt::format("{}.mode: expected randomized or deterministic", path));
}

std::vector<double> numbers(const json& v, const std::string& path) {
  std::vector<double> out;
  const json& a = array(v, path);
  for (std::size_t t = 0; t < a.size(); ++t) out.push_back(number(a[t], index_path(path, t)));
  return out;
}

}  // namespace

std::vector<std::uint64_t> seed_range(std::uint64_t base, std::uint64_t n) {
  std::vector<std::uint64_t> out(n);
  for (std::uint64_t t = 0; t < n; ++t) out[t] = base + t;
  return out;
}

ConvexSet convex_set_from_json(const json& node, const std::string& path) {
  const std::string type = text(field(node, "type", path), join_path(path, "type"));
  auto pt = [&](std::string_view key) {
    return point(field(node, key, path), join_path(path, key));
  };
  auto num = [&](std::string_view key) {
    return number(field(node, key, path), join_path(path, key));
  };
  if (type == "ball") {
    Point c = pt("center");
    const double r = num("radius");
    return validated(path, [&] { return ConvexSet::ball(std::move(c), r); });
  }
  if (type == "box") {
    Point lo = pt("lower");
    Point hi = pt("upper");
    return validated(path, [&] { return ConvexSet::box(std::move(lo), std::move(hi)); });
  }
  if (type == "halfspace") {
    Point a = pt("normal");
    const double b = num("offset");
    return validated(path, [&] { return ConvexSet::halfspace(std::move(a), b); });
  }
  if (type == "affine") {
    Point base = pt("basepoint");
    const std::string dp = join_path(path, "directions");
    const json& dirs = array(field(node, "directions", path), dp);
    Eigen::MatrixXd q(base.size(), static_cast<Eigen::Index>(dirs.size()));
    for (std::size_t t = 0; t < dirs.size(); ++t) {
      const Point col = point(dirs[t], index_path(dp, t));
      if (col.size() != base.size()) {
        throw ValidationError(fmt::format("{}: dimension mismatch with basepoint", index_path(dp, t)));
      }
      q.col(static_cast<Eigen::Index>(t)) = col;
    }
    return validated(path, [&] { return ConvexSet::affine(std::move(base), std::move(q)); });
  }
  if (type == "intersection") {
    const std::string mp = join_path(path, "members");
    const json& members = array(field(node, "members", path), mp);
    std::vector<ConvexSet> sets;
    for (std::size_t t = 0; t < members.size(); ++t) {
      sets.push_back(convex_set_from_json(members[t], index_path(mp, t)));
    }
    return validated(path, [&] { return ConvexSet::intersection(std::move(sets)); });
  }
  throw ValidationError(fmt::format(
      "{}.type: expected ball, box, halfspace, affine or intersection, got \"{}\"", path, type));
}

json to_json(const ConvexSet& set) {
  return std::visit(
      Overloaded{[](const Ball& b) {
                   return json{{"type", "ball"}, {"center", point_json(b.center)}, {"radius", b.radius}};
                 },
                 [](const Box& b) {
                   return json{{"type", "box"},
                               {"lower", point_json(b.lower)},
                               {"upper", point_json(b.upper)}};
                 },
                 [](const Halfspace& h) {
                   return json{{"type", "halfspace"},
                               {"normal", point_json(h.normal)},
                               {"offset", h.offset}};
                 },
                 [](const AffineSubspace& a) {
                   json dirs = json::array();
                   for (Eigen::Index c = 0; c < a.directions.cols(); ++c) {
                     dirs.push_back(point_json(a.directions.col(c)));
                   }
                   return json{{"type", "affine"},
                               {"basepoint", point_json(a.basepoint)},
                               {"directions", dirs}};
                 },
                 [](const Intersection& k) {
                   json members = json::array();
                   for (const auto& m : k.members) members.push_back(to_json(m));
                   return json{{"type", "intersection"}, {"members", members}};
                 }},
      set.variant());
}

void validate(const ExperimentConfig& c) {
  const int n = c.protocol.size();
  const auto d = c.protocol.dimension();
  if (c.graph.size() != n) {
    throw ValidationError(fmt::format("graph.n: graph has {} nodes but there are {} agent sets",
                                      c.graph.size(), n));
  }
  if (static_cast<int>(c.initial.size()) != n) {
    throw ValidationError(fmt::format("initial: {} initial points for {} agents",
                                      c.initial.size(), n));
  }
  for (std::size_t i = 0; i < c.initial.size(); ++i) {
    if (c.initial[i].size() != d) {
      throw ValidationError(fmt::format(
          "initial[{}]: dimension mismatch, point has dimension {}, sets have dimension {}", i,
          c.initial[i].size(), d));
    }
    if (!all_finite(c.initial[i])) {
      throw ValidationError(fmt::format("initial[{}]: non-finite coordinate", i));
    }
  }
  if (c.seeds.empty()) throw ValidationError("seeds: need at least one seed");
  for (std::size_t e = 0; e < c.epsilons.size(); ++e) {
    if (!(c.epsilons[e] > 0.0) || (e > 0 && !(c.epsilons[e] < c.epsilons[e - 1]))) {
      throw ValidationError("epsilons: must be positive and strictly descending");
    }
  }
  for (std::size_t t = 0; t < c.p_sweep.size(); ++t) {
    if (!(c.p_sweep[t] > 0.0 && c.p_sweep[t] < 1.0)) {
      throw ValidationError(fmt::format("protocol.p_sweep[{}]: p in (0,1) required", t));
    }
  }
  if (!c.p_sweep.empty() && !c.protocol.randomized()) {
    throw ValidationError("protocol.p_sweep: requires mode randomized");
  }
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ParseError("config: expected an object at top level");
  std::string name = "experiment";
  if (const json* nm = optional_field(doc, "name")) name = text(*nm, "name");

  const json& proto = field(doc, "protocol", "");
  const ProtocolMode mode = mode_from(proto, "protocol");
  std::vector<ConvexSet> sets;
  const json& sets_json = array(field(doc, "sets", ""), "sets");
  for (std::size_t i = 0; i < sets_json.size(); ++i) {
    sets.push_back(convex_set_from_json(sets_json[i], index_path("sets", i)));
  }
  ConvexSet x0 = convex_set_from_json(field(doc, "intersection", ""), "intersection");
  ProtocolConfig protocol = validated("protocol", [&] {
    return ProtocolConfig(mode, std::move(sets), std::move(x0));
  });

  std::vector<double> sweep;
  if (const json* s = optional_field(proto, "p_sweep")) sweep = numbers(*s, "protocol.p_sweep");
  bool compare = false;
  Phase ref_phase = Phase::kAverageFirst;
  if (const json* r = optional_field(proto, "reference")) {
    const std::string ref = text(*r, "protocol.reference");
    if (ref == "deterministic") {
      compare = true;
    } else if (ref != "none") {
      throw ValidationError("protocol.reference: expected deterministic or none");
    }
  }
  if (const json* ph = optional_field(proto, "reference_phase")) {
    ref_phase = phase_from(text(*ph, "protocol.reference_phase"), "protocol.reference_phase");
  }

  GraphProcess graph = graph_from(field(doc, "graph", ""), "graph");

  std::vector<Point> initial;
  const json& init = array(field(doc, "initial", ""), "initial");
  for (std::size_t i = 0; i < init.size(); ++i) initial.push_back(point(init[i], index_path("initial", i)));

  const auto horizon = count(field(doc, "horizon", ""), "horizon");
  if (horizon < 1) throw ValidationError("horizon: must be >= 1");

  std::vector<std::uint64_t> seeds;
  const json& sj = field(doc, "seeds", "");
  if (sj.is_array()) {
    for (std::size_t t = 0; t < sj.size(); ++t) seeds.push_back(count(sj[t], index_path("seeds", t)));
  } else {
    seeds = seed_range(count(field(sj, "base", "seeds"), "seeds.base"),
                       count(field(sj, "count", "seeds"), "seeds.count"));
  }

  std::vector<double> epsilons{1e-2, 1e-3, 1e-6};
  if (const json* e = optional_field(doc, "epsilons")) epsilons = numbers(*e, "epsilons");

  std::filesystem::path out_dir = "out";
  bool trace = true;
  if (const json* o = optional_field(doc, "output")) {
    if (const json* dir = optional_field(*o, "dir")) out_dir = text(*dir, "output.dir");
    if (const json* t = optional_field(*o, "trace")) {
      if (!t->is_boolean()) throw ParseError("output.trace: expected a boolean");
      trace = t->get<bool>();
    }
  }

  ExperimentConfig config{std::move(name), std::move(protocol), std::move(sweep), compare,
                          ref_phase, std::move(graph), std::move(initial), horizon,
                          std::move(seeds), std::move(epsilons), std::move(out_dir), trace};
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config file {}", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; translate it into a line number.
    std::ifstream again(path);
    std::string contents((std::istreambuf_iterator<char>(again)), std::istreambuf_iterator<char>());
    const std::size_t upto = std::min<std::size_t>(e.byte, contents.size());
    const auto line = 1 + std::count(contents.begin(), contents.begin() + static_cast<long>(upto), '\n');
    throw ParseError(fmt::format("{}:{}: {}", path.string(), line, e.what()));
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& c) {
  json proto;
  std::visit(Overloaded{[&](const Randomized& r) {
                          proto["mode"] = "randomized";
                          proto["p"] = r.p;
                        },
                        [&](const DeterministicAlternating& d) {
                          proto["mode"] = "deterministic";
                          proto["phase"] = phase_name(d.phase);
                        }},
             c.protocol.mode());
  if (!c.p_sweep.empty()) proto["p_sweep"] = c.p_sweep;
  proto["reference"] = c.compare_deterministic ? "deterministic" : "none";
  proto["reference_phase"] = phase_name(c.reference_phase);

  json sets = json::array();
  for (const auto& s : c.protocol.sets()) sets.push_back(to_json(s));
  json initial = json::array();
  for (const auto& x : c.initial) initial.push_back(point_json(x));

  json seeds;
  bool consecutive = true;
  for (std::size_t t = 1; t < c.seeds.size(); ++t) consecutive &= c.seeds[t] == c.seeds[0] + t;
  if (consecutive && !c.seeds.empty()) {
    seeds = {{"base", c.seeds.front()}, {"count", c.seeds.size()}};
  } else {
    seeds = c.seeds;
  }
  return {{"name", c.name},
          {"protocol", proto},
          {"sets", sets},
          {"intersection", to_json(c.protocol.intersection())},
          {"graph", graph_json(c.graph)},
          {"initial", initial},
          {"horizon", c.horizon},
          {"seeds", seeds},
          {"epsilons", c.epsilons},
          {"output", {{"dir", c.output_dir.string()}, {"trace", c.write_trace}}}};
}

namespace {

Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index j = 0;
  for (double x : xs) p[j++] = x;
  return p;
}

ExperimentConfig section6_config() {
  std::vector<ConvexSet> disks{ConvexSet::ball(vec({-1, 0}), 1.0),
                               ConvexSet::ball(vec({1, 0}), 1.0),
                               ConvexSet::ball(vec({0, -1}), 1.0)};
  // the three disks meet only at the origin
  ProtocolConfig protocol(Randomized{0.5}, std::move(disks), ConvexSet::ball(vec({0, 0}), 0.0));
  GraphProcess graph(3, FixedGraph{{{0, 1}, {1, 2}, {2, 0}}}, 0.1, SelfWeighted{0.5});
  return ExperimentConfig{"section6",
                          std::move(protocol),
                          {},
                          true,
                          Phase::kAverageFirst,
                          std::move(graph),
                          {vec({-2, 2}), vec({-2, -2}), vec({2, -2})},
                          300,
                          seed_range(1, 1000),
                          {1e-2, 1e-3, 1e-6},
                          "out/section6",
                          true};
}

ExperimentConfig susc_config() {
  // X_0 = [0,1]^2: four halfspaces cut it out, two larger boxes contain it
  std::vector<ConvexSet> sets{ConvexSet::halfspace(vec({-1, 0}), 0.0),
                              ConvexSet::halfspace(vec({1, 0}), 1.0),
                              ConvexSet::halfspace(vec({0, -1}), 0.0),
                              ConvexSet::halfspace(vec({0, 1}), 1.0),
                              ConvexSet::box(vec({-1, -1}), vec({1, 2})),
                              ConvexSet::box(vec({0, -2}), vec({3, 1}))};
  ProtocolConfig protocol(Randomized{0.5}, std::move(sets), ConvexSet::box(vec({0, 0}), vec({1, 1})));
  std::vector<Arc> cycle;
  for (int i = 0; i < 6; ++i) cycle.push_back({i, (i + 1) % 6});
  GraphProcess graph(6, WindowedBackbone{5, 0.7, cycle}, 0.1, EqualWeights{});
  return ExperimentConfig{"susc_demo",
                          std::move(protocol),
                          {},
                          false,
                          Phase::kAverageFirst,
                          std::move(graph),
                          {vec({6, 4}), vec({-5, 3}), vec({4, -6}), vec({-3, -4}), vec({7, 0}),
                           vec({0, 8})},
                          2000,
                          seed_range(1, 200),
                          {1e-2, 1e-3, 1e-6},
                          "out/susc_demo",
                          true};
}

ExperimentConfig sic_config() {
  // unit disks centered on a regular pentagon of unit radius all pass
  // through the origin and meet nowhere else
  std::vector<ConvexSet> disks;
  for (int i = 0; i < 5; ++i) {
    const double angle = M_PI / 2 + 2 * M_PI * i / 5;
    disks.push_back(ConvexSet::ball(vec({std::cos(angle), std::sin(angle)}), 1.0));
  }
  ProtocolConfig protocol(Randomized{0.5}, std::move(disks), ConvexSet::ball(vec({0, 0}), 0.0));
  SicSchedule sic{IntervalSchedule::geometric(4.0, 1.01, 100000), 0.7,
                  {{0, 1}, {1, 2}, {2, 3}, {3, 4}}};
  GraphProcess graph(5, std::move(sic), 0.1, EqualWeights{});
  return ExperimentConfig{"sic_bidirectional_demo",
                          std::move(protocol),
                          {},
                          false,
                          Phase::kAverageFirst,
                          std::move(graph),
                          {vec({3, 3}), vec({-4, 1}), vec({2, -5}), vec({-1, -3}), vec({5, 0})},
                          5000,
                          seed_range(1, 200),
                          {1e-2, 1e-3, 1e-6},
                          "out/sic_bidirectional_demo",
                          true};
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"section6", "section6_deterministic", "p_sweep",
                                              "susc_demo", "sic_bidirectional_demo"};
  return names;
}

ExperimentConfig preset(std::string_view name) {
  if (name == "section6") return section6_config();
  if (name == "section6_deterministic") {
    ExperimentConfig c = section6_config();
    c.name = "section6_deterministic";
    c.protocol = c.protocol.with_mode(DeterministicAlternating{Phase::kAverageFirst});
    c.compare_deterministic = false;
    c.seeds = {1};
    c.output_dir = "out/section6_deterministic";
    return c;
  }
  if (name == "p_sweep") {
    ExperimentConfig c = section6_config();
    c.name = "p_sweep";
    c.p_sweep = {0.2, 0.5, 0.8};
    c.output_dir = "out/p_sweep";
    return c;
  }
  if (name == "susc_demo") return susc_config();
  if (name == "sic_bidirectional_demo") return sic_config();
  throw UnknownPreset(fmt::format("unknown preset \"{}\"", name));
}

ExperimentConfig resolve_config(std::string_view name_or_path) {
  const auto& names = preset_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
    return preset(name_or_path);
  }
  return load_config(std::filesystem::path(name_or_path));
}

}  // namespace randcons
