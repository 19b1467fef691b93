#include "mpfc/config.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "mpfc/io.hpp"

namespace mpfc {

ConfigError::ConfigError(const std::string& key, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : key + ": ") + message),
      key_(key),
      line_(line) {}

namespace {

constexpr double kNoLimit = std::numeric_limits<double>::infinity();

struct Range {
  double lo = -kNoLimit;
  double hi = kNoLimit;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double v) const {
    if (std::isnan(v)) return false;
    if (lo_open ? !(v > lo) : !(v >= lo)) return false;
    if (hi_open ? !(v < hi) : !(v <= hi)) return false;
    return true;
  }
  std::string describe() const {
    auto bound = [](double b) { return std::isinf(b) ? std::string(b < 0 ? "-inf" : "inf") : format_double(b); };
    return std::string(lo_open ? "(" : "[") + bound(lo) + ", " + bound(hi) + (hi_open ? ")" : "]");
  }
};

const Range kAny{};
const Range kNonNegative{0.0, kNoLimit};
const Range kPositive{0.0, kNoLimit, true};
const Range kUnit{0.0, 1.0};
const Range kOpenUnit{0.0, 1.0, true, true};
const Range kAtLeastOne{1.0, kNoLimit};
const Range kAtLeastTwo{2.0, kNoLimit};

struct Key {
  std::string name;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("expected a number, got '" + s + "'");
  return v;
}

long long to_integer(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

void check_range(double v, const Range& r) {
  if (!r.contains(v)) {
    throw std::invalid_argument("value " + format_double(v) + " is outside " + r.describe());
  }
}

template <typename Access>
Key real_key(std::string name, Access access, Range range = kAny) {
  return {std::move(name),
          [access](const RunConfig& c) { return format_double(access(const_cast<RunConfig&>(c))); },
          [access, range](RunConfig& c, const std::string& v) {
            const double x = to_double(v);
            check_range(x, range);
            access(c) = x;
          }};
}

template <typename Access>
Key int_key(std::string name, Access access, Range range = kAny) {
  return {std::move(name),
          [access](const RunConfig& c) { return std::to_string(access(const_cast<RunConfig&>(c))); },
          [access, range](RunConfig& c, const std::string& v) {
            const long long x = to_integer(v);
            check_range(static_cast<double>(x), range);
            if (x > std::numeric_limits<int>::max() || x < std::numeric_limits<int>::min()) {
              throw std::invalid_argument("integer out of range");
            }
            access(c) = static_cast<int>(x);
          }};
}

template <typename E>
Key enum_key(std::string name, std::function<E&(RunConfig&)> access, std::map<E, std::string> names) {
  return {std::move(name),
          [access, names](const RunConfig& c) { return names.at(access(const_cast<RunConfig&>(c))); },
          [access, names](RunConfig& c, const std::string& v) {
            for (const auto& [e, n] : names) {
              if (n == v) {
                access(c) = e;
                return;
              }
            }
            std::string options;
            for (const auto& [e, n] : names) options += (options.empty() ? "" : ", ") + n;
            throw std::invalid_argument("unknown value '" + v + "' (expected one of: " + options + ")");
          }};
}

std::string join_doubles(const Theta& t) {
  std::string s;
  for (std::size_t n = 0; n < t.size(); ++n) s += (n ? "," : "") + format_double(t[n]);
  return s;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t n = 0; n < v.size(); ++n) s += (n ? "," : "") + std::to_string(v[n]);
  return s;
}

std::vector<int> parse_int_list(const std::string& v) {
  std::vector<int> out;
  if (trim(v).empty()) return out;
  for (const auto& part : split(v, ',')) out.push_back(static_cast<int>(to_integer(trim(part))));
  return out;
}

std::map<Architecture, std::string> architecture_map() {
  std::map<Architecture, std::string> m;
  for (auto a : {Architecture::CentralisedMpfc, Architecture::DecentralisedMpfc, Architecture::CentralisedMpc,
                 Architecture::DecentralisedMpc, Architecture::PretunedFlc}) {
    m[a] = to_string(a);
  }
  return m;
}

const std::vector<Key>& keys() {
  using C = RunConfig;
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back({"scenario.preset", [](const C& c) { return c.preset; },
                 [](C& c, const std::string& v) {
                   c.experiment.scenario = preset(v);
                   c.preset = v;
                 }});
    k.push_back({"scenario.name", [](const C& c) { return c.experiment.scenario.name; },
                 [](C& c, const std::string& v) { c.experiment.scenario.name = v; }});
    k.push_back(int_key("scenario.nh", [](C& c) -> int& { return c.experiment.scenario.nh; }, kAtLeastOne));
    k.push_back(int_key("scenario.nv", [](C& c) -> int& { return c.experiment.scenario.nv; }, kAtLeastOne));
    k.push_back(real_key("scenario.cell_len", [](C& c) -> double& { return c.experiment.scenario.cell_len; },
                         kPositive));
    k.push_back(int_key("scenario.coarsening", [](C& c) -> int& { return c.experiment.scenario.coarsening; },
                        kAtLeastOne));
    k.push_back(int_key("scenario.robots", [](C& c) -> int& { return c.experiment.scenario.robots; }, kAtLeastOne));
    k.push_back(real_key("scenario.wind_speed", [](C& c) -> double& { return c.experiment.scenario.wind_speed; },
                         kNonNegative));
    k.push_back(real_key("scenario.wind_dir", [](C& c) -> double& { return c.experiment.scenario.wind_dir; }));
    k.push_back(enum_key<StructureMap>(
        "scenario.structure_map", [](C& c) -> StructureMap& { return c.experiment.scenario.structure_map; },
        {{StructureMap::Uniform, "uniform"}, {StructureMap::Perlin, "perlin"}}));
    k.push_back(real_key("scenario.structure_value",
                         [](C& c) -> double& { return c.experiment.scenario.structure_value; }, kUnit));
    k.push_back(int_key("scenario.perlin_lattice", [](C& c) -> int& { return c.experiment.scenario.perlin_lattice; },
                        kAtLeastOne));
    k.push_back(enum_key<DebrisMap>("scenario.debris_map",
                                    [](C& c) -> DebrisMap& { return c.experiment.scenario.debris_map; },
                                    {{DebrisMap::Uniform, "uniform"}, {DebrisMap::Gaussian, "gaussian"}}));
    k.push_back(real_key("scenario.debris_value", [](C& c) -> double& { return c.experiment.scenario.debris_value; },
                         kUnit));
    k.push_back(int_key("scenario.population_centres",
                        [](C& c) -> int& { return c.experiment.scenario.population_centres; }, kNonNegative));
    k.push_back(enum_key<IgnitionRule>("scenario.ignition",
                                       [](C& c) -> IgnitionRule& { return c.experiment.scenario.ignition; },
                                       {{IgnitionRule::None, "none"},
                                        {IgnitionRule::CentreBlock, "centre-block"},
                                        {IgnitionRule::Random, "random"},
                                        {IgnitionRule::BottomLeft, "bottom-left"},
                                        {IgnitionRule::Centre, "centre"}}));
    k.push_back(int_key("scenario.ignition_count",
                        [](C& c) -> int& { return c.experiment.scenario.ignition_count; }, kNonNegative));

    k.push_back(real_key("env.sigma", [](C& c) -> double& { return c.experiment.scenario.env.sigma; }, kUnit));
    k.push_back(int_key("env.n_victim", [](C& c) -> int& { return c.experiment.scenario.env.n_victim; }, kAtLeastOne));
    k.push_back(real_key("env.population_density",
                         [](C& c) -> double& { return c.experiment.scenario.env.population_density; }, kNonNegative));

    k.push_back(real_key("fire.alpha1", [](C& c) -> double& { return c.experiment.scenario.fire.alpha1; },
                         kNonNegative));
    k.push_back(real_key("fire.alpha2", [](C& c) -> double& { return c.experiment.scenario.fire.alpha2; },
                         kNonNegative));
    k.push_back(real_key("fire.alpha3", [](C& c) -> double& { return c.experiment.scenario.fire.alpha3; }));
    k.push_back(real_key("fire.alpha4", [](C& c) -> double& { return c.experiment.scenario.fire.alpha4; }));
    k.push_back(real_key("fire.c_w1", [](C& c) -> double& { return c.experiment.scenario.fire.c_w1; }));
    k.push_back(real_key("fire.c_w2", [](C& c) -> double& { return c.experiment.scenario.fire.c_w2; }));
    k.push_back(real_key("fire.zeta", [](C& c) -> double& { return c.experiment.scenario.fire.zeta; }, kOpenUnit));
    k.push_back(int_key("fire.k_2min", [](C& c) -> int& { return c.experiment.scenario.fire.k_2min; }, kAtLeastOne));
    k.push_back(int_key("fire.k_10min", [](C& c) -> int& { return c.experiment.scenario.fire.k_10min; }, kAtLeastOne));
    k.push_back(int_key("fire.wind_radius", [](C& c) -> int& { return c.experiment.scenario.fire.wind_radius; },
                        kAtLeastOne));
    k.push_back(real_key("fire.low_wind", [](C& c) -> double& { return c.experiment.scenario.fire.low_wind; },
                         kNonNegative));
    k.push_back(real_key("fire.high_wind", [](C& c) -> double& { return c.experiment.scenario.fire.high_wind; },
                         kNonNegative));

    k.push_back(real_key("robot.v_max", [](C& c) -> double& { return c.experiment.scenario.robot.v_max; }, kPositive));
    k.push_back(real_key("robot.scan_rate", [](C& c) -> double& { return c.experiment.scenario.robot.scan_rate; },
                         kNonNegative));
    k.push_back(real_key("robot.eta", [](C& c) -> double& { return c.experiment.scenario.robot.accuracy; }, kUnit));

    k.push_back(real_key("control.dt", [](C& c) -> double& { return c.experiment.control.dt; }, kPositive));
    k.push_back(real_key("control.t_ctrl", [](C& c) -> double& { return c.experiment.control.t_ctrl; }, kPositive));
    k.push_back(int_key("control.horizon", [](C& c) -> int& { return c.experiment.control.horizon; }, kNonNegative));
    k.push_back(real_key("control.sim_time", [](C& c) -> double& { return c.experiment.control.sim_time; },
                         kNonNegative));
    k.push_back(enum_key<Architecture>("control.architecture",
                                       [](C& c) -> Architecture& { return c.experiment.control.architecture; },
                                       architecture_map()));
    k.push_back(enum_key<PredictionMode>(
        "control.prediction_mode", [](C& c) -> PredictionMode& { return c.experiment.control.prediction_mode; },
        {{PredictionMode::Threshold, to_string(PredictionMode::Threshold)},
         {PredictionMode::Exact, to_string(PredictionMode::Exact)}}));
    k.push_back(enum_key<ObjectiveKind>(
        "control.objective", [](C& c) -> ObjectiveKind& { return c.experiment.control.objective; },
        {{ObjectiveKind::MissionCost, to_string(ObjectiveKind::MissionCost)},
         {ObjectiveKind::CaseStudyReward, to_string(ObjectiveKind::CaseStudyReward)},
         {ObjectiveKind::Attraction, to_string(ObjectiveKind::Attraction)}}));
    k.push_back(real_key("control.c_o1", [](C& c) -> double& { return c.experiment.control.c_o1; }));
    k.push_back(real_key("control.c_o2", [](C& c) -> double& { return c.experiment.control.c_o2; }));
    k.push_back(real_key("control.theta_lower", [](C& c) -> double& { return c.experiment.control.theta_lower; }));
    k.push_back(real_key("control.theta_upper", [](C& c) -> double& { return c.experiment.control.theta_upper; }));
    k.push_back(enum_key<Connective>("control.connective",
                                     [](C& c) -> Connective& { return c.experiment.control.connective; },
                                     {{Connective::Max, "max"}, {Connective::Product, "product"}}));
    k.push_back({"control.initial_theta", [](const C& c) { return join_doubles(c.experiment.control.initial_theta); },
                 [](C& c, const std::string& v) {
                   const auto parts = split(v, ',');
                   if (parts.size() != kThetaSize) {
                     throw std::invalid_argument("expected " + std::to_string(kThetaSize) + " comma-separated values");
                   }
                   for (std::size_t n = 0; n < kThetaSize; ++n) {
                     c.experiment.control.initial_theta[n] = to_double(trim(parts[n]));
                   }
                 }});
    k.push_back({"control.ordering",
                 [](const C& c) {
                   std::string s;
                   for (const auto& chain : c.experiment.control.ordering) s += (s.empty() ? "" : ";") + join_ints(chain);
                   return s;
                 },
                 [](C& c, const std::string& v) {
                   std::vector<OrderingChain> chains;
                   if (!trim(v).empty()) {
                     for (const auto& part : split(v, ';')) {
                       auto chain = parse_int_list(part);
                       for (int idx : chain) {
                         if (idx < 1 || idx > static_cast<int>(kThetaSize)) {
                           throw std::invalid_argument("ordering indices must lie in [1, 15]");
                         }
                       }
                       if (chain.size() < 2) throw std::invalid_argument("an ordering chain needs two indices");
                       chains.push_back(std::move(chain));
                     }
                   }
                   c.experiment.control.ordering = std::move(chains);
                 }});
    k.push_back(int_key("control.queue_length", [](C& c) -> int& { return c.experiment.control.queue_length; },
                        kAtLeastOne));
    k.push_back({"control.r_local",
                 [](const C& c) {
                   return c.experiment.control.r_local ? std::to_string(*c.experiment.control.r_local)
                                                       : std::string("none");
                 },
                 [](C& c, const std::string& v) {
                   if (v == "none") {
                     c.experiment.control.r_local.reset();
                     return;
                   }
                   const long long r = to_integer(v);
                   check_range(static_cast<double>(r), kAtLeastOne);
                   c.experiment.control.r_local = static_cast<int>(r);
                 }});
    k.push_back(real_key("control.event_threshold",
                         [](C& c) -> double& { return c.experiment.control.event_threshold; }, kNonNegative));
    k.push_back({"control.solve_order", [](const C& c) { return join_ints(c.experiment.control.solve_order); },
                 [](C& c, const std::string& v) { c.experiment.control.solve_order = parse_int_list(v); }});

    k.push_back(int_key("optim.pattern.max_evaluations",
                        [](C& c) -> int& { return c.experiment.control.pattern.budget.max_evaluations; },
                        kNonNegative));
    k.push_back(int_key("optim.pattern.max_iterations",
                        [](C& c) -> int& { return c.experiment.control.pattern.budget.max_iterations; },
                        kNonNegative));
    k.push_back(real_key("optim.pattern.initial_mesh",
                         [](C& c) -> double& { return c.experiment.control.pattern.initial_mesh; }, kPositive));
    k.push_back(real_key("optim.pattern.expansion",
                         [](C& c) -> double& { return c.experiment.control.pattern.expansion; }, kAtLeastOne));
    k.push_back(real_key("optim.pattern.contraction",
                         [](C& c) -> double& { return c.experiment.control.pattern.contraction; }, kOpenUnit));
    k.push_back(real_key("optim.pattern.max_mesh",
                         [](C& c) -> double& { return c.experiment.control.pattern.max_mesh; }, kPositive));
    k.push_back(real_key("optim.pattern.mesh_tolerance",
                         [](C& c) -> double& { return c.experiment.control.pattern.mesh_tolerance; }, kNonNegative));
    k.push_back(int_key("optim.genetic.max_evaluations",
                        [](C& c) -> int& { return c.experiment.control.genetic.budget.max_evaluations; },
                        kNonNegative));
    k.push_back(int_key("optim.genetic.max_iterations",
                        [](C& c) -> int& { return c.experiment.control.genetic.budget.max_iterations; },
                        kNonNegative));
    k.push_back(int_key("optim.genetic.population",
                        [](C& c) -> int& { return c.experiment.control.genetic.population; }, kAtLeastTwo));
    k.push_back(int_key("optim.genetic.tournament",
                        [](C& c) -> int& { return c.experiment.control.genetic.tournament; }, kAtLeastOne));
    k.push_back(real_key("optim.genetic.crossover",
                         [](C& c) -> double& { return c.experiment.control.genetic.crossover_rate; }, kUnit));
    k.push_back({"optim.genetic.mutation",
                 [](const C& c) {
                   const double m = c.experiment.control.genetic.mutation_rate;
                   return m < 0.0 ? std::string("auto") : format_double(m);
                 },
                 [](C& c, const std::string& v) {
                   if (v == "auto") {
                     c.experiment.control.genetic.mutation_rate = -1.0;
                     return;
                   }
                   const double m = to_double(v);
                   check_range(m, kUnit);
                   c.experiment.control.genetic.mutation_rate = m;
                 }});
    k.push_back(int_key("optim.genetic.elite", [](C& c) -> int& { return c.experiment.control.genetic.elite; },
                        kNonNegative));
    k.push_back(int_key("optim.genetic.stall_generations",
                        [](C& c) -> int& { return c.experiment.control.genetic.stall_generations; }, kAtLeastOne));

    k.push_back(int_key("run.n_sim", [](C& c) -> int& { return c.experiment.n_sim; }, kAtLeastOne));
    k.push_back({"run.master_seed", [](const C& c) { return std::to_string(c.experiment.master_seed); },
                 [](C& c, const std::string& v) {
                   std::size_t used = 0;
                   unsigned long long s = 0;
                   try {
                     if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
                     s = std::stoull(v, &used);
                   } catch (const std::exception&) {
                     throw std::invalid_argument("expected a non-negative integer, got '" + v + "'");
                   }
                   if (used != v.size()) throw std::invalid_argument("expected a non-negative integer, got '" + v + "'");
                   c.experiment.master_seed = s;
                 }});
    k.push_back(int_key("run.jobs", [](C& c) -> int& { return c.experiment.jobs; }, kNonNegative));
    k.push_back({"run.output_dir", [](const C& c) { return c.output_dir; },
                 [](C& c, const std::string& v) {
                   if (v.empty()) throw std::invalid_argument("output directory must not be empty");
                   c.output_dir = v;
                 }});
    k.push_back({"run.emit_fire_frames", [](const C& c) { return std::string(c.emit_fire_frames ? "true" : "false"); },
                 [](C& c, const std::string& v) {
                   if (v == "true") {
                     c.emit_fire_frames = true;
                   } else if (v == "false") {
                     c.emit_fire_frames = false;
                   } else {
                     throw std::invalid_argument("expected true or false");
                   }
                 }});
    return k;
  }();
  return table;
}

const Key* find_key(const std::string& name) {
  for (const auto& k : keys()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

void validate_config(const RunConfig& c) {
  try {
    c.experiment.scenario.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scenario", 0, e.what());
  }
  try {
    c.experiment.control.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("control", 0, e.what());
  }
  const auto& order = c.experiment.control.solve_order;
  if (!order.empty()) {
    std::set<int> seen(order.begin(), order.end());
    const int robots = c.experiment.scenario.robots;
    if (static_cast<int>(order.size()) != robots || static_cast<int>(seen.size()) != robots ||
        *seen.begin() != 0 || *seen.rbegin() != robots - 1) {
      throw ConfigError("control.solve_order", 0, "must be a permutation of 0..robots-1");
    }
  }
}

}  // namespace

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_config(const std::string& text) {
  struct Entry {
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    const auto colon = content.find(':');
    if (colon == std::string::npos) throw ConfigError("", line, "expected 'key: value'");
    const std::string key = trim(content.substr(0, colon));
    const std::string value = trim(content.substr(colon + 1));
    if (key.empty()) throw ConfigError("", line, "missing key");
    if (!find_key(key)) throw ConfigError(key, line, "unknown key");
    if (!seen.insert(key).second) throw ConfigError(key, line, "duplicate key");
    entries.push_back({key, value, line});
  }

  RunConfig c = default_config();
  auto apply = [&](const Entry& e) {
    try {
      find_key(e.key)->set(c, e.value);
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(e.key, e.line, ex.what());
    }
  };
  for (const auto& e : entries) {
    if (e.key == "scenario.preset") apply(e);
  }
  for (const auto& e : entries) {
    if (e.key != "scenario.preset") apply(e);
  }
  validate_config(c);
  return c;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError("", 0, std::string("cannot read config: ") + e.what());
  }
  return parse_config(text);
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const auto& k : keys()) out += k.name + ": " + k.get(config) + "\n";
  return out;
}

std::string config_hash(const RunConfig& config) { return fnv1a_hex(serialize_config(config)); }

std::vector<std::string> config_keys() {
  std::vector<std::string> names;
  for (const auto& k : keys()) names.push_back(k.name);
  return names;
}

bool operator==(const RunConfig& a, const RunConfig& b) { return serialize_config(a) == serialize_config(b); }

}  // namespace mpfc
