#include "settings.hpp"

#include <fstream>
#include <sstream>

#include "ebpoisson/errors.hpp"
#include "json.hpp"

namespace ebp::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kKnownKeys{
    "case", "scheme", "fallback", "rhs", "level", "nodes", "solver", "tol", "max_iterations",
    "out", "format", "interval", "resolution", "theta_step", "dump_matrix"};

json load_config(const std::string& source) {
  std::string text = source;
  if (source.find_first_not_of(" \t\n") != std::string::npos &&
      source[source.find_first_not_of(" \t\n")] != '{') {
    std::ifstream is(source);
    if (!is) throw UsageError("cannot read config file '" + source + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    text = ss.str();
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  return doc;
}

template <class T>
T field(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

SchemeKind parse_scheme(const std::string& name, bool fallback) {
  if (name == "linear") return SchemeKind::linear();
  if (name == "quadratic") return SchemeKind::quadratic(fallback);
  throw UsageError("unknown scheme '" + name + "' (expected linear|quadratic)");
}

RhsMode parse_rhs(const std::string& name, int level) {
  if (name == "exact") return RhsMode::exact();
  if (name == "sampled") return RhsMode::sampled(level);
  if (name == "calibrated") return RhsMode::calibrated(level);
  if (name == "scaled1d") return RhsMode::scaled_linear_to_quad();
  throw UsageError("unknown rhs mode '" + name + "' (expected exact|sampled|calibrated|scaled1d)");
}

}  // namespace

bool Flags::was_given(const std::string& long_name) const {
  const std::string bare = long_name.substr(long_name.find_first_not_of('-'));
  for (const CLI::Option* opt : given) {
    if (opt->check_lname(bare)) return opt->count() > 0;
  }
  return false;
}

void register_common(CLI::App& sub, Flags& f) {
  f.given.push_back(sub.add_option("--config", f.config, "JSON config file or inline JSON object"));
  f.given.push_back(sub.add_option("--case", f.case_name, "case1d|case2d|case2d-uniform|case3d"));
  f.given.push_back(sub.add_option("--scheme", f.scheme, "linear|quadratic"));
  f.given.push_back(sub.add_option("--fallback", f.fallback, "linear fallback at trapped nodes (quadratic)"));
  f.given.push_back(sub.add_option("--rhs", f.rhs, "exact|sampled|calibrated|scaled1d"));
  f.given.push_back(sub.add_option("--level", f.level, "particle sampling level"));
  f.given.push_back(sub.add_option("--nodes", f.nodes, "nodes per axis (repeatable)")->expected(1, -1));
  f.given.push_back(sub.add_option("--solver", f.solver, "auto|dense|banded|cg|bicgstab"));
  f.given.push_back(sub.add_option("--tol", f.tol, "relative residual tolerance"));
  f.given.push_back(sub.add_option("--max-iterations", f.max_iterations, "iterative solver cap (0: automatic)"));
  f.given.push_back(sub.add_option("--out", f.out, "output directory"));
  f.given.push_back(sub.add_option("--format", f.format, "csv|json"));
  f.given.push_back(sub.add_option("--left", f.left, "case1d left interface"));
  f.given.push_back(sub.add_option("--right", f.right, "case1d right interface"));
  f.given.push_back(sub.add_flag("--verbose", f.verbose, "log solver iterations"));
}

Settings resolve(const Flags& f, const std::vector<int>& default_nodes) {
  const json doc = f.config.empty() ? json::object() : load_config(f.config);
  const auto pick = [&]<class T>(const char* flag, const char* key, const T& flag_value) -> T {
    if (f.was_given(flag)) return flag_value;
    return field<T>(doc, key, flag_value);
  };

  Settings s;
  ExperimentConfig& e = s.experiment;
  e.case_name = pick("--case", "case", f.case_name);
  const std::string scheme = pick("--scheme", "scheme", f.scheme);
  const bool fallback = pick("--fallback", "fallback", f.fallback);
  s.level = pick("--level", "level", f.level);
  s.level_given = f.was_given("--level") || doc.contains("level");
  e.scheme = parse_scheme(scheme, fallback);
  e.rhs = parse_rhs(pick("--rhs", "rhs", f.rhs), s.level);
  if (!f.was_given("--nodes") && doc.contains("nodes") && doc.at("nodes").is_number_integer()) {
    e.nodes = {doc.at("nodes").get<int>()};
  } else {
    e.nodes = pick("--nodes", "nodes", f.nodes);
  }
  if (e.nodes.empty()) e.nodes = default_nodes;
  e.solver.method = parse_method(pick("--solver", "solver", f.solver));
  e.solver.relative_residual_tolerance = pick("--tol", "tol", f.tol);
  e.solver.max_iterations = pick("--max-iterations", "max_iterations", f.max_iterations);
  e.solver.verbose = f.verbose;

  std::vector<double> interval{f.left, f.right};
  interval = field<std::vector<double>>(doc, "interval", interval);
  if (interval.size() != 2) throw UsageError("config 'interval' must hold two numbers");
  e.interval_left = f.was_given("--left") ? f.left : interval[0];
  e.interval_right = f.was_given("--right") ? f.right : interval[1];

  s.out = pick("--out", "out", f.out);
  s.format = pick("--format", "format", f.format);
  if (s.format != "csv" && s.format != "json") throw UsageError("format must be csv or json");
  s.resolution = pick("--resolution", "resolution", f.resolution);
  s.theta_step = pick("--theta-step", "theta_step", f.theta_step);
  s.dump_matrix = pick("--dump-matrix", "dump_matrix", f.dump_matrix);
  if (s.level < 1 || s.level > 20) throw UsageError("level must lie in 1..20");
  return s;
}

}  // namespace ebp::cli
