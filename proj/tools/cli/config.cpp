#include "config.hpp"

#include <fstream>
#include <random>
#include <set>

#include <bcdual/sampling.hpp>

namespace bcdual::cli {

namespace {

const std::set<std::string> kKeys = {"n",     "mu",     "nu",        "kappa", "model",  "q",          "p",
                                     "lambda", "theta", "seed",      "tmin",  "tmax",   "steps",      "method",
                                     "precision", "out", "direction", "compare_methods", "threads"};

template <class T>
T get(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

Vector get_vector(const nlohmann::json& j, const char* key) {
  const auto v = get<std::vector<double>>(j, key);
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

// Library errors raised while building config objects are the user's to fix.
template <class Fn>
auto as_config_error(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

void check_point(const std::optional<Vector>& v, const char* name, int n) {
  if (v && v->size() != n)
    throw ConfigError(std::string("point component '") + name + "' has length " + std::to_string(v->size()) +
                      ", expected n = " + std::to_string(n));
}

}  // namespace

Model parse_model(const std::string& s) {
  if (s == "sutherland") return Model::kSutherland;
  if (s == "rsvd") return Model::kRsvd;
  throw ConfigError("model must be 'sutherland' or 'rsvd', got '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "duality") return Method::kDuality;
  if (s == "ode") return Method::kOde;
  throw ConfigError("method must be 'duality' or 'ode', got '" + s + "'");
}

Direction parse_direction(const std::string& s) {
  if (s == "s2r") return Direction::kS2R;
  if (s == "r2s") return Direction::kR2S;
  throw ConfigError("direction must be 's2r' or 'r2s', got '" + s + "'");
}

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");

  RunConfig c;
  if (j.contains("n")) c.n = get<int>(j, "n");
  if (j.contains("mu")) c.mu = get<double>(j, "mu");
  if (j.contains("nu")) c.nu = get<double>(j, "nu");
  if (j.contains("kappa")) c.kappa = get<double>(j, "kappa");
  if (j.contains("model")) c.model = parse_model(get<std::string>(j, "model"));
  for (const char* k : {"q", "p", "lambda", "theta"}) {
    if (!j.contains(k)) continue;
    Vector v = get_vector(j, k);
    const std::string key = k;
    (key == "q" ? c.q : key == "p" ? c.p : key == "lambda" ? c.lambda : c.theta) = std::move(v);
  }
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("tmin")) c.tmin = get<double>(j, "tmin");
  if (j.contains("tmax")) c.tmax = get<double>(j, "tmax");
  if (j.contains("steps")) c.steps = get<int>(j, "steps");
  if (j.contains("method")) c.method = parse_method(get<std::string>(j, "method"));
  if (j.contains("precision")) c.precision = get<std::string>(j, "precision");
  if (j.contains("out")) c.out = get<std::string>(j, "out");
  if (j.contains("direction")) c.direction = parse_direction(get<std::string>(j, "direction"));
  if (j.contains("compare_methods")) c.compare_methods = get<bool>(j, "compare_methods");
  if (j.contains("threads")) c.threads = get<int>(j, "threads");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("n must be at least 1");
  couplings_of(cfg);
  precision_of(cfg);
  if (cfg.steps < 2) throw ConfigError("steps must be at least 2");
  if (!(cfg.tmin < cfg.tmax)) throw ConfigError("tmin must be below tmax");
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
  check_point(cfg.q, "q", cfg.n);
  check_point(cfg.p, "p", cfg.n);
  check_point(cfg.lambda, "lambda", cfg.n);
  check_point(cfg.theta, "theta", cfg.n);
  if (cfg.q.has_value() != cfg.p.has_value()) throw ConfigError("q and p must be given together");
  if (cfg.lambda.has_value() != cfg.theta.has_value()) throw ConfigError("lambda and theta must be given together");
}

Couplings couplings_of(const RunConfig& cfg) {
  return as_config_error([&] { return couplings_from_rsvd(cfg.mu, cfg.nu, cfg.kappa); });
}

mat::PrecisionConfig precision_of(const RunConfig& cfg) {
  return as_config_error([&] { return mat::PrecisionConfig::parse(cfg.precision); });
}

TimeGrid grid_of(const RunConfig& cfg) {
  return as_config_error([&] { return TimeGrid::uniform(cfg.tmin, cfg.tmax, cfg.steps); });
}

PhasePointS initial_S(const RunConfig& cfg) {
  return as_config_error([&] {
    if (cfg.q) return PhasePointS(*cfg.q, *cfg.p);
    std::mt19937_64 rng(cfg.seed);
    return sampling::random_point_S(rng, cfg.n);
  });
}

PhasePointR initial_R(const RunConfig& cfg) {
  return as_config_error([&] {
    if (cfg.lambda) return PhasePointR(*cfg.lambda, *cfg.theta);
    std::mt19937_64 rng(cfg.seed);
    return sampling::random_point_R(rng, cfg.n);
  });
}

}  // namespace bcdual::cli
