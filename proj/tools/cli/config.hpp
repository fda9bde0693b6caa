#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <bcdual/core.hpp>
#include <bcdual/dynamics.hpp>
#include <bcdual/matengine.hpp>

#include "json.hpp"

namespace bcdual::cli {

// Raised for anything the user can fix in the config or flags (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Direction { kS2R, kR2S };

struct RunConfig {
  int n = 2;
  double mu = -1.0;
  double nu = 2.0;
  double kappa = 0.5;
  Model model = Model::kSutherland;
  // Initial point; when absent a point is drawn from the reference sampler with seed.
  std::optional<Vector> q, p, lambda, theta;
  std::uint64_t seed = 1;
  double tmin = -5.0;
  double tmax = 5.0;
  int steps = 101;
  Method method = Method::kDuality;
  std::string precision = "double";
  std::string out;
  Direction direction = Direction::kS2R;
  bool compare_methods = false;
  int threads = 1;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
void validate(const RunConfig& cfg);

Couplings couplings_of(const RunConfig& cfg);
mat::PrecisionConfig precision_of(const RunConfig& cfg);
TimeGrid grid_of(const RunConfig& cfg);
PhasePointS initial_S(const RunConfig& cfg);
PhasePointR initial_R(const RunConfig& cfg);

Model parse_model(const std::string& s);
Method parse_method(const std::string& s);
Direction parse_direction(const std::string& s);

}  // namespace bcdual::cli
