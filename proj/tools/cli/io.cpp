#include "io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "config.hpp"

namespace bcdual::cli {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_header(Model model, int n) {
  const char* a = model == Model::kSutherland ? "q" : "lambda";
  const char* b = model == Model::kSutherland ? "p" : "theta";
  std::string h = "t";
  for (int k = 1; k <= n; ++k) h += "," + std::string(a) + std::to_string(k);
  for (int k = 1; k <= n; ++k) h += "," + std::string(b) + std::to_string(k);
  return h;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  if (!traj.has_momenta()) throw ConfigError("trajectory has no momenta to write");
  const std::string partial = path + ".partial";
  {
    std::ofstream out(partial, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + partial + "'");
    out << csv_header(traj.model, traj.n()) << '\n';
    for (int i = 0; i < traj.grid.size(); ++i) {
      out << format_number(traj.grid[i]);
      for (int a = 0; a < traj.n(); ++a) out << ',' << format_number(traj.positions(i, a));
      for (int a = 0; a < traj.n(); ++a) out << ',' << format_number(traj.momenta(i, a));
      out << '\n';
    }
    out.flush();
    if (!out) throw ConfigError("write to '" + partial + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(partial, path, ec);
  if (ec) throw ConfigError("cannot rename '" + partial + "' to '" + path + "': " + ec.message());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number_or_null(v(i)));
  return a;
}

Json to_json(const RealMatrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Vector(m.row(i).transpose())));
  return a;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace bcdual::cli
