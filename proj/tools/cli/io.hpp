#pragma once

#include <string>

#include <bcdual/dynamics.hpp>

#include "json.hpp"

namespace bcdual::cli {

using Json = nlohmann::ordered_json;

// 17 significant digits, the CSV number format.
std::string format_number(double x);

std::string csv_header(Model model, int n);

// Writes to "<path>.partial" and renames on success, so an interrupted run
// never leaves a file under the final name.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

void write_text_file(const std::string& path, const std::string& text);

Json to_json(const Vector& v);
Json to_json(const RealMatrix& m);
Json number_or_null(double x);

std::string utc_timestamp();

}  // namespace bcdual::cli
