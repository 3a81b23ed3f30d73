#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sensorplace/encoding.hpp"
#include "sensorplace/fitness.hpp"
#include "sensorplace/scenario.hpp"

namespace sensorplace {

/// Scenario document:
///   { "name": ..., "surveillance_points": [[x,y],...], "sensor_points": [[x,y],...],
///     "walls": [[[ax,ay],[bx,by]],...], "requirements": [[0|1,...],...],
///     "sensors": [{"name","range_m","fov_deg","cost_eur"},...] }
/// Throws ParseError (syntax or field), DimensionMismatch or ValidationError.
Scenario load_scenario(std::string_view text);
std::string save_scenario(const Scenario& scenario);

/// { "sensor_genes": [...], "angle_genes": [...] }
Genotype load_genotype(std::string_view text);
std::string save_genotype(const Genotype& g);

std::string save_report(const FitnessReport& report);

std::string read_file(const std::filesystem::path& path);
/// Truncates and writes `contents`.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace sensorplace
