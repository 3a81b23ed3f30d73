#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sensorplace/encoding.hpp"
#include "sensorplace/problem.hpp"
#include "sensorplace/scenario.hpp"
#include "sensorplace/solvers.hpp"

namespace sensorplace {

/// Fill colors for security levels 0..3+ (green, yellow, orange, red).
inline constexpr const char* kSecurityColors[4] = {"#2e9e44", "#e8d21d", "#f08c1a", "#d7261e"};

/// Floor plan: walls, sensor points, and surveillance points colored by
/// security level. Every surveillance point is a `<circle>` with
/// `class="surv secN"` and `data-index="j"`.
std::string render_scenario(const Scenario& scenario);

/// Coverage of one sensor type (0-based) by `g`: points that need the type
/// are red, the rest blue; covered points carry the extra class `covered`,
/// and each deployed sensor of the type draws a `class="wedge"` path (or
/// circle, for omnidirectional sensors).
std::string render_coverage(const Problem& problem, const Genotype& g, std::size_t type0);

/// Cost against evaluations, one `<polyline class="series">` per trace with a
/// legend entry. The y axis is logarithmic when the values span more than two
/// decades. Throws ValidationError for an empty list.
std::string render_convergence(const std::vector<std::pair<std::string, Trace>>& traces);

}  // namespace sensorplace
