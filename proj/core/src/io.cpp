#include "sensorplace/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sensorplace/error.hpp"
#include "json_util.hpp"

namespace sensorplace {

using nlohmann::json;

namespace {

Point2D point_from(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ParseError(field + ": expected [x, y]", field);
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

json point_to(Point2D p) { return json::array({p.x, p.y}); }

std::vector<Point2D> points_from(const json& doc, const std::string& key) {
  const json& arr = detail::require(doc, key, "", json::value_t::array);
  std::vector<Point2D> out;
  out.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(point_from(arr[k], key + "[" + std::to_string(k) + "]"));
  }
  return out;
}

}  // namespace

Scenario load_scenario(std::string_view text) {
  const json doc = detail::parse_document(text);
  if (!doc.is_object()) throw ParseError("scenario document must be an object", "");

  Scenario s;
  s.name = detail::require(doc, "name", "", json::value_t::string).get<std::string>();
  s.surveillance_points = points_from(doc, "surveillance_points");
  s.sensor_points = points_from(doc, "sensor_points");

  const json& walls = detail::require(doc, "walls", "", json::value_t::array);
  for (std::size_t k = 0; k < walls.size(); ++k) {
    const std::string field = "walls[" + std::to_string(k) + "]";
    const json& w = walls[k];
    if (!w.is_array() || w.size() != 2) throw ParseError(field + ": expected [a, b]", field);
    s.walls.push_back({point_from(w[0], field + "[0]"), point_from(w[1], field + "[1]")});
  }

  const json& sensors = detail::require(doc, "sensors", "", json::value_t::array);
  for (std::size_t k = 0; k < sensors.size(); ++k) {
    const std::string field = "sensors[" + std::to_string(k) + "]";
    const json& e = sensors[k];
    if (!e.is_object()) throw ParseError(field + ": expected an object", field);
    SensorSpec spec{detail::require(e, "name", field, json::value_t::string).get<std::string>(),
                    detail::number(e, "range_m", field), detail::number(e, "fov_deg", field),
                    detail::number(e, "cost_eur", field)};
    try {
      validate(spec);
    } catch (const ValidationError& err) {
      throw ValidationError(field + ": " + err.what());
    }
    s.catalog.sensors.push_back(std::move(spec));
  }

  const json& req = detail::require(doc, "requirements", "", json::value_t::array);
  const std::size_t n_sen = s.catalog.size();
  if (req.size() != s.surveillance_points.size()) {
    throw DimensionMismatch("requirements has " + std::to_string(req.size()) +
                            " rows but there are " +
                            std::to_string(s.surveillance_points.size()) +
                            " surveillance points");
  }
  s.requirements = BoolMatrix(req.size(), n_sen, 0);
  for (std::size_t j = 0; j < req.size(); ++j) {
    const std::string field = "requirements[" + std::to_string(j) + "]";
    if (!req[j].is_array()) throw ParseError(field + ": expected an array", field);
    if (req[j].size() != n_sen) {
      throw DimensionMismatch(field + " has " + std::to_string(req[j].size()) +
                              " entries, expected " + std::to_string(n_sen));
    }
    for (std::size_t i = 0; i < n_sen; ++i) {
      const json& v = req[j][i];
      if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
        throw ParseError(field + ": entries must be 0 or 1", field);
      }
      s.requirements(j, i) = static_cast<std::uint8_t>(v.get<int>());
    }
  }
  validate(s);
  return s;
}

std::string save_scenario(const Scenario& s) {
  json doc = json::object();
  doc["name"] = s.name;
  json sensors = json::array();
  for (const auto& spec : s.catalog.sensors) {
    sensors.push_back({{"name", spec.name},
                       {"range_m", spec.range_m},
                       {"fov_deg", spec.fov_deg},
                       {"cost_eur", spec.cost_eur}});
  }
  doc["sensors"] = std::move(sensors);
  json surv = json::array();
  for (const auto& p : s.surveillance_points) surv.push_back(point_to(p));
  doc["surveillance_points"] = std::move(surv);
  json sp = json::array();
  for (const auto& p : s.sensor_points) sp.push_back(point_to(p));
  doc["sensor_points"] = std::move(sp);
  json walls = json::array();
  for (const auto& w : s.walls) walls.push_back(json::array({point_to(w.a), point_to(w.b)}));
  doc["walls"] = std::move(walls);
  json req = json::array();
  for (std::size_t j = 0; j < s.requirements.rows(); ++j) {
    json row = json::array();
    for (const auto v : s.requirements.row(j)) row.push_back(static_cast<int>(v));
    req.push_back(std::move(row));
  }
  doc["requirements"] = std::move(req);
  return doc.dump() + "\n";
}

Genotype load_genotype(std::string_view text) {
  const json doc = detail::parse_document(text);
  if (!doc.is_object()) throw ParseError("genotype document must be an object", "");
  Genotype g;
  for (const char* key : {"sensor_genes", "angle_genes"}) {
    const json& arr = detail::require(doc, key, "", json::value_t::array);
    auto& genes = std::string_view(key) == "sensor_genes" ? g.sensor_genes : g.angle_genes;
    for (std::size_t k = 0; k < arr.size(); ++k) {
      if (!arr[k].is_number_unsigned()) {
        const std::string field = std::string(key) + "[" + std::to_string(k) + "]";
        throw ParseError(field + ": expected a non-negative integer", field);
      }
      genes.push_back(arr[k].get<std::uint32_t>());
    }
  }
  if (g.sensor_genes.size() != g.angle_genes.size()) {
    throw DimensionMismatch("sensor_genes and angle_genes differ in length");
  }
  return g;
}

std::string save_genotype(const Genotype& g) {
  const json doc = {{"sensor_genes", g.sensor_genes}, {"angle_genes", g.angle_genes}};
  return doc.dump() + "\n";
}

std::string save_report(const FitnessReport& r) {
  const json doc = {{"deployment_cost_eur", r.deployment_cost_eur},
                    {"violation_count", r.violation_count},
                    {"penalty_eur", r.penalty_eur},
                    {"total_eur", r.total_eur},
                    {"sensor_counts", r.sensor_counts}};
  return doc.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace sensorplace
