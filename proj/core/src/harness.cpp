#include "sensorplace/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"
#include "json_util.hpp"
#include "sensorplace/error.hpp"
#include "sensorplace/io.hpp"
#include "sensorplace/render.hpp"

namespace sensorplace {

using nlohmann::json;

SummaryStats summarize(std::span<const double> values) {
  SummaryStats s;
  s.count = values.size();
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (const double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

bool AlgorithmSpec::uses_construction() const {
  return kind != AlgorithmKind::evolutionary || ea.init_mode == InitMode::hybrid;
}

AlgorithmSpec preset_algorithm(std::string_view name) {
  AlgorithmSpec spec;
  spec.name = std::string(name);
  if (name == "RA") {
    spec.kind = AlgorithmKind::recursive;
  } else if (name == "GRASP_1") {
    spec.kind = AlgorithmKind::grasp;
    spec.grasp = {100, 1000};
  } else if (name == "GRASP_2") {
    spec.kind = AlgorithmKind::grasp;
    spec.grasp = {500, 200};
  } else if (name == "EA") {
    spec.kind = AlgorithmKind::evolutionary;
    spec.ea.init_mode = InitMode::random_only;
  } else if (name == "EA+RA") {
    spec.kind = AlgorithmKind::evolutionary;
    spec.ea.init_mode = InitMode::hybrid;
  } else {
    throw ValidationError("unknown algorithm '" + std::string(name) +
                          "' (expected RA, GRASP_1, GRASP_2, EA or EA+RA)");
  }
  return spec;
}

ScenarioSource parse_scenario_source(std::string_view text) {
  ScenarioSource src;
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view tag = text.substr(0, colon);
    if (tag == "small" || tag == "medium" || tag == "large") {
      src.family = parse_family(tag);
      const std::string_view num = text.substr(colon + 1);
      const auto res = std::from_chars(num.data(), num.data() + num.size(), src.seed);
      if (res.ec != std::errc{} || res.ptr != num.data() + num.size()) {
        throw ValidationError("bad scenario seed in '" + std::string(text) + "'");
      }
      return src;
    }
  }
  src.path = std::filesystem::path(std::string(text));
  return src;
}

Scenario materialize(const ScenarioSource& source, const SensorCatalog& catalog) {
  if (source.path) return load_scenario(read_file(*source.path));
  return generate_scenario(source.family, source.seed, catalog, source.generator);
}

std::vector<std::uint64_t> parse_seed_range(std::string_view text) {
  const auto parse = [&](std::string_view part) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc{} || res.ptr != part.data() + part.size() || part.empty()) {
      throw ValidationError("bad seed range '" + std::string(text) + "'");
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) return {parse(text)};
  const std::uint64_t a = parse(text.substr(0, dots));
  const std::uint64_t b = parse(text.substr(dots + 2));
  if (b < a) throw ValidationError("empty seed range '" + std::string(text) + "'");
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
  return seeds;
}

void validate(const ExperimentConfig& c) {
  if (c.algorithms.empty()) throw ValidationError("experiment needs at least one algorithm");
  if (c.seeds.empty()) throw ValidationError("experiment needs at least one seed");
  if (c.budget == 0) throw ValidationError("budget must be positive");
  validate(c.detection);
  if (!(std::isfinite(c.penalty_unit) && c.penalty_unit >= 0.0)) {
    throw ValidationError("penalty_unit must be non-negative");
  }
  for (const auto& a : c.algorithms) {
    switch (a.kind) {
      case AlgorithmKind::recursive:
        if (a.recursive_iterations < 1) throw ValidationError(a.name + ": iterations must be >= 1");
        break;
      case AlgorithmKind::grasp: validate(a.grasp); break;
      case AlgorithmKind::evolutionary: validate(a.ea); break;
    }
  }
}

namespace {

std::uint64_t unsigned_field(const json& obj, const std::string& key, const std::string& parent,
                             std::uint64_t fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_unsigned()) {
    const std::string field = detail::field_path(parent, key);
    throw ParseError(field + ": expected a non-negative integer", field);
  }
  return it->get<std::uint64_t>();
}

double number_field(const json& obj, const std::string& key, const std::string& parent,
                    double fallback) {
  return obj.contains(key) ? detail::number(obj, key, parent) : fallback;
}

AlgorithmSpec algorithm_from(const json& v, const std::string& field) {
  if (v.is_string()) return preset_algorithm(v.get<std::string>());
  if (!v.is_object()) throw ParseError(field + ": expected a name or an object", field);
  const std::string name =
      detail::require(v, "name", field, json::value_t::string).get<std::string>();
  AlgorithmSpec spec;
  spec.name = name;
  if (v.contains("kind")) {
    const std::string kind =
        detail::require(v, "kind", field, json::value_t::string).get<std::string>();
    if (kind == "RA") {
      spec.kind = AlgorithmKind::recursive;
    } else if (kind == "GRASP") {
      spec.kind = AlgorithmKind::grasp;
    } else if (kind == "EA") {
      spec.kind = AlgorithmKind::evolutionary;
    } else {
      throw ParseError(field + ".kind: expected RA, GRASP or EA", field + ".kind");
    }
  } else {
    spec = preset_algorithm(name);
  }

  spec.recursive_iterations = unsigned_field(v, "iterations", field, spec.recursive_iterations);
  spec.grasp.greedy_iterations =
      unsigned_field(v, "greedy_iterations", field, spec.grasp.greedy_iterations);
  spec.grasp.local_search_iterations =
      unsigned_field(v, "local_search_iterations", field, spec.grasp.local_search_iterations);

  EAConfig& ea = spec.ea;
  ea.population_size = unsigned_field(v, "population_size", field, ea.population_size);
  ea.generations = unsigned_field(v, "generations", field, ea.generations);
  ea.mutation_prob = number_field(v, "mutation_prob", field, ea.mutation_prob);
  ea.crossover_frac = number_field(v, "crossover_frac", field, ea.crossover_frac);
  ea.survival_frac = number_field(v, "survival_frac", field, ea.survival_frac);
  ea.zero_prob = number_field(v, "zero_prob", field, ea.zero_prob);
  ea.tournament_size = unsigned_field(v, "tournament_size", field, ea.tournament_size);
  if (v.contains("init_mode")) {
    const std::string mode =
        detail::require(v, "init_mode", field, json::value_t::string).get<std::string>();
    if (mode == "random_only") {
      ea.init_mode = InitMode::random_only;
    } else if (mode == "hybrid") {
      ea.init_mode = InitMode::hybrid;
    } else {
      throw ParseError(field + ".init_mode: expected random_only or hybrid",
                       field + ".init_mode");
    }
  }
  if (v.contains("init_mix")) {
    const json& mix = detail::require(v, "init_mix", field, json::value_t::array);
    if (mix.size() != 3 || !mix[0].is_number() || !mix[1].is_number() || !mix[2].is_number()) {
      throw ParseError(field + ".init_mix: expected [random, power_of_two, recursive]",
                       field + ".init_mix");
    }
    ea.init_mix = {mix[0].get<double>(), mix[1].get<double>(), mix[2].get<double>()};
  }
  return spec;
}

ScenarioSource scenario_from(const json& v) {
  if (v.is_string()) return parse_scenario_source(v.get<std::string>());
  if (!v.is_object()) throw ParseError("scenario: expected a string or an object", "scenario");
  ScenarioSource src;
  if (v.contains("path")) {
    src.path = detail::require(v, "path", "scenario", json::value_t::string).get<std::string>();
    return src;
  }
  src.family = parse_family(
      detail::require(v, "family", "scenario", json::value_t::string).get<std::string>());
  src.seed = unsigned_field(v, "seed", "scenario", src.seed);
  GeneratorOptions& gen = src.generator;
  if (v.contains("level_weights")) {
    const json& w = detail::require(v, "level_weights", "scenario", json::value_t::array);
    if (w.size() != 4) {
      throw ParseError("scenario.level_weights: expected 4 numbers", "scenario.level_weights");
    }
    for (std::size_t k = 0; k < 4; ++k) {
      if (!w[k].is_number()) {
        throw ParseError("scenario.level_weights: expected 4 numbers", "scenario.level_weights");
      }
      gen.level_weights[k] = w[k].get<double>();
    }
  }
  gen.sensor_stride = static_cast<int>(unsigned_field(v, "sensor_stride", "scenario",
                                                      static_cast<std::uint64_t>(gen.sensor_stride)));
  gen.max_carved_regions = static_cast<int>(unsigned_field(
      v, "max_carved_regions", "scenario", static_cast<std::uint64_t>(gen.max_carved_regions)));
  if (v.contains("wall_adjacent_sensors")) {
    gen.wall_adjacent_sensors =
        detail::require(v, "wall_adjacent_sensors", "scenario", json::value_t::boolean).get<bool>();
  }
  return src;
}

}  // namespace

ExperimentConfig load_experiment_config(std::string_view text) {
  const json doc = detail::parse_document(text);
  if (!doc.is_object()) throw ParseError("config document must be an object", "");
  ExperimentConfig c;
  if (!doc.contains("scenario")) throw ParseError("scenario: missing", "scenario");
  c.scenario = scenario_from(doc["scenario"]);

  const json& algs = detail::require(doc, "algorithms", "", json::value_t::array);
  for (std::size_t k = 0; k < algs.size(); ++k) {
    c.algorithms.push_back(algorithm_from(algs[k], "algorithms[" + std::to_string(k) + "]"));
  }

  if (doc.contains("seeds")) {
    const json& seeds = doc["seeds"];
    if (seeds.is_string()) {
      c.seeds = parse_seed_range(seeds.get<std::string>());
    } else if (seeds.is_array()) {
      for (std::size_t k = 0; k < seeds.size(); ++k) {
        if (!seeds[k].is_number_unsigned()) {
          const std::string field = "seeds[" + std::to_string(k) + "]";
          throw ParseError(field + ": expected a non-negative integer", field);
        }
        c.seeds.push_back(seeds[k].get<std::uint64_t>());
      }
    } else {
      throw ParseError("seeds: expected an array or \"a..b\"", "seeds");
    }
  } else {
    c.seeds = parse_seed_range("2023..2052");
  }

  c.budget = unsigned_field(doc, "budget", "", c.budget);
  if (doc.contains("detection")) {
    const json& d = detail::require(doc, "detection", "", json::value_t::object);
    c.detection.steepness = number_field(d, "steepness", "detection", c.detection.steepness);
    c.detection.threshold = number_field(d, "threshold", "detection", c.detection.threshold);
  }
  c.penalty_unit = number_field(doc, "penalty_unit", "", c.penalty_unit);
  if (doc.contains("penalty_mode")) {
    const std::string mode =
        detail::require(doc, "penalty_mode", "", json::value_t::string).get<std::string>();
    if (mode == "pair") {
      c.penalty_mode = PenaltyMode::per_pair;
    } else if (mode == "point") {
      c.penalty_mode = PenaltyMode::per_point;
    } else {
      throw ParseError("penalty_mode: expected pair or point", "penalty_mode");
    }
  }
  if (doc.contains("output_dir")) {
    c.output_dir = detail::require(doc, "output_dir", "", json::value_t::string).get<std::string>();
  }
  if (doc.contains("render")) {
    c.render = detail::require(doc, "render", "", json::value_t::boolean).get<bool>();
  }
  validate(c);
  return c;
}

RunRecord run_algorithm(const Problem& problem, const AlgorithmSpec& spec, std::uint64_t seed,
                        std::uint64_t budget_limit) {
  RunRecord rec;
  rec.algorithm = spec.name;
  rec.seed = seed;
  Rng rng(seed);
  Budget budget{budget_limit, 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    SolverResult result;
    switch (spec.kind) {
      case AlgorithmKind::recursive:
        result = recursive_multistart(problem, spec.recursive_iterations, budget, rng);
        break;
      case AlgorithmKind::grasp:
        result = grasp(problem, spec.grasp, budget, rng);
        break;
      case AlgorithmKind::evolutionary:
        result = evolutionary_algorithm(problem, spec.ea, budget, rng);
        break;
    }
    rec.ok = true;
    rec.best = std::move(result.best);
    rec.report = std::move(result.best_report);
    rec.trace = std::move(result.trace);
  } catch (const PartialResult& e) {
    rec.error = e.what();
    rec.best = e.best();
    rec.report = e.report();
  } catch (const Error& e) {
    rec.error = e.what();
  }
  rec.evaluations = budget.used;
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<AlgorithmSummary> aggregate(std::span<const RunRecord> runs) {
  std::vector<AlgorithmSummary> out;
  std::vector<std::vector<double>> totals;
  for (const RunRecord& r : runs) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const AlgorithmSummary& a) { return a.algorithm == r.algorithm; });
    if (it == out.end()) {
      out.push_back({r.algorithm, {}, 0});
      totals.emplace_back();
      it = out.end() - 1;
    }
    const auto k = static_cast<std::size_t>(it - out.begin());
    if (r.ok) {
      totals[k].push_back(r.report.total_eur);
    } else {
      ++it->failed;
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k].stats = summarize(totals[k]);
  return out;
}

ExperimentSummary run_experiment(const ExperimentConfig& config) {
  validate(config);
  const Problem problem(materialize(config.scenario), config.fitness_options());
  return run_experiment(config, problem);
}

ExperimentSummary run_experiment(const ExperimentConfig& config, const Problem& problem) {
  validate(config);
  const bool needs_construction =
      std::any_of(config.algorithms.begin(), config.algorithms.end(),
                  [](const AlgorithmSpec& a) { return a.uses_construction(); });
  if (needs_construction) {
    if (const auto bad = problem.first_uncoverable()) {
      throw InfeasibleScenario(bad->first, bad->second);
    }
  }

  ExperimentSummary summary;
  summary.scenario_name = problem.scenario().name;
  for (const AlgorithmSpec& spec : config.algorithms) {
    for (const std::uint64_t seed : config.seeds) {
      summary.runs.push_back(run_algorithm(problem, spec, seed, config.budget));
    }
  }
  summary.per_algorithm = aggregate(summary.runs);
  if (!config.output_dir.empty()) write_artifacts(config, problem, summary);
  return summary;
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string emit_summary_table(const ExperimentSummary& summary) {
  std::string out = "scenario,algorithm,runs,failed,min_eur,max_eur,mean_eur,std_eur\n";
  for (const AlgorithmSummary& a : summary.per_algorithm) {
    out += summary.scenario_name + "," + a.algorithm + "," + std::to_string(a.stats.count) +
           "," + std::to_string(a.failed) + "," + format_number(a.stats.min) + "," +
           format_number(a.stats.max) + "," + format_number(a.stats.mean) + "," +
           format_number(a.stats.std) + "\n";
  }
  return out;
}

std::string emit_trace_csv(const Trace& trace) {
  std::string out = "evals,best_eur,mean_eur\n";
  for (const TracePoint& t : trace) {
    out += std::to_string(t.evaluations) + "," + format_number(t.best_eur) + "," +
           format_number(t.mean_eur) + "\n";
  }
  return out;
}

Trace parse_trace_csv(std::string_view text) {
  Trace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "evals,best_eur,mean_eur") {
        throw ParseError("trace header must be evals,best_eur,mean_eur", 1, 1);
      }
      continue;
    }
    if (line.empty()) continue;
    TracePoint t;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto r1 = std::from_chars(p, end, t.evaluations);
    bool ok = r1.ec == std::errc{} && r1.ptr != end && *r1.ptr == ',';
    std::from_chars_result r2{};
    if (ok) {
      r2 = std::from_chars(r1.ptr + 1, end, t.best_eur);
      ok = r2.ec == std::errc{} && r2.ptr != end && *r2.ptr == ',';
    }
    if (ok) {
      const auto r3 = std::from_chars(r2.ptr + 1, end, t.mean_eur);
      ok = r3.ec == std::errc{} && r3.ptr == end;
    }
    if (!ok) throw ParseError("malformed trace row", line_no, 1);
    trace.push_back(t);
  }
  return trace;
}

std::string artifact_stem(std::string_view name) {
  std::string out;
  for (const char c : name) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
                      c == '+' || c == '.';
    out += keep ? c : '_';
  }
  return out;
}

std::string emit_runs_json(const ExperimentSummary& summary) {
  json runs = json::array();
  for (const RunRecord& r : summary.runs) {
    json rec = {{"algorithm", r.algorithm},
                {"seed", r.seed},
                {"status", r.ok ? "ok" : "failed"},
                {"evaluations", r.evaluations},
                {"trace", "trace_" + artifact_stem(r.algorithm) + "_" + std::to_string(r.seed) +
                              ".csv"}};
    if (!r.ok) rec["error"] = r.error;
    if (!r.best.sensor_genes.empty()) {
      rec["best_eur"] = r.report.total_eur;
      rec["deployment_cost_eur"] = r.report.deployment_cost_eur;
      rec["violation_count"] = r.report.violation_count;
      rec["sensor_counts"] = r.report.sensor_counts;
      rec["sensor_genes"] = r.best.sensor_genes;
      rec["angle_genes"] = r.best.angle_genes;
    }
    runs.push_back(std::move(rec));
  }
  json algs = json::array();
  for (const AlgorithmSummary& a : summary.per_algorithm) {
    algs.push_back({{"algorithm", a.algorithm},
                    {"runs", a.stats.count},
                    {"failed", a.failed},
                    {"min_eur", a.stats.min},
                    {"max_eur", a.stats.max},
                    {"mean_eur", a.stats.mean},
                    {"std_eur", a.stats.std}});
  }
  const json doc = {{"scenario", summary.scenario_name}, {"runs", runs}, {"summary", algs}};
  return doc.dump(2) + "\n";
}

void write_artifacts(const ExperimentConfig& config, const Problem& problem,
                     const ExperimentSummary& summary) {
  const auto& dir = config.output_dir;
  std::filesystem::create_directories(dir);
  write_file(dir / "scenario.json", save_scenario(problem.scenario()));
  write_file(dir / "summary.csv", emit_summary_table(summary));
  write_file(dir / "runs.json", emit_runs_json(summary));

  std::string timings = "algorithm seed wall_seconds\n";
  for (const RunRecord& r : summary.runs) {
    write_file(dir / ("trace_" + artifact_stem(r.algorithm) + "_" + std::to_string(r.seed) +
                      ".csv"),
               emit_trace_csv(r.trace));
    timings += r.algorithm + " " + std::to_string(r.seed) + " " + format_number(r.wall_seconds) +
               "\n";
  }
  write_file(dir / "timings.txt", timings);

  if (!config.render) return;
  // First successful run of each algorithm for the convergence plot; overall
  // best run for the coverage maps.
  std::vector<std::pair<std::string, Trace>> traces;
  const RunRecord* best = nullptr;
  for (const RunRecord& r : summary.runs) {
    if (!r.ok) continue;
    if (std::none_of(traces.begin(), traces.end(),
                     [&](const auto& t) { return t.first == r.algorithm; })) {
      traces.emplace_back(r.algorithm, r.trace);
    }
    if (!best || r.report.total_eur < best->report.total_eur) best = &r;
  }
  if (!traces.empty()) write_file(dir / "convergence.svg", render_convergence(traces));
  if (best) {
    for (std::size_t i = 0; i < problem.num_sensor_types(); ++i) {
      write_file(dir / ("coverage_" + std::to_string(i + 1) + ".svg"),
                 render_coverage(problem, best->best, i));
    }
  }
  write_file(dir / "scenario.svg", render_scenario(problem.scenario()));
}

}  // namespace sensorplace
