// Acceptance suite: one PASS/FAIL line per criterion.
//
//   sensorplace_acceptance [--cli <path>] [--only N[,M...]] [--work <dir>]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "sensorplace/error.hpp"
#include "sensorplace/harness.hpp"
#include "sensorplace/io.hpp"
#include "sensorplace/render.hpp"

namespace fs = std::filesystem;
namespace sp = sensorplace;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

struct Context {
  std::string cli;
  fs::path work;
};

// 1 -------------------------------------------------------------------------
Outcome encoding_fidelity(const Context&) {
  Outcome o;
  const auto t0 = Clock::now();
  const std::pair<std::uint32_t, std::vector<bool>> cases[] = {
      {17, {1, 0, 0, 0, 1}}, {12, {0, 1, 1, 0, 0}}, {0, {0, 0, 0, 0, 0}}, {5, {0, 0, 1, 0, 1}}};
  for (const auto& [value, bits] : cases) {
    o.require(sp::decode_sensor_gene(value, 5) == bits,
              "decode " + std::to_string(value) + " mismatch");
  }
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
      const auto b = sp::decode_sensor_gene(v, n);
      o.require(sp::encode_sensor_gene(b) == v, "round trip failed at " + std::to_string(v));
      ++checked;
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = std::to_string(checked) + " round trips in " + std::to_string(secs) + " s";
  return o;
}

// 2 -------------------------------------------------------------------------
Outcome truth_table(const Context&) {
  Outcome o;
  const bool expected[2][2] = {{true, true}, {false, true}};  // [A][B]
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      o.require(sp::violation_output(a, b) == expected[a][b],
                "A=" + std::to_string(a) + " B=" + std::to_string(b));
    }
  }
  if (o.pass) o.detail = "4/4 rows";
  return o;
}

// 3 -------------------------------------------------------------------------
Outcome sigmoid_properties(const Context&) {
  Outcome o;
  for (const auto& s : sp::default_catalog().sensors) {
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 1000; ++k) {
      const double d = 3.0 * s.range_m * k / 999.0;
      const double p = sp::detection_probability(d, s.range_m, 10.5);
      o.require(p < prev, s.name + " not strictly decreasing at d=" + std::to_string(d));
      prev = p;
    }
    o.require(std::abs(sp::detection_probability(s.range_m, s.range_m, 10.5) - 0.5) <= 1e-12,
              s.name + " midpoint");
    o.require(sp::detection_probability(0.0, s.range_m, 10.5) >= 0.999, s.name + " at d=0");
  }
  if (o.pass) o.detail = "5 sensors x 1000-point grid";
  return o;
}

// 4 -------------------------------------------------------------------------
Outcome combination_properties(const Context&) {
  Outcome o;
  o.require(std::abs(sp::combined_detection(std::vector<double>{0.5, 0.5}) - 0.75) <= 1e-12,
            "[0.5,0.5]");
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    std::vector<double> p(1 + k % 8);
    for (auto& v : p) v = u(rng);
    const double base = sp::combined_detection(p);
    auto perm = p;
    std::shuffle(perm.begin(), perm.end(), rng);
    const double diff = std::abs(sp::combined_detection(perm) - base);
    worst = std::max(worst, diff);
    o.require(diff <= 1e-12, "permutation changed the result by " + std::to_string(diff));
    auto up = p;
    const std::size_t i = k % up.size();
    up[i] = up[i] + (1.0 - up[i]) * u(rng);
    o.require(sp::combined_detection(up) >= base, "not monotone in case " + std::to_string(k));
  }
  if (o.pass) {
    std::ostringstream d;
    d << "10000 cases, max permutation difference " << worst;
    o.detail = d.str();
  }
  return o;
}

// 5 -------------------------------------------------------------------------
Outcome oracle_equivalence(const Context&) {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t compared = 0;
  for (std::uint64_t sc = 0; sc < 20; ++sc) {
    const auto s = oracle::random_tiny_scenario(5000 + sc, 5, 4, 3);
    const sp::Problem problem(s);
    sp::Rng rng(sc);
    for (int k = 0; k < 50; ++k) {
      const auto g = sp::sample_random(s.num_sensor_points(), s.num_sensor_types(), rng);
      const auto expected = oracle::evaluate(g, s, {});
      o.require(problem.evaluate(g) == expected,
                "scenario " + std::to_string(sc) + " genotype " + std::to_string(k));
      ++compared;
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs < 10.0, "took " + std::to_string(secs) + " s");
  if (o.pass) {
    o.detail = std::to_string(compared) + " genotypes over 20 scenarios in " +
               std::to_string(secs) + " s";
  }
  return o;
}

// 6 -------------------------------------------------------------------------
Outcome ra_feasibility(const Context&) {
  Outcome o;
  const auto cat = sp::default_catalog();
  double slowest_small = 0.0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const bool small = seed <= 30;
    const auto family = small ? sp::ScenarioFamily::small : sp::ScenarioFamily::medium;
    const sp::Problem p(sp::generate_scenario(family, small ? seed : seed - 30, cat));
    sp::Rng rng(2023);
    const auto t0 = Clock::now();
    const auto g = sp::recursive_algorithm(p, rng);
    const double secs = seconds_since(t0);
    const auto report = p.evaluate(g);
    o.require(report.violation_count == 0,
              p.scenario().name + ": " + std::to_string(report.violation_count) + " violations");
    if (small) {
      slowest_small = std::max(slowest_small, secs);
      o.require(secs < 1.0, p.scenario().name + " took " + std::to_string(secs) + " s");
    }
  }
  if (o.pass) {
    o.detail = "30 small + 10 medium feasible; slowest small run " +
               std::to_string(slowest_small) + " s";
  }
  return o;
}

// 7 -------------------------------------------------------------------------
Outcome local_search_soundness(const Context&) {
  Outcome o;
  const sp::Problem p(sp::generate_scenario(sp::ScenarioFamily::small, 2023, sp::default_catalog()));
  sp::Rng rng(2023);
  const auto start = sp::recursive_algorithm(p, rng);
  const auto start_report = p.evaluate(start);
  sp::Budget budget{100'000, 0};
  double last = start_report.total_eur;
  std::size_t steps = 0;
  const auto end = sp::local_search(p, {start, start_report}, 1000, budget, rng,
                                    [&](const sp::FitnessReport& r) {
                                      o.require(r.total_eur <= last, "increase at step " +
                                                                         std::to_string(steps));
                                      last = r.total_eur;
                                      ++steps;
                                    });
  o.require(steps == 1000, "ran " + std::to_string(steps) + " steps");
  o.require(end.report == p.evaluate(end.genotype), "stale incumbent report");
  if (o.pass) {
    std::ostringstream d;
    d << "1000 steps, " << start_report.total_eur << " -> " << end.report.total_eur << " EUR";
    o.detail = d.str();
  }
  return o;
}

// 8 -------------------------------------------------------------------------
Outcome budget_honesty(const Context&) {
  Outcome o;
  const sp::Problem p(sp::generate_scenario(sp::ScenarioFamily::small, 2023, sp::default_catalog()));
  const sp::EAConfig config;
  const std::uint64_t expected =
      config.population_size + config.generations * (config.population_size -
                                                     sp::survivor_count(config));
  sp::Rng rng(2023);
  sp::Budget budget{100'000, 0};
  const std::uint64_t before = p.evaluation_calls();
  const auto r = sp::evolutionary_algorithm(p, config, budget, rng);
  const std::uint64_t counted = p.evaluation_calls() - before;
  o.require(expected == 100 + 1000 * 50, "expected count " + std::to_string(expected));
  o.require(r.evaluations == expected, "reported " + std::to_string(r.evaluations));
  o.require(counted == r.evaluations, "instrumented " + std::to_string(counted));
  o.require(r.evaluations <= 100'000, "over budget");
  if (o.pass) o.detail = "reported = instrumented = " + std::to_string(counted);
  return o;
}

// Mean best total per algorithm over `seeds`, one scenario.
std::vector<double> sweep_means(const sp::Problem& problem,
                                const std::vector<sp::AlgorithmSpec>& algorithms,
                                const std::vector<std::uint64_t>& seeds, std::uint64_t budget,
                                std::size_t& failures) {
  sp::ExperimentConfig c;
  c.algorithms = algorithms;
  c.seeds = seeds;
  c.budget = budget;
  const auto summary = sp::run_experiment(c, problem);
  std::vector<double> means;
  for (const auto& a : summary.per_algorithm) {
    means.push_back(a.stats.mean);
    failures += a.failed;
  }
  return means;
}

// 9 -------------------------------------------------------------------------
Outcome hybrid_benefit(const Context&) {
  Outcome o;
  const std::vector<sp::AlgorithmSpec> algs{sp::preset_algorithm("EA+RA"),
                                            sp::preset_algorithm("EA")};
  const auto seeds = sp::parse_seed_range("2023..2032");
  int wins = 0;
  std::size_t failures = 0;
  std::cout << "  scenario   mean_EA+RA   mean_EA\n";
  for (std::uint64_t sc = 1; sc <= 5; ++sc) {
    const sp::Problem p(sp::generate_scenario(sp::ScenarioFamily::large, sc, sp::default_catalog()));
    const auto means = sweep_means(p, algs, seeds, 20'000, failures);
    wins += means[0] < means[1];
    std::cout << "  " << p.scenario().name << "   " << sp::format_number(means[0]) << "   "
              << sp::format_number(means[1]) << "\n";
  }
  o.require(failures == 0, std::to_string(failures) + " failed runs");
  o.require(wins >= 4, "hybrid better in " + std::to_string(wins) + "/5 scenarios");
  if (o.pass) o.detail = "hybrid better in " + std::to_string(wins) + "/5 scenarios";
  return o;
}

// 10 ------------------------------------------------------------------------
Outcome grasp_ordering(const Context&) {
  Outcome o;
  // Both factors scaled by sqrt(0.2) keeps each I_GR:I_LS ratio and brings
  // I_GR*I_LS from 100,000 to about 20,000.
  const double f = std::sqrt(20'000.0 / 100'000.0);
  auto g1 = sp::preset_algorithm("GRASP_1");
  auto g2 = sp::preset_algorithm("GRASP_2");
  for (auto* a : {&g1, &g2}) {
    a->grasp.greedy_iterations = static_cast<std::uint64_t>(
        std::lround(f * static_cast<double>(a->grasp.greedy_iterations)));
    a->grasp.local_search_iterations = static_cast<std::uint64_t>(
        std::lround(f * static_cast<double>(a->grasp.local_search_iterations)));
  }
  std::cout << "  GRASP_1 " << g1.grasp.greedy_iterations << "x"
            << g1.grasp.local_search_iterations << ", GRASP_2 " << g2.grasp.greedy_iterations
            << "x" << g2.grasp.local_search_iterations << "\n";
  const auto seeds = sp::parse_seed_range("2023..2032");
  int wins = 0;
  std::size_t failures = 0;
  std::cout << "  scenario   mean_GRASP_1   mean_GRASP_2\n";
  for (std::uint64_t sc = 1; sc <= 3; ++sc) {
    const sp::Problem p(
        sp::generate_scenario(sp::ScenarioFamily::medium, sc, sp::default_catalog()));
    const auto means = sweep_means(p, {g1, g2}, seeds, 20'000, failures);
    wins += means[0] <= means[1];
    std::cout << "  " << p.scenario().name << "   " << sp::format_number(means[0]) << "   "
              << sp::format_number(means[1]) << "\n";
  }
  o.require(failures == 0, std::to_string(failures) + " failed runs");
  o.require(wins >= 2, "GRASP_1 not worse in " + std::to_string(wins) + "/3 scenarios");
  if (o.pass) o.detail = "GRASP_1 not worse in " + std::to_string(wins) + "/3 scenarios";
  return o;
}

// 11 ------------------------------------------------------------------------
Outcome determinism(const Context& ctx) {
  Outcome o;
  const fs::path a = ctx.work / "bench_a";
  const fs::path b = ctx.work / "bench_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const std::string args =
      " bench --scenario medium:2023 --algo RA,GRASP_1,EA,EA+RA --seeds 2023..2025 "
      "--budget 3000 --out ";
  if (!ctx.cli.empty()) {
    for (const auto& dir : {a, b}) {
      const std::string cmd = "\"" + ctx.cli + "\"" + args + "\"" + dir.string() + "\" >/dev/null";
      o.require(std::system(cmd.c_str()) == 0, "bench exited non-zero");
    }
  } else {
    sp::ExperimentConfig c;
    c.scenario = sp::parse_scenario_source("medium:2023");
    for (const char* n : {"RA", "GRASP_1", "EA", "EA+RA"}) {
      c.algorithms.push_back(sp::preset_algorithm(n));
    }
    c.seeds = sp::parse_seed_range("2023..2025");
    c.budget = 3000;
    for (const auto& dir : {a, b}) {
      c.output_dir = dir;
      sp::run_experiment(c);
    }
  }
  std::size_t compared = 0;
  if (o.pass) {
    for (const auto& entry : fs::directory_iterator(a)) {
      const auto ext = entry.path().extension();
      if (ext != ".csv" && ext != ".json") continue;
      const fs::path other = b / entry.path().filename();
      o.require(fs::exists(other) && sp::read_file(entry.path()) == sp::read_file(other),
                entry.path().filename().string() + " differs");
      ++compared;
    }
  }
  o.require(compared >= 14, "only " + std::to_string(compared) + " files compared");
  if (o.pass) {
    o.detail = std::to_string(compared) + " CSV/JSON files byte-identical" +
               (ctx.cli.empty() ? " (in-process)" : " (CLI)");
  }
  return o;
}

// 12 ------------------------------------------------------------------------
Outcome rendering_sanity(const Context&) {
  Outcome o;
  const auto s = sp::generate_scenario(sp::ScenarioFamily::small, 2023, sp::default_catalog());
  const sp::Problem p(s);
  // One wide-angle camera at the sensor point nearest the room center, facing up-right.
  std::size_t at = 0;
  double best = 1e9;
  for (std::size_t k = 0; k < s.num_sensor_points(); ++k) {
    const double d = sp::distance(s.sensor_points[k], {5.0, 5.0});
    if (d < best) best = d, at = k;
  }
  sp::Genotype g(s.num_sensor_points());
  g.sensor_genes[at] = sp::sensor_bit(0, s.num_sensor_types());
  g.angle_genes[at] = 45;
  const auto truth = sp::coverage_matrices(g, s, p.geometry(), p.options().detection).total;

  const std::string doc = sp::render_coverage(p, g, 0);
  const std::string err = svg::well_formedness_error(doc);
  o.require(err.empty(), "malformed SVG: " + err);
  std::vector<int> marked(s.num_surveillance_points(), -1);
  std::size_t covered = 0, wedges = 0;
  for (const auto& e : svg::elements(doc)) {
    wedges += e.has_class("wedge");
    if (!e.has_class("surv")) continue;
    const std::size_t j = std::stoul(e.attr("data-index"));
    marked[j] = e.has_class("covered") ? 1 : 0;
  }
  for (std::size_t j = 0; j < marked.size(); ++j) {
    o.require(marked[j] == truth(j, 0), "point " + std::to_string(j) + " marked " +
                                            std::to_string(marked[j]));
    covered += truth(j, 0);
  }
  o.require(wedges == 1, std::to_string(wedges) + " wedges");
  o.require(covered > 0 && covered < marked.size(), "trivial coverage");
  if (o.pass) {
    o.detail = std::to_string(covered) + " of " + std::to_string(marked.size()) +
               " points covered, all marked correctly";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  ctx.work = fs::temp_directory_path() / "sensorplace_acceptance";
  std::set<int> only;
  for (int k = 1; k < argc; ++k) {
    const std::string arg = argv[k];
    if (arg == "--cli" && k + 1 < argc) {
      ctx.cli = argv[++k];
    } else if (arg == "--work" && k + 1 < argc) {
      ctx.work = argv[++k];
    } else if (arg == "--only" && k + 1 < argc) {
      std::istringstream list(argv[++k]);
      std::string item;
      while (std::getline(list, item, ',')) only.insert(std::stoi(item));
    } else {
      std::cerr << "usage: " << argv[0] << " [--cli <path>] [--only N,...] [--work <dir>]\n";
      return 1;
    }
  }
  fs::create_directories(ctx.work);

  const std::vector<std::pair<std::string, std::function<Outcome(const Context&)>>> criteria{
      {"encoding fidelity", encoding_fidelity},
      {"truth-table fidelity", truth_table},
      {"sigmoid properties", sigmoid_properties},
      {"combination properties", combination_properties},
      {"fitness oracle equivalence", oracle_equivalence},
      {"RA feasibility", ra_feasibility},
      {"local-search soundness", local_search_soundness},
      {"budget honesty", budget_honesty},
      {"hybrid-initialization benefit", hybrid_benefit},
      {"GRASP ordering", grasp_ordering},
      {"determinism", determinism},
      {"rendering sanity", rendering_sanity},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[k].second(ctx);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1f", seconds_since(t0));
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << "  "
              << criteria[k].first << ": " << o.detail << " [" << secs << " s]" << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
