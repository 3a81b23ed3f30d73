#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracle.hpp"
#include "sensorplace/error.hpp"
#include "sensorplace/fitness.hpp"
#include "sensorplace/problem.hpp"
#include "sensorplace/scenario_generator.hpp"

namespace sp = sensorplace;

namespace {

// Logistic written through tanh, independent of the library's exp form.
double logistic_ref(double d, double max_dist, double k) {
  return 0.5 * (1.0 - std::tanh(0.5 * k * (d / max_dist - 1.0)));
}

sp::Scenario layout(std::vector<sp::Point2D> sensors, std::vector<sp::Point2D> points,
                    std::vector<sp::WallSegment> walls = {}) {
  sp::Scenario s;
  s.name = "layout";
  s.sensor_points = std::move(sensors);
  s.surveillance_points = std::move(points);
  s.walls = std::move(walls);
  s.catalog = sp::default_catalog();
  s.requirements = sp::BoolMatrix(s.surveillance_points.size(), s.catalog.size(), 0);
  return s;
}

constexpr std::size_t kWide = 0;
constexpr std::size_t kSmoke = 4;

}  // namespace

TEST(DetectionProbability, ReferenceValues) {
  EXPECT_NEAR(sp::detection_probability(0.0, 30.0, 10.5), logistic_ref(0, 30, 10.5), 1e-15);
  EXPECT_NEAR(sp::detection_probability(0.0, 30.0, 10.5), 0.9999725, 1e-7);
  EXPECT_NEAR(sp::detection_probability(60.0, 30.0, 10.5), 2.75e-5, 1e-7);
  EXPECT_NEAR(sp::detection_probability(60.0, 30.0, 10.5), logistic_ref(60, 30, 10.5), 1e-15);
  for (const double range : {4.0, 5.0, 18.0, 30.0, 60.0}) {
    EXPECT_NEAR(sp::detection_probability(range, range, 10.5), 0.5, 1e-12);
  }
}

TEST(DetectionProbability, StrictlyDecreasingAndBounded) {
  for (const auto& s : sp::default_catalog().sensors) {
    double prev = 2.0;
    for (int k = 0; k <= 1000; ++k) {
      const double d = 3.0 * s.range_m * k / 1000.0;
      const double p = sp::detection_probability(d, s.range_m, 10.5);
      EXPECT_LT(p, prev);
      EXPECT_GT(p, 0.0);
      EXPECT_LT(p, 1.0);
      prev = p;
    }
  }
}

TEST(DetectionProbability, SaturatesWithoutError) {
  EXPECT_EQ(sp::detection_probability(1e6, 1.0, 10.5), 0.0);
  EXPECT_GE(sp::detection_probability(0.0, 1.0, 1e4), 0.0);
  EXPECT_FALSE(std::isnan(sp::detection_probability(1e308, 1e-300, 10.5)));
}

TEST(CombinedDetection, Examples) {
  EXPECT_NEAR(sp::combined_detection(std::vector<double>{0.5, 0.5}), 0.75, 1e-12);
  EXPECT_DOUBLE_EQ(sp::combined_detection(std::vector<double>{0.37}), 0.37);
  EXPECT_EQ(sp::combined_detection(std::vector<double>{}), 0.0);
  EXPECT_EQ(sp::combined_detection(std::vector<double>{1.0, 0.0}), 1.0);
}

TEST(CombinedDetection, PermutationInvariantAndMonotone) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    std::vector<double> p(1 + k % 6);
    for (auto& v : p) v = u(rng);
    const double base = sp::combined_detection(p);
    auto q = p;
    std::shuffle(q.begin(), q.end(), rng);
    EXPECT_NEAR(sp::combined_detection(q), base, 1e-12);
    auto r = p;
    r[k % r.size()] = std::min(1.0, r[k % r.size()] + u(rng) * 0.1);
    EXPECT_GE(sp::combined_detection(r), base - 1e-15);
  }
}

TEST(AngleCovered, Examples) {
  EXPECT_TRUE(sp::angle_covered(0, 180, 90));
  EXPECT_TRUE(sp::angle_covered(350, 40, 5));
  EXPECT_TRUE(sp::angle_covered(0, 360, 123.4));
  EXPECT_TRUE(sp::angle_covered(0, 360, 180));
  EXPECT_FALSE(sp::angle_covered(0, 30, 90));
  EXPECT_FALSE(sp::angle_covered(0, 180, 90.0000001));
}

TEST(ViolationOutput, TruthTable) {
  EXPECT_TRUE(sp::violation_output(false, false));
  EXPECT_TRUE(sp::violation_output(false, true));
  EXPECT_FALSE(sp::violation_output(true, false));
  EXPECT_TRUE(sp::violation_output(true, true));
}

TEST(DetectionParams, Validation) {
  EXPECT_NO_THROW(sp::validate(sp::DetectionParams{}));
  EXPECT_THROW(sp::validate(sp::DetectionParams{0.0, 0.5}), sp::ValidationError);
  EXPECT_THROW(sp::validate(sp::DetectionParams{10.5, 0.0}), sp::ValidationError);
  EXPECT_THROW(sp::validate(sp::DetectionParams{10.5, 1.0}), sp::ValidationError);
}

TEST(CoverageMatrices, EmptyGenotypeIsAllZero) {
  const auto s = sp::generate_scenario(sp::ScenarioFamily::small, 1, sp::default_catalog());
  const auto geo = sp::build_geometry(s);
  const auto m = sp::coverage_matrices(sp::Genotype(s.num_sensor_points()), s, geo, {});
  for (const auto* mat : {&m.angle, &m.distance, &m.vision, &m.total}) {
    for (const auto v : mat->values()) EXPECT_EQ(v, 0);
  }
}

TEST(CoverageMatrices, WideCameraAtFiveMeters) {
  auto s = layout({{0, 0}}, {{0, 5}});
  sp::Genotype g(1);
  g.sensor_genes[0] = sp::sensor_bit(kWide, 5);
  g.angle_genes[0] = 0;
  auto m = sp::coverage_matrices(g, s, sp::build_geometry(s), {});
  EXPECT_EQ(m.total(0, kWide), 1);
  EXPECT_NEAR(m.detection(0, kWide), logistic_ref(5, 30, 10.5), 1e-12);
  EXPECT_NEAR(m.detection(0, kWide), 0.99984, 2e-5);

  s.walls = {{{-1, 2}, {1, 2}}};
  m = sp::coverage_matrices(g, s, sp::build_geometry(s), {});
  EXPECT_EQ(m.vision(0, kWide), 0);
  EXPECT_EQ(m.total(0, kWide), 0);
}

TEST(CoverageMatrices, TotalIsProductOfFactors) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = sp::generate_scenario(sp::ScenarioFamily::small, seed, sp::default_catalog());
    const auto geo = sp::build_geometry(s);
    sp::Rng rng(seed);
    const auto g = sp::sample_power_of_two(s.num_sensor_points(), 5, rng);
    const auto m = sp::coverage_matrices(g, s, geo, {});
    for (std::size_t k = 0; k < m.total.values().size(); ++k) {
      const auto t = m.total.values()[k];
      EXPECT_LE(t, std::min({m.angle.values()[k], m.distance.values()[k], m.vision.values()[k]}));
      if (t) EXPECT_GE(m.detection.values()[k], 0.5);
    }
  }
}

TEST(CoverageMatrices, DimensionMismatch) {
  const auto s = layout({{0, 0}}, {{0, 5}});
  EXPECT_THROW(sp::coverage_matrices(sp::Genotype(2), s, sp::build_geometry(s), {}),
               sp::DimensionMismatch);
}

TEST(Evaluate, NoRequirementsCostsNothing) {
  const auto s = layout({{0, 0}}, {{0, 5}});
  const auto r = sp::evaluate(sp::Genotype(1), s, sp::build_geometry(s), {});
  EXPECT_EQ(r.total_eur, 0.0);
  EXPECT_TRUE(r.feasible());
}

TEST(Evaluate, OneUnmetPairCostsOnePenalty) {
  auto s = layout({{0, 0}}, {{0, 5}});
  s.requirements(0, kSmoke) = 1;
  const auto r = sp::evaluate(sp::Genotype(1), s, sp::build_geometry(s), {});
  EXPECT_EQ(r.violation_count, 1u);
  EXPECT_EQ(r.total_eur, 1'000'000.0);
  EXPECT_FALSE(r.feasible());
}

TEST(Evaluate, TwoWideCamerasAndOneSmokeDetector) {
  auto s = layout({{0, 0}, {10, 0}, {20, 0}}, {{0, 5}, {10, 5}, {20, 1}});
  s.requirements(0, kWide) = 1;
  s.requirements(1, kWide) = 1;
  s.requirements(2, kSmoke) = 1;
  sp::Genotype g(3);
  g.sensor_genes = {sp::sensor_bit(kWide, 5), sp::sensor_bit(kWide, 5), sp::sensor_bit(kSmoke, 5)};
  const auto r = sp::evaluate(g, s, sp::build_geometry(s), {});
  EXPECT_EQ(r.violation_count, 0u);
  EXPECT_EQ(r.deployment_cost_eur, 90.0);
  EXPECT_EQ(r.total_eur, 90.0);
  EXPECT_EQ(r.sensor_counts, (std::vector<std::size_t>{2, 0, 0, 0, 1}));
}

TEST(Evaluate, PenaltyModes) {
  auto s = layout({{0, 0}}, {{0, 5}, {3, 3}});
  s.requirements(0, 0) = s.requirements(0, 1) = s.requirements(1, 2) = 1;
  const auto geo = sp::build_geometry(s);
  sp::FitnessOptions pair_opts, point_opts;
  point_opts.penalty_mode = sp::PenaltyMode::per_point;
  EXPECT_EQ(sp::evaluate(sp::Genotype(1), s, geo, pair_opts).violation_count, 3u);
  EXPECT_EQ(sp::evaluate(sp::Genotype(1), s, geo, point_opts).violation_count, 2u);
}

TEST(Evaluate, ReportInvariants) {
  const auto s = sp::generate_scenario(sp::ScenarioFamily::small, 3, sp::default_catalog());
  const sp::Problem p(s);
  sp::Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    const auto r = p.evaluate(sp::sample_random(s.num_sensor_points(), 5, rng));
    EXPECT_EQ(r.penalty_eur, static_cast<double>(r.violation_count) * 1e6);
    EXPECT_EQ(r.total_eur, r.deployment_cost_eur + r.penalty_eur);
  }
}

TEST(Evaluate, RemovingPlacementNeverHelps) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = oracle::random_tiny_scenario(seed, 5, 4, 3);
    const auto geo = sp::build_geometry(s);
    sp::Rng rng(seed);
    const std::size_t n_sen = s.num_sensor_types();
    for (int k = 0; k < 30; ++k) {
      const auto g = sp::sample_random(s.num_sensor_points(), n_sen, rng);
      const auto full = sp::evaluate(g, s, geo, {});
      for (std::size_t j = 0; j < g.sensor_genes.size(); ++j) {
        for (std::size_t i = 0; i < n_sen; ++i) {
          if (!(g.sensor_genes[j] & sp::sensor_bit(i, n_sen))) continue;
          auto h = g;
          h.sensor_genes[j] &= ~sp::sensor_bit(i, n_sen);
          const auto less = sp::evaluate(h, s, geo, {});
          EXPECT_LE(less.deployment_cost_eur, full.deployment_cost_eur);
          EXPECT_GE(less.violation_count, full.violation_count);
        }
      }
    }
  }
}

TEST(Evaluate, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto s = oracle::random_tiny_scenario(seed, 5, 4, 3);
    const auto geo = sp::build_geometry(s);
    const sp::Problem problem(s);
    sp::Rng rng(seed);
    for (int k = 0; k < 50; ++k) {
      const auto g = sp::sample_random(s.num_sensor_points(), s.num_sensor_types(), rng);
      const auto expected = oracle::evaluate(g, s, {});
      EXPECT_EQ(sp::evaluate(g, s, geo, {}), expected) << "seed " << seed << " draw " << k;
      EXPECT_EQ(problem.evaluate(g), expected) << "seed " << seed << " draw " << k;
    }
  }
}

TEST(Problem, MatchesDensePathOnGeneratedScenarios) {
  for (const auto f : {sp::ScenarioFamily::small, sp::ScenarioFamily::medium}) {
    const auto s = sp::generate_scenario(f, 21, sp::default_catalog());
    const sp::Problem p(s);
    sp::Rng rng(2);
    for (int k = 0; k < 20; ++k) {
      const auto g = k % 2 ? sp::sample_random(s.num_sensor_points(), 5, rng)
                           : sp::sample_power_of_two(s.num_sensor_points(), 5, rng);
      EXPECT_EQ(p.evaluate(g), sp::evaluate(g, s, p.geometry(), p.options()));
      const auto dense = sp::coverage_matrices(g, s, p.geometry(), p.options().detection);
      EXPECT_EQ(p.coverage(g), dense.total);
      const auto miss = p.miss_products(g);
      for (const auto flat : p.required_pairs()) {
        const std::size_t j = flat / 5, i = flat % 5;
        EXPECT_EQ(1.0 - miss[flat], dense.detection(j, i));
      }
    }
  }
}

TEST(Problem, CountsEvaluations) {
  const auto s = layout({{0, 0}}, {{0, 5}});
  const sp::Problem p(s);
  for (int k = 0; k < 7; ++k) p.evaluate(sp::Genotype(1));
  EXPECT_EQ(p.evaluation_calls(), 7u);
}

TEST(Problem, CandidatesAndInfeasibility) {
  auto s = layout({{0, 0}, {0, 20}}, {{0, 3}});
  s.requirements(0, kSmoke) = 1;
  const sp::Problem ok(s);
  EXPECT_EQ(ok.candidates(0, kSmoke).size(), 1u);
  EXPECT_EQ(ok.candidates(0, kSmoke)[0], 0u);
  EXPECT_FALSE(ok.first_uncoverable().has_value());

  s.surveillance_points[0] = {10, 10};
  const sp::Problem bad(s);
  ASSERT_TRUE(bad.first_uncoverable().has_value());
  EXPECT_EQ(*bad.first_uncoverable(), (std::pair<std::size_t, std::size_t>{0, kSmoke}));
}
