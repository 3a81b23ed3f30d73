#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "sensorplace/encoding.hpp"
#include "sensorplace/error.hpp"

namespace sp = sensorplace;

namespace {

std::vector<bool> bits(std::initializer_list<int> v) {
  std::vector<bool> out;
  for (const int b : v) out.push_back(b != 0);
  return out;
}

}  // namespace

TEST(DecodeGene, WorkedExamples) {
  EXPECT_EQ(sp::decode_sensor_gene(17, 5), bits({1, 0, 0, 0, 1}));
  EXPECT_EQ(sp::decode_sensor_gene(12, 5), bits({0, 1, 1, 0, 0}));
  EXPECT_EQ(sp::decode_sensor_gene(0, 5), bits({0, 0, 0, 0, 0}));
  EXPECT_EQ(sp::decode_sensor_gene(5, 5), bits({0, 0, 1, 0, 1}));
}

TEST(DecodeGene, OutOfRange) {
  EXPECT_THROW(sp::decode_sensor_gene(32, 5), sp::EncodingError);
  EXPECT_NO_THROW(sp::decode_sensor_gene(31, 5));
}

TEST(EncodeGene, Examples) {
  EXPECT_EQ(sp::encode_sensor_gene(bits({1, 0, 0, 0, 1})), 17u);
  EXPECT_EQ(sp::encode_sensor_gene(bits({0, 0, 0, 0, 0})), 0u);
  EXPECT_EQ(sp::encode_sensor_gene(bits({1, 1, 1, 1, 1})), 31u);
  EXPECT_THROW(sp::encode_sensor_gene(std::vector<bool>(17, true)), sp::EncodingError);
}

TEST(EncodeGene, ExhaustiveRoundTrip) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
      const auto b = sp::decode_sensor_gene(v, n);
      ASSERT_EQ(b.size(), n);
      ASSERT_EQ(sp::encode_sensor_gene(b), v);
      ASSERT_EQ(sp::decode_sensor_gene(sp::encode_sensor_gene(b), n), b);
    }
  }
}

TEST(EncodeGene, SixteenDigitRoundTrip) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 2000; ++k) {
    std::vector<bool> b(16);
    for (std::size_t i = 0; i < 16; ++i) b[i] = rng() & 1;
    EXPECT_EQ(sp::decode_sensor_gene(sp::encode_sensor_gene(b), 16), b);
  }
  EXPECT_EQ(sp::max_sensor_gene(16), 65535u);
}

TEST(SensorBit, MostSignificantIsSensorOne) {
  EXPECT_EQ(sp::sensor_bit(0, 5), 16u);
  EXPECT_EQ(sp::sensor_bit(4, 5), 1u);
  EXPECT_EQ(sp::max_sensor_gene(5), 31u);
}

TEST(Decode, FigureExample) {
  sp::Genotype g;
  g.sensor_genes = {17, 12, 0, 5};
  g.angle_genes = {257, 0, 90, 90};
  const std::vector<sp::Placement> expected = {{0, 1, 257}, {0, 5, 257}, {1, 2, 0},
                                               {1, 3, 0},   {3, 3, 90},  {3, 5, 90}};
  EXPECT_EQ(sp::decode(g, 5), expected);
}

TEST(Decode, EmptyAndSingle) {
  EXPECT_TRUE(sp::decode(sp::Genotype(6), 5).empty());
  sp::Genotype one(1);
  one.sensor_genes = {1};
  EXPECT_EQ(sp::decode(one, 1), (std::vector<sp::Placement>{{0, 1, 0}}));
}

TEST(Decode, SizeIsPopcount) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto g = sp::sample_random(20, 5, rng);
    EXPECT_EQ(sp::decode(g, 5).size(), sp::deployed_count(g));
  }
}

TEST(Genotype, FlatPositions) {
  sp::Genotype g(3);
  g.set_gene(1, 7);
  g.set_gene(4, 200);
  EXPECT_EQ(g.sensor_genes[1], 7u);
  EXPECT_EQ(g.angle_genes[1], 200u);
  EXPECT_EQ(g.gene(4), 200u);
  EXPECT_TRUE(g.is_sensor_position(2));
  EXPECT_FALSE(g.is_sensor_position(3));
  EXPECT_EQ(g.size(), 6u);
}

TEST(Validate, Genotype) {
  sp::Genotype g(2);
  EXPECT_NO_THROW(sp::validate(g, 2, 5));
  EXPECT_THROW(sp::validate(g, 3, 5), sp::DimensionMismatch);
  g.sensor_genes[0] = 32;
  EXPECT_THROW(sp::validate(g, 2, 5), sp::EncodingError);
  g.sensor_genes[0] = 0;
  g.angle_genes[1] = 360;
  EXPECT_THROW(sp::validate(g, 2, 5), sp::EncodingError);
}

TEST(SampleRandom, InRangeAndDeterministic) {
  sp::Rng a(42), b(42);
  for (int k = 0; k < 50; ++k) {
    const auto g = sp::sample_random(30, 5, a);
    EXPECT_NO_THROW(sp::validate(g, 30, 5));
    EXPECT_EQ(g, sp::sample_random(30, 5, b));
  }
}

TEST(SampleRandom, UniformSensorGenes) {
  // Chi-square over 10^5 draws of a 32-valued gene; 31 degrees of freedom.
  sp::Rng rng(9);
  std::vector<double> counts(32, 0.0);
  const int n = 100000;
  const auto g = sp::sample_random(n, 5, rng);
  for (const auto v : g.sensor_genes) counts[v] += 1.0;
  const double expected = n / 32.0;
  double chi2 = 0.0;
  for (const double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const double dof = 31.0;
  EXPECT_LT(std::abs(chi2 - dof), 4.0 * std::sqrt(2.0 * dof));
}

TEST(SamplePowerOfTwo, AtMostOneSensorPerPoint) {
  sp::Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const auto g = sp::sample_power_of_two(40, 5, rng);
    for (const auto v : g.sensor_genes) EXPECT_LE(std::popcount(v), 1);
    EXPECT_NO_THROW(sp::validate(g, 40, 5));
  }
}

TEST(SamplePowerOfTwo, DegenerateZeroProbabilities) {
  sp::Rng rng(5);
  const auto empty = sp::sample_power_of_two(100, 5, rng, 1.0);
  for (const auto v : empty.sensor_genes) EXPECT_EQ(v, 0u);
  const auto full = sp::sample_power_of_two(1000, 5, rng, 0.0);
  std::map<std::uint32_t, int> seen;
  for (const auto v : full.sensor_genes) ++seen[v];
  EXPECT_EQ(seen.size(), 5u);
  for (const auto& [v, c] : seen) {
    EXPECT_TRUE(v == 1 || v == 2 || v == 4 || v == 8 || v == 16) << v;
  }
  EXPECT_THROW(sp::sample_power_of_two(3, 5, rng, 1.5), sp::ValidationError);
}

TEST(ClampRepair, Examples) {
  sp::Genotype g(2);
  g.sensor_genes = {32, 7};
  g.angle_genes = {365, 359};
  const auto r = sp::clamp_repair(g, 5);
  EXPECT_EQ(r.sensor_genes, (std::vector<std::uint32_t>{31, 7}));
  EXPECT_EQ(r.angle_genes, (std::vector<std::uint32_t>{5, 359}));
  EXPECT_EQ(sp::clamp_repair(r, 5), r);
}
