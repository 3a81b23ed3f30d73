#include "sensorplace/encoding.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "sensorplace/error.hpp"

namespace sensorplace {

std::uint32_t Genotype::gene(std::size_t pos) const {
  return pos < sensor_genes.size() ? sensor_genes[pos]
                                   : angle_genes[pos - sensor_genes.size()];
}

void Genotype::set_gene(std::size_t pos, std::uint32_t value) {
  if (pos < sensor_genes.size()) {
    sensor_genes[pos] = value;
  } else {
    angle_genes[pos - sensor_genes.size()] = value;
  }
}

std::uint32_t max_sensor_gene(std::size_t n_sen) {
  if (n_sen < 1 || n_sen > 16) throw EncodingError("n_sen must be in [1, 16]");
  return (std::uint32_t{1} << n_sen) - 1;
}

std::vector<bool> decode_sensor_gene(std::uint32_t value, std::size_t n_sen) {
  if (value > max_sensor_gene(n_sen)) {
    throw EncodingError("sensor gene " + std::to_string(value) + " exceeds 2^" +
                        std::to_string(n_sen) + " - 1");
  }
  std::vector<bool> bits(n_sen);
  for (std::size_t i = 0; i < n_sen; ++i) bits[i] = (value & sensor_bit(i, n_sen)) != 0;
  return bits;
}

std::uint32_t encode_sensor_gene(const std::vector<bool>& bits) {
  if (bits.size() > 16) throw EncodingError("at most 16 sensor digits");
  std::uint32_t value = 0;
  for (const bool b : bits) value = (value << 1) | (b ? 1u : 0u);
  return value;
}

void validate(const Genotype& g, std::size_t n_sp, std::size_t n_sen) {
  if (g.sensor_genes.size() != n_sp || g.angle_genes.size() != n_sp) {
    throw DimensionMismatch("genotype has " + std::to_string(g.sensor_genes.size()) +
                            "/" + std::to_string(g.angle_genes.size()) +
                            " genes, expected " + std::to_string(n_sp));
  }
  const std::uint32_t top = max_sensor_gene(n_sen);
  for (std::size_t j = 0; j < n_sp; ++j) {
    if (g.sensor_genes[j] > top) {
      throw EncodingError("sensor gene " + std::to_string(j) + " out of range");
    }
    if (g.angle_genes[j] >= kAngleSteps) {
      throw EncodingError("angle gene " + std::to_string(j) + " out of range");
    }
  }
}

std::vector<Placement> decode(const Genotype& g, std::size_t n_sen) {
  std::vector<Placement> out;
  for (std::size_t j = 0; j < g.sensor_genes.size(); ++j) {
    const std::uint32_t gene = g.sensor_genes[j];
    if (gene == 0) continue;
    for (std::size_t i = 0; i < n_sen; ++i) {
      if (gene & sensor_bit(i, n_sen)) out.push_back({j, i + 1, g.angle_genes[j]});
    }
  }
  return out;
}

Genotype sample_random(std::size_t n_sp, std::size_t n_sen, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> sensor(0, max_sensor_gene(n_sen));
  std::uniform_int_distribution<std::uint32_t> angle(0, kAngleSteps - 1);
  Genotype g(n_sp);
  for (auto& v : g.sensor_genes) v = sensor(rng);
  for (auto& v : g.angle_genes) v = angle(rng);
  return g;
}

Genotype sample_power_of_two(std::size_t n_sp, std::size_t n_sen, Rng& rng,
                             double zero_prob) {
  if (!(zero_prob >= 0.0 && zero_prob <= 1.0)) {
    throw ValidationError("zero_prob must be in [0, 1]");
  }
  max_sensor_gene(n_sen);  // range check
  std::bernoulli_distribution empty(zero_prob);
  std::uniform_int_distribution<std::uint32_t> shift(0, static_cast<std::uint32_t>(n_sen - 1));
  std::uniform_int_distribution<std::uint32_t> angle(0, kAngleSteps - 1);
  Genotype g(n_sp);
  for (auto& v : g.sensor_genes) v = empty(rng) ? 0u : (std::uint32_t{1} << shift(rng));
  for (auto& v : g.angle_genes) v = angle(rng);
  return g;
}

Genotype clamp_repair(Genotype g, std::size_t n_sen) {
  const std::uint32_t top = max_sensor_gene(n_sen);
  for (auto& v : g.sensor_genes) v = std::min(v, top);
  for (auto& v : g.angle_genes) v %= kAngleSteps;
  return g;
}

std::size_t deployed_count(const Genotype& g) {
  std::size_t n = 0;
  for (const auto v : g.sensor_genes) n += static_cast<std::size_t>(std::popcount(v));
  return n;
}

}  // namespace sensorplace
