#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sensorplace {

/// Random engine used by every stochastic operation. One seeded stream per run.
using Rng = std::mt19937_64;

inline constexpr int kAngleSteps = 360;

/// Integer encoding of a deployment: one sensor bitmask and one orientation
/// (degrees, 0 = up, clockwise) per sensor point.
struct Genotype {
  std::vector<std::uint32_t> sensor_genes;
  std::vector<std::uint32_t> angle_genes;

  Genotype() = default;
  explicit Genotype(std::size_t n_sp) : sensor_genes(n_sp, 0), angle_genes(n_sp, 0) {}

  std::size_t num_sensor_points() const { return sensor_genes.size(); }
  /// Length of the flat 2*N_sp vector; positions [0, N_sp) are sensor genes.
  std::size_t size() const { return sensor_genes.size() + angle_genes.size(); }

  std::uint32_t gene(std::size_t pos) const;
  void set_gene(std::size_t pos, std::uint32_t value);
  bool is_sensor_position(std::size_t pos) const { return pos < sensor_genes.size(); }

  friend bool operator==(const Genotype&, const Genotype&) = default;
};

/// One decoded sensor. `sensor_type` is 1-based (catalog order); the point
/// index is 0-based.
struct Placement {
  std::size_t sensor_point = 0;
  std::size_t sensor_type = 0;
  std::uint32_t orientation_deg = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Largest legal sensor gene: 2^n_sen - 1.
std::uint32_t max_sensor_gene(std::size_t n_sen);

/// Bit of sensor type `type0` (0-based) inside a gene. Sensor 1 is the most
/// significant of the n_sen digits.
inline std::uint32_t sensor_bit(std::size_t type0, std::size_t n_sen) {
  return std::uint32_t{1} << (n_sen - 1 - type0);
}

/// n_sen-digit binary expansion, element 0 = sensor 1. Throws EncodingError
/// for values above 2^n_sen - 1.
std::vector<bool> decode_sensor_gene(std::uint32_t value, std::size_t n_sen);
/// Inverse of decode_sensor_gene. At most 16 digits.
std::uint32_t encode_sensor_gene(const std::vector<bool>& bits);

/// Throws EncodingError / DimensionMismatch when `g` is not a legal genotype
/// for (n_sp, n_sen).
void validate(const Genotype& g, std::size_t n_sp, std::size_t n_sen);

/// Placements ordered by sensor point, then sensor type.
std::vector<Placement> decode(const Genotype& g, std::size_t n_sen);

/// Sensor genes uniform on [0, 2^n_sen - 1], angle genes uniform on [0, 359].
Genotype sample_random(std::size_t n_sp, std::size_t n_sen, Rng& rng);

/// Sensor genes are 0 with probability `zero_prob`, otherwise a single
/// uniformly chosen sensor bit. Angle genes uniform.
Genotype sample_power_of_two(std::size_t n_sp, std::size_t n_sen, Rng& rng,
                             double zero_prob = 0.5);

/// Clamps sensor genes to [0, 2^n_sen - 1] and wraps angle genes mod 360.
Genotype clamp_repair(Genotype g, std::size_t n_sen);

/// Number of deployed sensors (total popcount of the sensor genes).
std::size_t deployed_count(const Genotype& g);

}  // namespace sensorplace
