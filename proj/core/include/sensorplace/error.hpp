#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace sensorplace {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bearing requested between coincident points.
class DegenerateBearing : public Error {
 public:
  using Error::Error;
};

/// Gene value outside the legal range of the encoding.
class EncodingError : public Error {
 public:
  using Error::Error;
};

/// Value that violates a domain invariant (sensor spec, config, genotype).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Array lengths that disagree with each other.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed document. Carries the 1-based line/column when the failure is
/// syntactic, or a field path (e.g. `sensors[2].fov_deg`) when it is semantic.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}
  ParseError(const std::string& what, std::string field)
      : Error(what), field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
  std::string field_;
};

/// A required (surveillance point, sensor type) pair that no sensor point can
/// cover. Indices are 0-based.
class InfeasibleScenario : public Error {
 public:
  InfeasibleScenario(std::size_t point, std::size_t sensor_type)
      : Error("surveillance point " + std::to_string(point) +
              " cannot be covered by sensor type " +
              std::to_string(sensor_type + 1)),
        point_(point),
        sensor_type_(sensor_type) {}

  std::size_t point() const { return point_; }
  std::size_t sensor_type() const { return sensor_type_; }

 private:
  std::size_t point_;
  std::size_t sensor_type_;
};

}  // namespace sensorplace
