#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dkbench {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (edge lists, config files). Carries the 1-based line.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line_no)
      : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  std::size_t line;
};

// A metric has no defined value on this graph (e.g. assortativity of a
// regular graph). Batch paths report these as nulls with the reason code.
struct UndefinedMetricError : Error {
  UndefinedMetricError(const std::string& msg, std::string reason_code)
      : Error(msg), reason(std::move(reason_code)) {}
  std::string reason;
};

struct ParamError : Error {
  using Error::Error;
};

// A generator exhausted its budget without reaching the requested tolerances.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, std::int64_t jdd_l1, double cspec_l1)
      : Error(msg), jdd_distance(jdd_l1), cspec_distance(cspec_l1) {}
  std::int64_t jdd_distance;
  double cspec_distance;
};

struct SamplingError : Error {
  using Error::Error;
};

struct TrainingError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace dkbench
