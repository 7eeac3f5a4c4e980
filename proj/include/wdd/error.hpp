#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wdd {

enum class ErrorKind {
  LengthMismatch,
  NonDivisor,
  NearZeroDenominator,
  InvalidParameter,
  NoConvergence,
  ZeroNorm,
  Parse,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base exception for everything the library throws. `stage()` is empty for
/// primitives and names the pipeline step when rethrown by a pipeline.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string stage = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Copy of this error tagged with a pipeline stage.
  Error with_stage(std::string stage) const;

 private:
  static std::string compose(ErrorKind kind, const std::string& message,
                             const std::string& stage);

  ErrorKind kind_;
  std::string detail_;
  std::string stage_;
};

class NearZeroDenominator : public Error {
 public:
  NearZeroDenominator(std::size_t index, double magnitude, double threshold,
                      const std::string& context = {});

  std::size_t index() const noexcept { return index_; }
  double magnitude() const noexcept { return magnitude_; }
  double threshold() const noexcept { return threshold_; }

 private:
  std::size_t index_;
  double magnitude_;
  double threshold_;
};

}  // namespace wdd
