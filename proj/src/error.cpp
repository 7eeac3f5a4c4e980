#include "wdd/error.hpp"

#include <sstream>

namespace wdd {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NonDivisor: return "NonDivisor";
    case ErrorKind::NearZeroDenominator: return "NearZeroDenominator";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string stage)
    : std::runtime_error(compose(kind, message, stage)),
      kind_(kind),
      detail_(message),
      stage_(std::move(stage)) {}

Error Error::with_stage(std::string stage) const {
  return Error(kind_, detail_, std::move(stage));
}

std::string Error::compose(ErrorKind kind, const std::string& message,
                           const std::string& stage) {
  std::ostringstream os;
  if (!stage.empty()) os << '[' << stage << "] ";
  os << to_string(kind) << ": " << message;
  return os.str();
}

namespace {
std::string denominator_message(std::size_t index, double magnitude, double threshold,
                                const std::string& context) {
  std::ostringstream os;
  os.precision(6);
  os << "denominator at index " << index << " has magnitude " << magnitude
     << " below threshold " << threshold;
  if (!context.empty()) os << " (" << context << ')';
  return os.str();
}
}  // namespace

NearZeroDenominator::NearZeroDenominator(std::size_t index, double magnitude,
                                         double threshold, const std::string& context)
    : Error(ErrorKind::NearZeroDenominator,
            denominator_message(index, magnitude, threshold, context)),
      index_(index),
      magnitude_(magnitude),
      threshold_(threshold) {}

}  // namespace wdd
