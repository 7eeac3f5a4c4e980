#pragma once

#include <cstdint>

namespace wdd {

/// Counter-based generator: draw i of stream `seed` is splitmix64(seed, i).
/// Output depends only on (seed, counter), never on platform or library
/// version, so recorded seeds reproduce measurements bit for bit.
class CounterRng {
 public:
  static constexpr const char* kName = "splitmix64-counter/box-muller";

  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) noexcept
      : seed_(seed), counter_(counter) {}

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent child seed for a named sub-stream (signal, noise, mask, ...).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seed from system entropy, for callers that did not pass one.
std::uint64_t entropy_seed();

}  // namespace wdd
