#include "wdd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace wdd::fft {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, Direction dir) {
    const auto key = std::make_pair(n, dir == Direction::Forward);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<fftw_complex> scratch(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch.data(), scratch.data(),
                                      dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void transform(std::span<std::complex<double>> data, Direction dir) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(n, dir), p, p);
}

void transform_strided(std::complex<double>* data, std::size_t n, std::ptrdiff_t stride,
                       Direction dir) {
  if (stride == 1) {
    transform({data, n}, dir);
    return;
  }
  std::vector<std::complex<double>> buf(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = data[static_cast<std::ptrdiff_t>(i) * stride];
  transform(buf, dir);
  for (std::size_t i = 0; i < n; ++i) data[static_cast<std::ptrdiff_t>(i) * stride] = buf[i];
}

}  // namespace wdd::fft
