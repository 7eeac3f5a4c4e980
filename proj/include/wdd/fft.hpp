#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace wdd::fft {

enum class Direction { Forward, Backward };

/// Unnormalized in-place transform of any length: exponent sign -1 for
/// Forward, +1 for Backward. Backed by FFTW with a process-wide plan cache;
/// safe to call from multiple threads.
void transform(std::span<std::complex<double>> data, Direction dir);

/// Same transform over `n` elements spaced `stride` apart (matrix columns).
void transform_strided(std::complex<double>* data, std::size_t n, std::ptrdiff_t stride,
                       Direction dir);

}  // namespace wdd::fft
