#pragma once

#include <span>
#include <vector>

#include "nmrenv/signal.hpp"

namespace nmrenv::fft {

enum class Direction { forward, backward };

/// Unnormalized in-place DFT of arbitrary length (FFTW, estimate-mode plans
/// so repeated runs are bit-identical). Safe to call from several threads.
void transform(std::span<Complex> data, Direction dir);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace nmrenv::fft
