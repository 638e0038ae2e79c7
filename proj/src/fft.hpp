#pragma once

// Thin FFTW wrapper. Plans are cached per size and created with FFTW_ESTIMATE,
// which keeps the chosen algorithm (and therefore rounding) fixed run to run.

#include <vector>

#include "lplab/grid.hpp"

namespace lplab::detail {

enum class FftDirection { forward, backward };

/// In-place unnormalized 3D transform of an m^3 complex array.
/// forward uses exp(-i...), backward exp(+i...).
void fft3d(std::vector<Complex>& data, int m, FftDirection direction);

/// Smallest even integer >= target whose only prime factors are 2, 3 and 5.
int fft_friendly_size(int target);

}  // namespace lplab::detail
