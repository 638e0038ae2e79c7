#pragma once

// Physical-space samples on a padded lattice, shared by the trilinear
// quadrature and the identity lab's per-shell cache.

#include <array>
#include <vector>

#include "lplab/field.hpp"

namespace lplab::detail {

struct PhysicalVector {
  bool zero = true;
  std::array<std::vector<double>, 3> comp;
};

/// grad[3*i + j] holds d_j b_i.
struct PhysicalGradient {
  bool zero = true;
  std::array<std::vector<double>, 9> comp;
};

/// Two real fields through one complex inverse FFT: returns {f, g} sampled on m^3.
std::array<std::vector<double>, 2> sample_pair(const SpectralField& f, const SpectralField& g,
                                               int m);

PhysicalVector sample_vector(const SpectralVectorField& v, int m);
PhysicalGradient sample_gradient(const SpectralVectorField& b, int m);

/// cell_volume * sum_x sum_ij a_j d_j b_i c_i.
double trilinear_sum(const PhysicalVector& a, const PhysicalGradient& grad_b,
                     const PhysicalVector& c, double cell_volume);

}  // namespace lplab::detail
