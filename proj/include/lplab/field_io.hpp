#pragma once

/// @file field_io.hpp
/// @brief LPF1 binary field files.
///
/// Layout: the 8 bytes "LPFIELD1", a little-endian uint64 header length, a
/// UTF-8 JSON header {n_per_dim, box_length, kind: "scalar"|"vector3",
/// layout: "complex-interleaved-f64", order: "row-major-modes"}, then the
/// coefficients as little-endian float64 (re, im) pairs in flat FFT order,
/// component after component for vector fields.

#include <string>

#include "lplab/calculus.hpp"

namespace lplab {

void write_field(const std::string& path, const SpectralField& field);
void write_field(const std::string& path, const SpectralVectorField& field);

/// Throws InputError when the file is missing, truncated or malformed.
AnyField read_field(const std::string& path);
SpectralVectorField read_vector_field(const std::string& path);

}  // namespace lplab
