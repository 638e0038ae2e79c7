#pragma once

/// @file field_gen.hpp
/// @brief Deterministic synthetic fields: seeded divergence-free random fields
/// with prescribed spectra and the ABC / Taylor-Green flows.

#include <cstdint>
#include <utility>
#include <vector>

#include "lplab/field.hpp"

namespace lplab {

enum class SpectrumKind { power_law, band, shell_list };

struct SpectrumSpec {
  SpectrumKind kind = SpectrumKind::power_law;
  /// Amplitude envelope |xi|^-alpha (power_law only).
  double alpha = 2.0;
  /// Dyadic shells [band_min, band_max]; modes with 2^(band_min-1) < |xi| < 2^(band_max+1).
  int band_min = 0;
  int band_max = 0;
  /// Explicit shells for shell_list; the support is the union of their annuli.
  std::vector<int> shells;
  std::uint64_t seed = 0;
};

/// Counter-based standard normal draw keyed by (seed, stream, counter).
/// Independent of evaluation order.
double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// Per-mode complex Gaussian draws shaped by the envelope, Leray-projected,
/// Hermitian-symmetrized, mean-free and free of Nyquist-plane modes.
/// Throws InputError for an empty band or a band that misses the lattice.
SpectralVectorField random_divfree(const Grid& grid, const SpectrumSpec& spec);

/// Velocity / magnetic pair drawn from independent streams of one seed.
std::pair<SpectralVectorField, SpectralVectorField> random_pair(const Grid& grid,
                                                                const SpectrumSpec& spec);

enum class FlowKind { abc, taylor_green };

struct FlowParams {
  double a = 1.0;  // ABC: A, Taylor-Green: amplitude
  double b = 1.0;
  double c = 1.0;
};

/// ABC: (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x).
/// Taylor-Green: A (sin x cos y cos z, -cos x sin y cos z, 0).
/// Requires L = 2 pi q for a positive integer q.
SpectralVectorField named_flow(const Grid& grid, FlowKind kind, const FlowParams& params = {});

}  // namespace lplab
