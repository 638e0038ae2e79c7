#include "lplab/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>

namespace lplab {

namespace {

double smooth_h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

void require_profile_grid(const LPProfile& profile, const Grid& grid, const char* what) {
  if (!(profile.grid() == grid)) {
    throw InputError(std::string(what) + ": field grid does not match the LP profile");
  }
}

}  // namespace

double psi_profile(double r) {
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  const double t = 2.0 * (1.0 - r);
  const double a = smooth_h(t);
  const double b = smooth_h(1.0 - t);
  return a / (a + b);
}

int floor_three_quarters(int k) {
  const int num = 3 * k;
  return num >= 0 ? num / 4 : -((-num + 3) / 4);
}

LPProfile::LPProfile(Grid grid) : grid_(grid) {
  const std::size_t count = grid_.size();
  // Distinct |m|^2 values present on the lattice.
  const int half = grid_.n() / 2;
  std::vector<bool> present(static_cast<std::size_t>(3 * half * half + 1), false);
  for (std::size_t idx = 1; idx < count; ++idx) {
    const auto m = grid_.modes_at(idx);
    present[static_cast<std::size_t>(m[0] * m[0] + m[1] * m[1] + m[2] * m[2])] = true;
  }
  const double h = grid_.freq_spacing();
  auto phi_nonzero = [&](int k) {
    for (std::size_t m2 = 1; m2 < present.size(); ++m2) {
      if (!present[m2]) continue;
      const double xi = h * std::sqrt(static_cast<double>(m2));
      if (psi_profile(std::ldexp(xi, -(k + 1))) - psi_profile(std::ldexp(xi, -k)) != 0.0) {
        return true;
      }
    }
    return false;
  };
  const double xi_min = h;
  const double xi_max = h * std::sqrt(3.0) * half;
  const int lo = static_cast<int>(std::floor(std::log2(xi_min))) - 3;
  const int hi = static_cast<int>(std::ceil(std::log2(xi_max))) + 3;
  bool found = false;
  for (int k = lo; k <= hi; ++k) {
    if (!phi_nonzero(k)) continue;
    if (!found) k_min_ = k;
    k_max_ = k;
    found = true;
  }
  if (!found) throw InputError("lp profile: grid too small to host any dyadic annulus");

  zeros_.assign(count, 0.0);
  ones_.assign(count, 1.0);
  ones_[0] = 0.0;
  for (int k = k_min_; k <= k_max_ + 1; ++k) {
    std::vector<double> w(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
      w[idx] = psi_profile(std::ldexp(grid_.wavenumber(idx), -k));
    }
    w[0] = 0.0;
    psi_.push_back(std::move(w));
  }
}

std::span<const double> LPProfile::psi(int k) const {
  if (k < k_min_) return zeros_;
  if (k > k_max_ + 1) return ones_;
  return psi_[static_cast<std::size_t>(k - k_min_)];
}

std::vector<double> LPProfile::phi(int k) const {
  const auto upper = psi(k + 1);
  const auto lower = psi(k);
  std::vector<double> out(upper.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = upper[i] - lower[i];
  return out;
}

std::vector<double> LPProfile::phi_tilde(int k) const {
  std::vector<double> out(grid_.size(), 0.0);
  for (int l = k - 2; l <= k + 2; ++l) {
    const auto w = phi(l);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w[i];
  }
  return out;
}

std::vector<double> LPProfile::block_weights(int k, BlockWidth width) const {
  return width == BlockWidth::standard ? phi(k) : phi_tilde(k);
}

LPProfile build_lp_profile(const Grid& grid) { return LPProfile(grid); }

SpectralField apply_multiplier(const SpectralField& f, std::span<const double> weights) {
  if (weights.size() != f.grid().size()) {
    throw InputError("apply_multiplier: weight count does not match grid");
  }
  std::vector<Complex> out(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= weights[i];
  return SpectralField(f.grid(), std::move(out));
}

SpectralVectorField apply_multiplier(const SpectralVectorField& f,
                                     std::span<const double> weights) {
  return SpectralVectorField(apply_multiplier(f[0], weights), apply_multiplier(f[1], weights),
                             apply_multiplier(f[2], weights));
}

SpectralField dyadic_block(const LPProfile& profile, const SpectralField& f, int k,
                           BlockWidth width) {
  require_profile_grid(profile, f.grid(), "dyadic_block");
  return apply_multiplier(f, profile.block_weights(k, width));
}

SpectralVectorField dyadic_block(const LPProfile& profile, const SpectralVectorField& f, int k,
                                 BlockWidth width) {
  require_profile_grid(profile, f.grid(), "dyadic_block");
  return apply_multiplier(f, profile.block_weights(k, width));
}

SpectralField low_pass(const LPProfile& profile, const SpectralField& f, int k) {
  require_profile_grid(profile, f.grid(), "low_pass");
  return apply_multiplier(f, profile.psi(k));
}

SpectralVectorField low_pass(const LPProfile& profile, const SpectralVectorField& f, int k) {
  require_profile_grid(profile, f.grid(), "low_pass");
  return apply_multiplier(f, profile.psi(k));
}

SpectralField high_pass(const LPProfile& profile, const SpectralField& f, int k) {
  warn_if_mean(f, "high_pass");
  return f - low_pass(profile, f, k);
}

SpectralVectorField high_pass(const LPProfile& profile, const SpectralVectorField& f, int k) {
  warn_if_mean(f, "high_pass");
  return f - low_pass(profile, f, k);
}

SpectralVectorField DyadicDecomposition::sum() const {
  if (blocks.empty()) throw InputError("decomposition: no blocks");
  SpectralVectorField total(blocks.begin()->second.grid());
  for (const auto& [k, block] : blocks) total += block;
  return total;
}

DyadicDecomposition decompose(const LPProfile& profile, const SpectralVectorField& f) {
  DyadicDecomposition out;
  out.k_min = profile.k_min();
  out.k_max = profile.k_max();
  out.source_mean_zero = !warn_if_mean(f, "decompose");
  for (int k = out.k_min; k <= out.k_max; ++k) out.blocks.emplace(k, dyadic_block(profile, f, k));
  return out;
}

SupportRange fourier_support(const SpectralField& f) {
  SupportRange out;
  const Grid& g = f.grid();
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    if (f[idx] == Complex{}) continue;
    const double k = g.wavenumber(idx);
    if (out.empty) {
      out.min = out.max = k;
      out.empty = false;
    } else {
      out.min = std::min(out.min, k);
      out.max = std::max(out.max, k);
    }
  }
  return out;
}

SupportRange fourier_support(const SpectralVectorField& f) {
  SupportRange out;
  for (int d = 0; d < 3; ++d) {
    const auto r = fourier_support(f[d]);
    if (r.empty) continue;
    if (out.empty) {
      out = r;
    } else {
      out.min = std::min(out.min, r.min);
      out.max = std::max(out.max, r.max);
    }
  }
  return out;
}

}  // namespace lplab
