#pragma once

/// @file acceptance.hpp
/// @brief Acceptance criteria of the laboratory and the `all-checks` sweep.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lplab/field_gen.hpp"
#include "lplab/report.hpp"

namespace lplab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Frozen calibration of the master-bound constant: C_base * product must
/// dominate sum_i |J_i|. Values come from `calibrate_master_constants` on
/// seeds disjoint from the acceptance seeds.
struct MasterBaseline {
  double linf = 0.0;
  double l3 = 0.0;
};
MasterBaseline frozen_master_baseline();
/// Largest j_sum / product over the given seeds and every in-range k.
MasterBaseline calibrate_master_constants(const std::vector<std::uint64_t>& seeds);

/// Power-law pair (alpha = 2) restricted to the four lowest shells of the profile.
SpectrumSpec suite_spectrum(const LPProfile& profile, std::uint64_t seed);

CriterionResult check_partition();
CriterionResult check_bernstein();
CriterionResult check_support();
/// Criteria 4 to 7 share one pass over the pair suite.
std::vector<CriterionResult> check_identity_suite();
CriterionResult check_tail_trend();
CriterionResult check_j_ladders();
CriterionResult check_conditions();
CriterionResult check_determinism();

std::vector<CriterionResult> run_acceptance();

struct AllChecksOptions {
  int n_per_dim = 32;
  double box_length = 0.0;
  std::vector<std::uint64_t> seeds;
  bool zero_fields = false;
  /// Explicit input pair; replaces the seeded fields when set.
  std::optional<SpectralVectorField> u;
  std::optional<SpectralVectorField> b;
  std::map<std::string, double> tolerances = default_tolerances();
};

struct AllChecksResult {
  Json report;
  bool passed = true;
};

/// Every per-field invariant (partition, Bernstein, support, vanishing,
/// decomposition, transport, energy, bound finiteness, conditions) over the
/// manifest's seeds. The report holds no timings, so equal options give
/// byte-identical output.
AllChecksResult run_all_checks(const AllChecksOptions& options);

}  // namespace lplab
