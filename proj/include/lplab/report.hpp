#pragma once

/// @file report.hpp
/// @brief Run manifests and JSON / CSV serialization of every report type.
///
/// JSON objects keep their keys sorted and doubles are written in shortest
/// round-trip form, so equal inputs give byte-identical files. Non-finite
/// values are written as the strings "inf", "-inf" or "nan".

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lplab/identity_lab.hpp"

namespace lplab {

inline constexpr const char* kArtifactVersion = "lplab-0.1.0";

using Json = nlohmann::json;

struct RunManifest {
  std::string command;
  int n_per_dim = 0;
  double box_length = 0.0;
  int k_min = 0;
  int k_max = 0;
  std::vector<std::uint64_t> seeds;
  std::map<std::string, double> tolerances;
  std::string artifact_version = kArtifactVersion;
};

/// Default thresholds for every checked invariant (all relative to `scale`
/// unless noted).
std::map<std::string, double> default_tolerances();

RunManifest make_manifest(const std::string& command, const LPProfile& profile,
                          std::vector<std::uint64_t> seeds,
                          std::map<std::string, double> tolerances = default_tolerances());

Json number(double v);

Json to_json(const RunManifest& m);
Json to_json(const TransportReport& r);
Json to_json(const ITermReport& r);
Json to_json(const IdentityReport& r);
Json to_json(const BoundReport& r);
Json to_json(const ConditionSeries& s);
Json to_json(const NormReport& r);
Json to_json(const BernsteinReport& r);
Json to_json(const SupportRecord& r);

/// {"manifest": ..., <key>: body}.
Json wrap_report(const RunManifest& manifest, const std::string& key, Json body);

std::string dump_json(const Json& j);
void write_text(const std::string& path, const std::string& text);

/// Comma-separated table; numbers use the same round-trip formatting as JSON.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<Json>>& rows);

}  // namespace lplab
