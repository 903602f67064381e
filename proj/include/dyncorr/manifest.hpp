#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyncorr/tolerances.hpp"

namespace dyncorr {

// Reproducibility sidecar written by every CLI run: the command, every
// resolved parameter, the tolerance record, and a content hash per output.
struct RunManifest {
  std::string command;
  nlohmann::json parameters;
  std::vector<std::string> output_paths;
  std::vector<std::string> warnings;
};

// FNV-1a 64-bit over the file bytes.
std::uint64_t fnv1a64_file(const std::string& path);

std::string iso8601_utc_now();

nlohmann::json tolerances_to_json(const Tolerances& tol);

// Assembles the manifest JSON (hashing the outputs) and writes it.
void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace dyncorr
