#include "dyncorr/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "dyncorr/errors.hpp"
#include "dyncorr/version.hpp"

namespace dyncorr {

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("fnv1a64_file: cannot open " + path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  return hash;
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

nlohmann::json tolerances_to_json(const Tolerances& tol) {
  return nlohmann::json{{"hermiticity", tol.hermiticity},
                        {"trace_one", tol.trace_one},
                        {"psd_floor", tol.psd_floor},
                        {"unitarity", tol.unitarity},
                        {"kraus_completeness", tol.kraus_completeness},
                        {"eig_offdiag", tol.eig_offdiag},
                        {"eig_max_sweeps", tol.eig_max_sweeps},
                        {"eig_reconstruction", tol.eig_reconstruction},
                        {"choi_marginal", tol.choi_marginal},
                        {"purity", tol.purity},
                        {"uncorrelated_mi", tol.uncorrelated_mi},
                        {"reshuffle_unitarity", tol.reshuffle_unitarity},
                        {"ibar_clamp", tol.ibar_clamp},
                        {"ibar_violation", tol.ibar_violation},
                        {"rate_psd_floor", tol.rate_psd_floor},
                        {"trace_drift", tol.trace_drift},
                        {"trajectory_psd_floor", tol.trajectory_psd_floor}};
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& p : manifest.output_paths) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(p)));
    outputs.push_back({{"path", p}, {"fnv1a64", hash}});
  }
  const nlohmann::json doc = {{"command", manifest.command},
                              {"parameters", manifest.parameters},
                              {"tolerances", tolerances_to_json(Tolerances::active())},
                              {"outputs", outputs},
                              {"warnings", manifest.warnings},
                              {"tool", kToolName},
                              {"version", kToolVersion},
                              {"timestamp", iso8601_utc_now()}};
  std::ofstream out(path);
  if (!out) throw IoError("write_manifest: cannot open " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write_manifest: write failed for " + path);
}

}  // namespace dyncorr
