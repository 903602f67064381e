#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyncorr/channel_io.hpp"
#include "dyncorr/correlation.hpp"
#include "dyncorr/errors.hpp"
#include "dyncorr/experiments.hpp"
#include "dyncorr/manifest.hpp"
#include "dyncorr/selftest.hpp"
#include "dyncorr/version.hpp"

namespace {

using namespace dyncorr;

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "cannot parse '" + item + "' as a number");
    }
    if (pos != item.size())
      throw CLI::ValidationError(flag, "cannot parse '" + item + "' as a number");
    out.push_back(value);
  }
  if (out.empty()) throw CLI::ValidationError(flag, "expected a nonempty list of numbers");
  return out;
}

bool tolerance_profile_valid() {
  const char* profile = std::getenv("DYNCORR_TOLERANCE_PROFILE");
  if (!profile) return true;
  const std::string p(profile);
  return p == "default" || p == "strict";
}

std::string manifest_path(const std::string& out_dir, const std::string& command) {
  std::string name = command;
  for (char& c : name)
    if (c == '-') c = '_';
  return out_dir + "/" + name + "_manifest.json";
}

int cmd_measure(const std::string& channel_path, const std::string& dims_flag,
                const std::string& out_dir) {
  ChannelFile file = [&] {
    try {
      return load_channel_file(channel_path);
    } catch (const IoError& e) {
      std::cerr << "error: " << e.what() << '\n';
      std::exit(2);
    } catch (const FormatError& e) {
      std::cerr << "error: " << e.what() << '\n';
      std::exit(2);
    } catch (const DimensionMismatch& e) {
      std::cerr << "error: " << e.what() << '\n';
      std::exit(4);
    } catch (const Error& e) {  // CPT validation
      std::cerr << "error: " << e.what() << '\n';
      std::exit(3);
    }
  }();

  if (!dims_flag.empty()) {
    const std::vector<double> dims = parse_double_list(dims_flag, "--dims");
    if (dims.size() != 2 || dims[0] != file.d_A || dims[1] != file.d_B) {
      std::cerr << "error: --dims disagrees with the channel file ([" << file.d_A << ", "
                << file.d_B << "])\n";
      return 4;
    }
  }

  try {
    const ChoiState choi = choi_state(file.channel, file.d_A, file.d_B);
    const CorrelationReport rep = i_bar(choi);
    const nlohmann::json doc = {{"i_bar", rep.i_bar},
                                {"mutual_information_nats", rep.mutual_information},
                                {"entropy_AA_nats", rep.entropy_AA},
                                {"entropy_BB_nats", rep.entropy_BB},
                                {"entropy_total_nats", rep.entropy_total},
                                {"p_error", error_probability(choi)},
                                {"d", rep.d}};
    std::cout << doc.dump(2) << '\n';

    RunManifest manifest;
    manifest.command = "measure";
    manifest.parameters = {{"channel_file", channel_path},
                           {"dims", {file.d_A, file.d_B}},
                           {"out_dir", out_dir}};
    write_manifest(manifest, manifest_path(out_dir, "measure"));
    return 0;
  } catch (const AsymmetricDimensions& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}

int cmd_verify_unitary(const std::string& channel_path, const std::string& out_dir) {
  ChannelFile file = [&] {
    try {
      return load_channel_file(channel_path);
    } catch (const IoError& e) {
      std::cerr << "error: " << e.what() << '\n';
      std::exit(2);
    } catch (const FormatError& e) {
      std::cerr << "error: " << e.what() << '\n';
      std::exit(2);
    } catch (const DimensionMismatch& e) {
      std::cerr << "error: " << e.what() << '\n';
      std::exit(4);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      std::exit(3);
    }
  }();

  if (!file.channel.is_unitary()) {
    std::cerr << "error: maximal correlation is defined for unitary channels only\n";
    return 3;
  }
  if (file.d_A != file.d_B) {
    std::cerr << "error: verify-unitary requires d_A = d_B\n";
    return 4;
  }
  const int d = file.d_A;
  const ComplexMatrix& u = file.channel.unitary_matrix();

  const double defect = reshuffle_unitarity_defect(u, d);
  const bool maximal = is_maximally_correlated(u, d);
  const double value = i_bar(choi_state(file.channel, d, d)).i_bar;
  const nlohmann::json doc = {{"maximally_correlated", maximal},
                              {"i_bar", value},
                              {"reshuffle_unitarity_defect", defect}};
  std::cout << doc.dump(2) << '\n';

  RunManifest manifest;
  manifest.command = "verify-unitary";
  manifest.parameters = {{"channel_file", channel_path}, {"dims", {d, d}}, {"out_dir", out_dir}};
  write_manifest(manifest, manifest_path(out_dir, "verify-unitary"));
  return maximal ? 0 : 10;
}

int cmd_two_atom(const std::string& r_flag, double t_min, double t_max, int t_points,
                 double theta, double omega, double dipole, const std::string& out_dir,
                 int workers) {
  const std::vector<double> r_values = parse_double_list(r_flag, "--r");
  if (t_points < 2 || t_min <= 0.0 || t_max <= t_min)
    throw CLI::ValidationError("--t-points/--t-min/--t-max", "invalid time grid");

  TwoAtomParams params;
  params.omega = omega;
  params.dipole_norm = dipole;
  params.theta = theta;
  const std::vector<double> grid = log_spaced(t_min, t_max, t_points);

  try {
    const DistanceSweepResult result = distance_sweep(r_values, grid, params,
                                                      EvolutionConfig{}, workers);
    const std::string trace_path = out_dir + "/two_atom_trace.csv";
    const std::string peaks_path = out_dir + "/two_atom_peaks.csv";
    write_csv(result.trace, trace_path);
    write_csv(result.peaks, peaks_path);

    RunManifest manifest;
    manifest.command = "two-atom";
    manifest.parameters = {{"r", r_values},
                           {"t_min_gamma0", t_min},
                           {"t_max_gamma0", t_max},
                           {"t_points", t_points},
                           {"theta", theta},
                           {"omega", omega},
                           {"dipole", dipole},
                           {"gamma0", params.gamma0()},
                           {"workers", workers},
                           {"out_dir", out_dir}};
    manifest.output_paths = {trace_path, peaks_path};
    manifest.warnings = result.warnings;
    write_manifest(manifest, manifest_path(out_dir, "two-atom"));
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    return 0;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: integration failed: " << e.what() << '\n';
    return 5;
  }
}

int cmd_zz_thermal(double j_coupling, double gamma0, const std::string& targets_flag,
                   const std::string& t_list_flag, double t_min, double t_max, int t_count,
                   const std::string& bracket_flag, int coarse_points,
                   const std::string& out_dir, int workers) {
  const std::vector<double> targets = parse_double_list(targets_flag, "--target-p-error");
  for (double target : targets)
    if (!(target > 0.0 && target < 1.0))
      throw CLI::ValidationError("--target-p-error", "targets must lie in (0, 1)");

  std::vector<double> temperatures;
  if (!t_list_flag.empty()) {
    temperatures = parse_double_list(t_list_flag, "--T");
  } else {
    if (t_count < 2 || t_min <= 0.0 || t_max <= t_min)
      throw CLI::ValidationError("--T-min/--T-max/--T-points", "invalid temperature grid");
    temperatures = log_spaced(t_min, t_max, t_count);
  }

  const std::vector<double> bracket_g0 = parse_double_list(bracket_flag, "--t-bracket");
  if (bracket_g0.size() != 2 || bracket_g0[0] <= 0.0 || bracket_g0[1] <= bracket_g0[0])
    throw CLI::ValidationError("--t-bracket", "expected lo,hi with 0 < lo < hi");

  ZZThermalParams params;
  params.J = j_coupling;
  params.gamma0 = gamma0;
  const std::pair<double, double> bracket{bracket_g0[0] / gamma0, bracket_g0[1] / gamma0};

  try {
    const MultiIsolineResult result = isoline_search_multi(
        params, targets, temperatures, bracket, EvolutionConfig{}, workers, coarse_points);

    // one isoline file with a leading target column
    std::vector<SweepRecord> merged;
    for (size_t k = 0; k < targets.size(); ++k)
      for (const SweepRecord& rec : result.isolines[k]) {
        SweepRecord row = rec;
        row.parameters.insert(row.parameters.begin(), {"p_target", targets[k]});
        merged.push_back(std::move(row));
      }
    const std::string isoline_path = out_dir + "/zz_thermal_isolines.csv";
    const std::string grid_path = out_dir + "/zz_thermal_p_error_grid.csv";
    write_csv(merged, isoline_path);
    write_csv(result.grid, grid_path);

    RunManifest manifest;
    manifest.command = "zz-thermal";
    manifest.parameters = {{"J", j_coupling},
                           {"gamma0", gamma0},
                           {"target_p_error", targets},
                           {"T", temperatures},
                           {"t_bracket_gamma0", bracket_g0},
                           {"coarse_points", coarse_points},
                           {"workers", workers},
                           {"out_dir", out_dir}};
    manifest.output_paths = {isoline_path, grid_path};
    write_manifest(manifest, manifest_path(out_dir, "zz-thermal"));
    return 0;
  } catch (const BracketFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 6;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: integration failed: " << e.what() << '\n';
    return 5;
  }
}

int cmd_selftest(std::uint64_t seed, const std::string& out_dir) {
  const int failures = run_selftest(seed, std::cout);
  if (failures > 0) return 20;
  RunManifest manifest;
  manifest.command = "selftest";
  manifest.parameters = {{"seed", seed}, {"out_dir", out_dir}};
  write_manifest(manifest, manifest_path(out_dir, "selftest"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (!tolerance_profile_valid()) {
    std::cerr << "error: DYNCORR_TOLERANCE_PROFILE must be 'default' or 'strict'\n";
    return 1;
  }

  CLI::App app{"Spatial-correlation measure for bipartite quantum dynamics"};
  app.set_version_flag("--version", std::string(dyncorr::kToolVersion));
  app.require_subcommand(1);

  // measure
  auto* measure = app.add_subcommand("measure", "Correlation report for a channel file");
  std::string channel_path, dims_flag, out_dir = ".";
  measure->add_option("channel", channel_path, "JSON channel file")->required();
  measure->add_option("--dims", dims_flag, "expected d_A,d_B (validated against the file)");
  measure->add_option("--out-dir", out_dir, "directory for the run manifest");

  // verify-unitary
  auto* verify = app.add_subcommand("verify-unitary", "Maximal-correlation test for a unitary");
  std::string verify_path, verify_out = ".";
  verify->add_option("channel", verify_path, "JSON channel file")->required();
  verify->add_option("--out-dir", verify_out, "directory for the run manifest");

  // two-atom
  auto* two_atom = app.add_subcommand("two-atom", "Distance sweep of the two-atom model");
  std::string r_flag = "0,0.1,0.5,1,2,10";
  double t_min = 1e-3, t_max = 50.0, theta = 0.0, omega = 1.0, dipole = 2.0;
  int t_points = 200, workers = 0;
  std::string ta_out = ".";
  two_atom->add_option("--r", r_flag, "comma-separated distances (units of 1/omega)");
  two_atom->add_option("--t-min", t_min, "first grid time (units of 1/gamma0)");
  two_atom->add_option("--t-max", t_max, "last grid time (units of 1/gamma0)");
  two_atom->add_option("--t-points", t_points, "log-spaced grid size");
  two_atom->add_option("--theta", theta, "dipole-separation angle (radians)");
  two_atom->add_option("--omega", omega, "transition frequency");
  two_atom->add_option("--dipole", dipole, "dipole norm |d|");
  two_atom->add_option("--workers", workers, "worker threads (0 = all cores)");
  two_atom->add_option("--out-dir", ta_out, "output directory");

  // zz-thermal
  auto* zz = app.add_subcommand("zz-thermal", "Constant-P_error isolines of the ZZ model");
  double j_coupling = 1.0, gamma0 = 4.0 / 3.0, zz_t_min = 0.05, zz_t_max = 5.0;
  int zz_t_points = 12, coarse_points = 17, zz_workers = 0;
  std::string targets_flag = "0.1", t_list_flag, bracket_flag = "1e-4,10", zz_out = ".";
  zz->add_option("--J", j_coupling, "ZZ coupling strength (units of omega)");
  zz->add_option("--gamma0", gamma0, "decay rate (units of omega)");
  zz->add_option("--target-p-error", targets_flag, "comma-separated targets in (0,1)");
  zz->add_option("--T", t_list_flag, "comma-separated temperatures (units of omega)");
  zz->add_option("--T-min", zz_t_min, "first temperature of the log grid");
  zz->add_option("--T-max", zz_t_max, "last temperature of the log grid");
  zz->add_option("--T-points", zz_t_points, "temperature grid size");
  zz->add_option("--t-bracket", bracket_flag, "bisection bracket lo,hi (units of 1/gamma0)");
  zz->add_option("--coarse-points", coarse_points, "coarse grid size per temperature");
  zz->add_option("--workers", zz_workers, "worker threads (0 = all cores)");
  zz->add_option("--out-dir", zz_out, "output directory");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Run the embedded invariant suites");
  std::uint64_t seed = 42;
  std::string st_out = ".";
  selftest->add_option("--seed", seed, "seed for the random trials");
  selftest->add_option("--out-dir", st_out, "directory for the run manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (measure->parsed()) return cmd_measure(channel_path, dims_flag, out_dir);
    if (verify->parsed()) return cmd_verify_unitary(verify_path, verify_out);
    if (two_atom->parsed())
      return cmd_two_atom(r_flag, t_min, t_max, t_points, theta, omega, dipole, ta_out, workers);
    if (zz->parsed())
      return cmd_zz_thermal(j_coupling, gamma0, targets_flag, t_list_flag, zz_t_min, zz_t_max,
                            zz_t_points, bracket_flag, coarse_points, zz_out, zz_workers);
    if (selftest->parsed()) return cmd_selftest(seed, st_out);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const dyncorr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
