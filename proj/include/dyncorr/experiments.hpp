#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dyncorr/lindblad.hpp"
#include "dyncorr/models.hpp"

namespace dyncorr {

// One row of an experiment output: named parameters plus the measured
// quantities. All records written to one CSV must share the same parameter
// names in the same order.
struct SweepRecord {
  std::vector<std::pair<std::string, double>> parameters;
  double i_bar = 0.0;
  std::optional<double> p_error;
};

// n points logarithmically spaced over [lo, hi], endpoints included.
std::vector<double> log_spaced(double lo, double hi, int n);

struct DistanceSweepResult {
  std::vector<SweepRecord> trace;  // (r, t_omega, t_gamma0, i_bar) per grid time
  std::vector<SweepRecord> peaks;  // (r, t_omega, t_gamma0, i_bar) at max_t
  std::vector<std::string> warnings;
};

// Correlation measure along the Choi trajectory of the two-atom model, one
// checkpointed trajectory per distance. time_grid is in units of
// 1/gamma0; output rows carry the time in both omega and gamma0 units.
DistanceSweepResult distance_sweep(const std::vector<double>& r_values,
                                   const std::vector<double>& time_grid,
                                   const TwoAtomParams& params_template,
                                   const EvolutionConfig& cfg = EvolutionConfig{},
                                   int workers = 0);

struct MultiIsolineResult {
  std::vector<double> targets;
  // one isoline per target: (T, t, i_bar, p_error) per sampled temperature
  std::vector<std::vector<SweepRecord>> isolines;
  // coarse (T, t) grid: (T, t, i_bar, p_error)
  std::vector<SweepRecord> grid;
};

// For each bath temperature, bisects the evolution time until
// |P_error(t, T) - target| < 1e-6, then evaluates the correlation measure
// there. Uses the error generator (local Hamiltonian term excluded).
// P_error must be monotone in t over the bracket (checked on the coarse
// grid) and the bracket must straddle the target, else BracketFailure.
MultiIsolineResult isoline_search_multi(const ZZThermalParams& params_template,
                                        const std::vector<double>& targets,
                                        const std::vector<double>& T_values,
                                        std::pair<double, double> t_bracket,
                                        const EvolutionConfig& cfg = EvolutionConfig{},
                                        int workers = 0, int coarse_points = 17);

struct IsolineResult {
  std::vector<SweepRecord> points;
  std::vector<SweepRecord> grid;
};

IsolineResult isoline_search(const ZZThermalParams& params_template, double target_p_error,
                             const std::vector<double>& T_values,
                             std::pair<double, double> t_bracket,
                             const EvolutionConfig& cfg = EvolutionConfig{}, int workers = 0,
                             int coarse_points = 17);

// CSV with a header naming each parameter column plus i_bar and, when any
// record carries one, p_error. Values rendered with 12 significant digits;
// rows in input order.
void write_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::vector<SweepRecord> parse_csv(const std::string& path);

// Runs fn(0..n-1) on a small worker pool; workers <= 0 means all cores.
// Results must be written to preallocated slots so ordering is preserved.
void parallel_for_indexed(int n, int workers, const std::function<void(int)>& fn);

}  // namespace dyncorr
