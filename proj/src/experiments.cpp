#include "dyncorr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "dyncorr/correlation.hpp"
#include "dyncorr/errors.hpp"

namespace dyncorr {

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (n < 1 || lo <= 0.0 || hi < lo) throw BadDimension("log_spaced: invalid grid");
  std::vector<double> out(static_cast<size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double la = std::log10(lo), lb = std::log10(hi);
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = std::pow(10.0, la + (lb - la) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

void parallel_for_indexed(int n, int workers, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

// Rethrows integrator failures with a parameter-point prefix, preserving
// the error type so callers can still map it to an exit code.
[[noreturn]] void rethrow_annotated(const std::string& prefix) {
  try {
    throw;
  } catch (const StepLimitExceeded& e) {
    throw StepLimitExceeded(prefix + e.what());
  } catch (const TraceDrift& e) {
    throw TraceDrift(prefix + e.what());
  } catch (const PositivityLoss& e) {
    throw PositivityLoss(prefix + e.what());
  } catch (const NoConvergence& e) {
    throw NoConvergence(prefix + e.what());
  }
}

ChoiState to_choi(const DensityMatrix& extended_state) {
  return ChoiState(extended_state.with_subsystem_dims({2, 2, 2, 2}));
}

}  // namespace

DistanceSweepResult distance_sweep(const std::vector<double>& r_values,
                                   const std::vector<double>& time_grid,
                                   const TwoAtomParams& params_template,
                                   const EvolutionConfig& cfg, int workers) {
  if (r_values.empty() || time_grid.empty())
    throw BadDimension("distance_sweep: empty parameter grid");
  for (double r : r_values)
    if (r < 0.0) throw BadDimension("distance_sweep: negative distance");
  for (size_t i = 0; i < time_grid.size(); ++i) {
    if (time_grid[i] <= 0.0) throw BadDimension("distance_sweep: times must be positive");
    if (i > 0 && time_grid[i] <= time_grid[i - 1])
      throw BadDimension("distance_sweep: time grid must be strictly ascending");
  }

  const int n_r = static_cast<int>(r_values.size());
  const int n_t = static_cast<int>(time_grid.size());
  std::vector<std::vector<SweepRecord>> traces(static_cast<size_t>(n_r));
  std::vector<SweepRecord> peaks(static_cast<size_t>(n_r));
  std::vector<std::string> warnings(static_cast<size_t>(n_r));

  parallel_for_indexed(n_r, workers, [&](int ir) {
    TwoAtomParams p = params_template;
    p.r = r_values[static_cast<size_t>(ir)];
    const double g0 = p.gamma0();
    std::vector<double> times_omega(static_cast<size_t>(n_t));
    for (int i = 0; i < n_t; ++i)
      times_omega[static_cast<size_t>(i)] = time_grid[static_cast<size_t>(i)] / g0;

    std::vector<ChoiState> states;
    try {
      states = evolve_choi_path(two_atom_generator(p), times_omega, cfg);
    } catch (...) {
      std::ostringstream os;
      os << "distance_sweep at r = " << p.r << ": ";
      rethrow_annotated(os.str());
    }

    auto& trace = traces[static_cast<size_t>(ir)];
    trace.resize(static_cast<size_t>(n_t));
    int peak_idx = 0;
    for (int i = 0; i < n_t; ++i) {
      const double value = i_bar(states[static_cast<size_t>(i)]).i_bar;
      trace[static_cast<size_t>(i)] =
          SweepRecord{{{"r", p.r},
                       {"t_omega", times_omega[static_cast<size_t>(i)]},
                       {"t_gamma0", time_grid[static_cast<size_t>(i)]}},
                      value,
                      std::nullopt};
      if (value > trace[static_cast<size_t>(peak_idx)].i_bar) peak_idx = i;
    }
    peaks[static_cast<size_t>(ir)] = trace[static_cast<size_t>(peak_idx)];
    if (peak_idx == 0 || peak_idx == n_t - 1) {
      std::ostringstream os;
      os << "peak at time-grid boundary for r = " << p.r << " (index " << peak_idx << ")";
      warnings[static_cast<size_t>(ir)] = os.str();
    }
  });

  DistanceSweepResult result;
  for (auto& t : traces)
    result.trace.insert(result.trace.end(), t.begin(), t.end());
  result.peaks = std::move(peaks);
  for (auto& w : warnings)
    if (!w.empty()) result.warnings.push_back(std::move(w));
  return result;
}

namespace {

struct IsolineJobResult {
  std::vector<SweepRecord> grid_rows;
  std::vector<SweepRecord> point_per_target;
};

IsolineJobResult isoline_job(const ZZThermalParams& tmpl, double temperature,
                             const std::vector<double>& targets,
                             std::pair<double, double> t_bracket, const EvolutionConfig& cfg,
                             int coarse_points) {
  ZZThermalParams p = tmpl;
  p.T = temperature;
  p.include_local_hamiltonian = false;  // error map: local splitting is not an error source

  const LindbladGenerator gen = extend_for_choi(zz_thermal_generator(p));
  const DensityMatrix phi = max_entangled_state(4);
  const std::vector<double> coarse =
      log_spaced(t_bracket.first, t_bracket.second, coarse_points);

  std::ostringstream prefix_os;
  prefix_os << "isoline_search at T = " << temperature << ": ";
  const std::string prefix = prefix_os.str();

  // trajectory cache: time -> state on the extended space
  std::map<double, DensityMatrix> cache;
  cache.emplace(0.0, phi);

  std::vector<DensityMatrix> coarse_states;
  try {
    coarse_states = evolve_path(gen, phi, coarse, cfg);
  } catch (...) {
    rethrow_annotated(prefix);
  }

  IsolineJobResult out;
  std::vector<double> coarse_p(coarse.size());
  for (size_t i = 0; i < coarse.size(); ++i) {
    const ChoiState choi = to_choi(coarse_states[i]);
    coarse_p[i] = error_probability(choi);
    out.grid_rows.push_back(SweepRecord{
        {{"T", temperature}, {"t", coarse[i]}, {"t_gamma0", coarse[i] * p.gamma0}},
        i_bar(choi).i_bar,
        coarse_p[i]});
    cache.emplace(coarse[i], coarse_states[i]);
  }

  // Monotonicity guard for the bracketing precondition.
  for (size_t i = 1; i < coarse_p.size(); ++i)
    if (coarse_p[i] < coarse_p[i - 1] - 1e-9)
      throw BracketFailure(prefix + "P_error not monotone increasing in t over the bracket");

  auto evolve_to = [&](double t) -> const DensityMatrix& {
    auto found = cache.find(t);
    if (found != cache.end()) return found->second;
    auto it = cache.upper_bound(t);
    --it;  // largest cached time <= t; cache holds t = 0
    EvolutionConfig seg = cfg;
    seg.t_final = t - it->first;
    seg.initial_step = std::min(cfg.initial_step, seg.t_final);
    try {
      DensityMatrix state = evolve(gen, it->second, seg);
      return cache.emplace(t, std::move(state)).first->second;
    } catch (...) {
      rethrow_annotated(prefix);
    }
  };

  for (double target : targets) {
    if (!(target > 0.0 && target < 1.0))
      throw BracketFailure(prefix + "target P_error must lie in (0, 1)");
    if (target < coarse_p.front() || target > coarse_p.back()) {
      std::ostringstream os;
      os << prefix << "bracket does not straddle target " << target << " (P_error range ["
         << coarse_p.front() << ", " << coarse_p.back() << "])";
      throw BracketFailure(os.str());
    }
    // first coarse interval straddling the target
    size_t hi_idx = 1;
    while (coarse_p[hi_idx] < target) ++hi_idx;
    double t_lo = coarse[hi_idx - 1], t_hi = coarse[hi_idx];

    double t_star = t_lo;
    const DensityMatrix* state_star = nullptr;
    bool converged = false;
    for (int iter = 0; iter < 100 && !converged; ++iter) {
      const double t_mid = 0.5 * (t_lo + t_hi);
      const DensityMatrix& state = evolve_to(t_mid);
      const double p_mid = error_probability(to_choi(state));
      if (std::abs(p_mid - target) < 1e-6) {
        t_star = t_mid;
        state_star = &state;
        converged = true;
      } else if (p_mid < target) {
        t_lo = t_mid;
      } else {
        t_hi = t_mid;
      }
    }
    if (!converged)
      throw NoConvergence(prefix + "bisection failed to reach |P_error - target| < 1e-6");

    const ChoiState choi = to_choi(*state_star);
    out.point_per_target.push_back(SweepRecord{
        {{"T", temperature}, {"t", t_star}, {"t_gamma0", t_star * p.gamma0}},
        i_bar(choi).i_bar,
        error_probability(choi)});
  }
  return out;
}

}  // namespace

MultiIsolineResult isoline_search_multi(const ZZThermalParams& params_template,
                                        const std::vector<double>& targets,
                                        const std::vector<double>& T_values,
                                        std::pair<double, double> t_bracket,
                                        const EvolutionConfig& cfg, int workers,
                                        int coarse_points) {
  if (targets.empty() || T_values.empty()) throw BadDimension("isoline_search: empty grid");
  if (!(t_bracket.first > 0.0 && t_bracket.second > t_bracket.first))
    throw BadDimension("isoline_search: invalid time bracket");
  if (coarse_points < 3) throw BadDimension("isoline_search: need at least 3 coarse points");
  for (double target : targets)
    if (!(target > 0.0 && target < 1.0))
      throw BracketFailure("isoline_search: target P_error must lie in (0, 1)");

  const int n_T = static_cast<int>(T_values.size());
  std::vector<IsolineJobResult> jobs(static_cast<size_t>(n_T));
  parallel_for_indexed(n_T, workers, [&](int i) {
    jobs[static_cast<size_t>(i)] = isoline_job(params_template, T_values[static_cast<size_t>(i)],
                                               targets, t_bracket, cfg, coarse_points);
  });

  MultiIsolineResult result;
  result.targets = targets;
  result.isolines.resize(targets.size());
  for (int i = 0; i < n_T; ++i) {
    auto& job = jobs[static_cast<size_t>(i)];
    for (size_t k = 0; k < targets.size(); ++k)
      result.isolines[k].push_back(std::move(job.point_per_target[k]));
    result.grid.insert(result.grid.end(), job.grid_rows.begin(), job.grid_rows.end());
  }
  return result;
}

IsolineResult isoline_search(const ZZThermalParams& params_template, double target_p_error,
                             const std::vector<double>& T_values,
                             std::pair<double, double> t_bracket, const EvolutionConfig& cfg,
                             int workers, int coarse_points) {
  MultiIsolineResult multi = isoline_search_multi(params_template, {target_p_error}, T_values,
                                                  t_bracket, cfg, workers, coarse_points);
  IsolineResult out;
  out.points = std::move(multi.isolines.front());
  out.grid = std::move(multi.grid);
  return out;
}

namespace {

std::string render_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

void write_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::vector<std::string> param_names;
  bool any_p_error = false;
  if (!records.empty()) {
    for (const auto& kv : records.front().parameters) param_names.push_back(kv.first);
    for (const auto& rec : records) {
      if (rec.parameters.size() != param_names.size())
        throw FormatError("write_csv: inconsistent parameter columns");
      for (size_t i = 0; i < param_names.size(); ++i)
        if (rec.parameters[i].first != param_names[i])
          throw FormatError("write_csv: inconsistent parameter columns");
      if (rec.p_error.has_value()) any_p_error = true;
    }
  }

  std::ofstream out(path);
  if (!out) throw IoError("write_csv: cannot open " + path);
  for (const auto& name : param_names) out << name << ',';
  out << "i_bar";
  if (any_p_error) out << ",p_error";
  out << '\n';
  for (const auto& rec : records) {
    for (const auto& kv : rec.parameters) out << render_value(kv.second) << ',';
    out << render_value(rec.i_bar);
    if (any_p_error) {
      out << ',';
      if (rec.p_error.has_value()) out << render_value(*rec.p_error);
    }
    out << '\n';
  }
  if (!out) throw IoError("write_csv: write failed for " + path);
}

std::vector<SweepRecord> parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("parse_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("parse_csv: missing header");

  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(s);
    while (std::getline(is, field, ',')) fields.push_back(field);
    if (!s.empty() && s.back() == ',') fields.push_back("");
    return fields;
  };

  const std::vector<std::string> header = split(line);
  int i_bar_col = -1, p_error_col = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "i_bar") i_bar_col = static_cast<int>(i);
    if (header[i] == "p_error") p_error_col = static_cast<int>(i);
  }
  if (i_bar_col < 0) throw FormatError("parse_csv: no i_bar column");

  std::vector<SweepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line);
    if (fields.size() != header.size()) throw FormatError("parse_csv: ragged row");
    SweepRecord rec;
    for (int i = 0; i < i_bar_col; ++i)
      rec.parameters.emplace_back(header[static_cast<size_t>(i)],
                                  std::stod(fields[static_cast<size_t>(i)]));
    rec.i_bar = std::stod(fields[static_cast<size_t>(i_bar_col)]);
    if (p_error_col >= 0 && !fields[static_cast<size_t>(p_error_col)].empty())
      rec.p_error = std::stod(fields[static_cast<size_t>(p_error_col)]);
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace dyncorr
