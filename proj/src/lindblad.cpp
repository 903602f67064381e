#include "dyncorr/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dyncorr/errors.hpp"

namespace dyncorr {

namespace {

using Buf = std::vector<Complex>;

// Non-allocating kernels on row-major buffers; the integrator spends nearly
// all of its time here.
void matmul_into(const Buf& a, const Buf& b, Buf& out, int n) {
  std::fill(out.begin(), out.end(), Complex(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    Complex* out_row = &out[static_cast<size_t>(i) * n];
    const Complex* a_row = &a[static_cast<size_t>(i) * n];
    for (int p = 0; p < n; ++p) {
      const Complex aip = a_row[p];
      if (aip == Complex(0.0, 0.0)) continue;
      const Complex* b_row = &b[static_cast<size_t>(p) * n];
      for (int j = 0; j < n; ++j) out_row[j] += aip * b_row[j];
    }
  }
}

// out = a * b^dag
void matmul_adjB_into(const Buf& a, const Buf& b, Buf& out, int n) {
  for (int i = 0; i < n; ++i) {
    const Complex* a_row = &a[static_cast<size_t>(i) * n];
    Complex* out_row = &out[static_cast<size_t>(i) * n];
    for (int j = 0; j < n; ++j) {
      const Complex* b_row = &b[static_cast<size_t>(j) * n];
      Complex acc = 0.0;
      for (int p = 0; p < n; ++p) acc += a_row[p] * std::conj(b_row[p]);
      out_row[j] = acc;
    }
  }
}

struct CollectiveMode {
  double rate;  // eigenvalue of the rate matrix
  Buf op;       // collective jump operator
};

// Generator with the rate matrix spectrally decomposed into collective
// modes: sum_jk a_jk (L_k . L_j^dag - ...) = sum_m g_m (C_m . C_m^dag - ...)
// with C_m = sum_k conj(w_m[k]) L_k. Exact rewrite, half the matmuls.
class CompiledGenerator {
 public:
  explicit CompiledGenerator(const LindbladGenerator& gen) : n_(gen.dim()) {
    h_ = gen.hamiltonian().entries();
    const int k = static_cast<int>(gen.jump_ops().size());
    if (k > 0) {
      const Spectrum spec = hermitian_eig(gen.rates());
      const double g_max = spec.eigenvalues.empty() ? 0.0 : std::abs(spec.eigenvalues.front());
      for (int m = 0; m < k; ++m) {
        const double g = spec.eigenvalues[static_cast<size_t>(m)];
        if (g <= g_max * 1e-14 || g <= 0.0) continue;  // zero modes drop out exactly
        CollectiveMode mode;
        mode.rate = g;
        mode.op.assign(static_cast<size_t>(n_) * n_, Complex(0.0, 0.0));
        for (int j = 0; j < k; ++j) {
          const Complex w = std::conj(spec.eigenvectors(j, m));
          if (w == Complex(0.0, 0.0)) continue;
          const auto& l = gen.jump_ops()[static_cast<size_t>(j)].entries();
          for (size_t idx = 0; idx < mode.op.size(); ++idx) mode.op[idx] += w * l[idx];
        }
        modes_.push_back(std::move(mode));
      }
    }
    // P = sum_m g_m C_m^dag C_m (anticommutator operator)
    p_.assign(static_cast<size_t>(n_) * n_, Complex(0.0, 0.0));
    Buf tmp(p_.size());
    for (const auto& mode : modes_) {
      // tmp = C^dag C
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
          Complex acc = 0.0;
          for (int p = 0; p < n_; ++p)
            acc += std::conj(mode.op[static_cast<size_t>(p) * n_ + i]) *
                   mode.op[static_cast<size_t>(p) * n_ + j];
          tmp[static_cast<size_t>(i) * n_ + j] = acc;
        }
      for (size_t idx = 0; idx < p_.size(); ++idx) p_[idx] += mode.rate * tmp[idx];
    }
    t1_.resize(p_.size());
    t2_.resize(p_.size());
  }

  int dim() const { return n_; }

  void rhs(const Buf& rho, Buf& out) {
    const size_t sz = rho.size();
    // -i(H rho - rho H)
    matmul_into(h_, rho, t1_, n_);
    matmul_into(rho, h_, t2_, n_);
    for (size_t i = 0; i < sz; ++i) out[i] = Complex(0.0, -1.0) * (t1_[i] - t2_[i]);
    // + sum_m g_m C rho C^dag
    for (const auto& mode : modes_) {
      matmul_into(mode.op, rho, t1_, n_);
      matmul_adjB_into(t1_, mode.op, t2_, n_);
      for (size_t i = 0; i < sz; ++i) out[i] += mode.rate * t2_[i];
    }
    // - (1/2)(P rho + rho P)
    matmul_into(p_, rho, t1_, n_);
    matmul_into(rho, p_, t2_, n_);
    for (size_t i = 0; i < sz; ++i) out[i] -= 0.5 * (t1_[i] + t2_[i]);
  }

 private:
  int n_;
  Buf h_;
  Buf p_;
  std::vector<CollectiveMode> modes_;
  Buf t1_, t2_;
};

double frobenius(const Buf& a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return std::sqrt(s);
}

double max_abs_diff_buf(const Buf& a, const Buf& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

class Rk4Stepper {
 public:
  Rk4Stepper(CompiledGenerator& gen, int n)
      : gen_(gen), n_(n) {
    const size_t sz = static_cast<size_t>(n) * n;
    for (Buf* b : {&k1_, &ks_, &ytmp_, &acc_, &yfull_, &ymid_, &yhalf_}) b->assign(sz, Complex());
  }

  // One classic RK4 step from y using a precomputed k1 = f(y).
  void rk4(const Buf& y, const Buf& k1, double h, Buf& out) {
    const size_t sz = y.size();
    for (size_t i = 0; i < sz; ++i) acc_[i] = k1[i];
    for (size_t i = 0; i < sz; ++i) ytmp_[i] = y[i] + 0.5 * h * k1[i];
    gen_.rhs(ytmp_, ks_);  // k2
    for (size_t i = 0; i < sz; ++i) acc_[i] += 2.0 * ks_[i];
    for (size_t i = 0; i < sz; ++i) ytmp_[i] = y[i] + 0.5 * h * ks_[i];
    gen_.rhs(ytmp_, ks_);  // k3
    for (size_t i = 0; i < sz; ++i) acc_[i] += 2.0 * ks_[i];
    for (size_t i = 0; i < sz; ++i) ytmp_[i] = y[i] + h * ks_[i];
    gen_.rhs(ytmp_, ks_);  // k4
    for (size_t i = 0; i < sz; ++i) out[i] = y[i] + (h / 6.0) * (acc_[i] + ks_[i]);
  }

  // Step-doubled attempt: full step vs two half steps. Returns the error
  // estimate; the proposed state is in yhalf().
  double attempt(const Buf& y, double h) {
    gen_.rhs(y, k1_);
    rk4(y, k1_, h, yfull_);
    rk4(y, k1_, 0.5 * h, ymid_);
    gen_.rhs(ymid_, ks_);
    Buf k1b = ks_;  // small copy; k-buffers are reused inside rk4
    rk4(ymid_, k1b, 0.5 * h, yhalf_);
    return max_abs_diff_buf(yhalf_, yfull_);
  }

  const Buf& proposed() const { return yhalf_; }

 private:
  CompiledGenerator& gen_;
  int n_;
  Buf k1_, ks_, ytmp_, acc_, yfull_, ymid_, yhalf_;
};

void hermitize(Buf& y, int n, double* defect_out) {
  double defect = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Complex a = y[static_cast<size_t>(i) * n + j];
      const Complex b = std::conj(y[static_cast<size_t>(j) * n + i]);
      defect = std::max(defect, std::abs(a - b));
      const Complex avg = 0.5 * (a + b);
      y[static_cast<size_t>(i) * n + j] = avg;
      y[static_cast<size_t>(j) * n + i] = std::conj(avg);
    }
  }
  if (defect_out) *defect_out = std::max(*defect_out, defect);
}

}  // namespace

LindbladGenerator::LindbladGenerator(ComplexMatrix hamiltonian,
                                     std::vector<ComplexMatrix> jump_ops, ComplexMatrix rates,
                                     const Tolerances& tol)
    : hamiltonian_(std::move(hamiltonian)), jump_ops_(std::move(jump_ops)) {
  if (!hamiltonian_.is_square()) throw BadDimension("LindbladGenerator: H must be square");
  if (hamiltonian_.hermiticity_defect() > tol.hermiticity)
    throw NotHermitian("LindbladGenerator: Hamiltonian not Hermitian");
  if (jump_ops_.empty())
    throw BadDimension("LindbladGenerator: empty jump list; use the coherent constructor");
  const int n = hamiltonian_.rows();
  for (const auto& l : jump_ops_)
    if (l.rows() != n || l.cols() != n)
      throw DimensionMismatch("LindbladGenerator: jump op dimension mismatch");
  const int k = static_cast<int>(jump_ops_.size());
  if (rates.rows() != k || rates.cols() != k)
    throw DimensionMismatch("LindbladGenerator: rate matrix must be k x k");
  if (rates.hermiticity_defect() > tol.hermiticity)
    throw NotHermitian("LindbladGenerator: rate matrix not Hermitian");
  const Spectrum spec = hermitian_eig(rates, tol);
  if (spec.eigenvalues.back() < tol.rate_psd_floor)
    throw NotPositive("LindbladGenerator: rate matrix not positive semidefinite");
  rates_.push_back(std::move(rates));
}

LindbladGenerator::LindbladGenerator(ComplexMatrix hamiltonian, const Tolerances& tol)
    : hamiltonian_(std::move(hamiltonian)) {
  if (!hamiltonian_.is_square()) throw BadDimension("LindbladGenerator: H must be square");
  if (hamiltonian_.hermiticity_defect() > tol.hermiticity)
    throw NotHermitian("LindbladGenerator: Hamiltonian not Hermitian");
}

const ComplexMatrix& LindbladGenerator::rates() const {
  if (rates_.empty()) throw InvariantViolation("LindbladGenerator: no dissipator");
  return rates_.front();
}

ComplexMatrix lindblad_rhs(const LindbladGenerator& gen, const ComplexMatrix& rho) {
  const int n = gen.dim();
  if (rho.rows() != n || rho.cols() != n)
    throw DimensionMismatch("lindblad_rhs: state dimension mismatch");

  const ComplexMatrix& h = gen.hamiltonian();
  ComplexMatrix out = Complex(0.0, -1.0) * (h * rho - rho * h);
  const auto& ls = gen.jump_ops();
  const int k = static_cast<int>(ls.size());
  for (int j = 0; j < k; ++j) {
    for (int kk = 0; kk < k; ++kk) {
      const Complex a = gen.rates()(j, kk);
      if (a == Complex(0.0, 0.0)) continue;
      const ComplexMatrix sandwich = ls[static_cast<size_t>(kk)] * rho *
                                     ls[static_cast<size_t>(j)].adjoint();
      const ComplexMatrix m = ls[static_cast<size_t>(j)].adjoint() * ls[static_cast<size_t>(kk)];
      out += a * (sandwich - Complex(0.5, 0.0) * (m * rho + rho * m));
    }
  }
  return out;
}

namespace {

// Integrates the buffer state in place from t_from to t_to.
void integrate_segment(CompiledGenerator& gen, Rk4Stepper& stepper, Buf& y, double t_from,
                       double t_to, double& h, long& steps_used, const EvolutionConfig& cfg,
                       TrajectoryStats& stats, const Tolerances& tol) {
  const int n = gen.dim();
  double t = t_from;
  const double t_eps = 1e-13 * std::max(1.0, std::abs(t_to));
  while (t < t_to - t_eps) {
    const double h_try = std::min(h, t_to - t);
    if (++steps_used > cfg.max_steps)
      throw StepLimitExceeded("evolve: max_steps exceeded at t = " + std::to_string(t));
    if (h_try < 1e-14 * std::max(1.0, std::abs(t_to)))
      throw StepLimitExceeded("evolve: step size underflow at t = " + std::to_string(t));

    const double err = stepper.attempt(y, h_try);
    const double tol_step = cfg.abs_tol + cfg.rel_tol * frobenius(y);
    if (err < tol_step) {
      y = stepper.proposed();
      t += h_try;
      ++stats.accepted_steps;
      hermitize(y, n, &stats.max_hermiticity_defect);

      Complex tr = 0.0;
      double min_diag = 0.0;
      for (int i = 0; i < n; ++i) {
        const Complex d = y[static_cast<size_t>(i) * n + i];
        tr += d;
        min_diag = std::min(min_diag, d.real());
      }
      const double drift = std::abs(tr - Complex(1.0, 0.0));
      stats.max_trace_drift = std::max(stats.max_trace_drift, drift);
      if (drift > tol.trace_drift)
        throw TraceDrift("evolve: trace drift " + std::to_string(drift) + " at t = " +
                         std::to_string(t));
      if (min_diag < tol.trajectory_psd_floor)
        throw PositivityLoss("evolve: negative population " + std::to_string(min_diag) +
                             " at t = " + std::to_string(t));

      // err ~ h^5: comfortably below tolerance permits doubling
      if (err < tol_step / 64.0 && h_try >= h) h *= 2.0;
    } else {
      ++stats.rejected_steps;
      h = 0.5 * h_try;
    }
  }
}

// Validated checkpoint snapshot: renormalized trace, PSD within the
// trajectory floor.
DensityMatrix snapshot(const Buf& y, int n, const std::vector<int>& dims, double t,
                       TrajectoryStats& stats, const Tolerances& tol) {
  ComplexMatrix m(n, n, y);
  const double drift = std::abs(m.trace() - Complex(1.0, 0.0));
  if (drift > tol.trace_drift)
    throw TraceDrift("evolve: trace drift at checkpoint t = " + std::to_string(t));
  m *= Complex(1.0 / m.trace().real(), 0.0);
  const Spectrum spec = hermitian_eig(m, tol);
  const double min_eig = spec.eigenvalues.back();
  stats.min_checkpoint_eigenvalue = std::min(stats.min_checkpoint_eigenvalue, min_eig);
  if (min_eig < tol.trajectory_psd_floor)
    throw PositivityLoss("evolve: eigenvalue " + std::to_string(min_eig) +
                         " below floor at checkpoint t = " + std::to_string(t));
  return DensityMatrix::unchecked(std::move(m), dims);
}

}  // namespace

std::vector<DensityMatrix> evolve_path(const LindbladGenerator& gen, const DensityMatrix& rho0,
                                       const std::vector<double>& times,
                                       const EvolutionConfig& cfg, TrajectoryStats* stats,
                                       const Tolerances& tol) {
  if (gen.dim() != rho0.dim()) throw DimensionMismatch("evolve: generator/state dim mismatch");
  if (times.empty()) throw BadDimension("evolve_path: empty time list");
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) throw BadDimension("evolve_path: negative time");
    if (i > 0 && times[i] < times[i - 1]) throw BadDimension("evolve_path: times not ascending");
  }
  if (cfg.rel_tol <= 0.0 || cfg.abs_tol <= 0.0 || cfg.initial_step <= 0.0)
    throw BadDimension("evolve: tolerances and initial step must be positive");

  TrajectoryStats local_stats;
  TrajectoryStats& st = stats ? *stats : local_stats;
  if (stats) *stats = TrajectoryStats{};

  CompiledGenerator compiled(gen);
  Rk4Stepper stepper(compiled, gen.dim());
  Buf y = rho0.matrix().entries();
  double h = cfg.initial_step;
  long steps_used = 0;
  double t = 0.0;

  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  for (double target : times) {
    integrate_segment(compiled, stepper, y, t, target, h, steps_used, cfg, st, tol);
    t = std::max(t, target);
    out.push_back(snapshot(y, gen.dim(), rho0.subsystem_dims(), target, st, tol));
  }
  return out;
}

DensityMatrix evolve(const LindbladGenerator& gen, const DensityMatrix& rho0,
                     const EvolutionConfig& cfg, TrajectoryStats* stats, const Tolerances& tol) {
  if (cfg.t_final < 0.0) throw BadDimension("evolve: t_final must be >= 0");
  if (cfg.t_final == 0.0) {
    if (stats) *stats = TrajectoryStats{};
    return rho0;
  }
  auto states = evolve_path(gen, rho0, {cfg.t_final}, cfg, stats, tol);
  return std::move(states.front());
}

LindbladGenerator extend_for_choi(const LindbladGenerator& gen) {
  const int n = gen.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  if (gen.jump_ops().empty()) return LindbladGenerator(kron(gen.hamiltonian(), id));
  std::vector<ComplexMatrix> jumps;
  jumps.reserve(gen.jump_ops().size());
  for (const auto& l : gen.jump_ops()) jumps.push_back(kron(l, id));
  return LindbladGenerator(kron(gen.hamiltonian(), id), std::move(jumps), gen.rates());
}

namespace {

int choi_party_dim(const LindbladGenerator& gen) {
  const int ds = gen.dim();
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(ds))));
  if (d * d != ds) throw BadDimension("evolve_choi: generator dim is not a perfect square");
  return d;
}

}  // namespace

std::vector<ChoiState> evolve_choi_path(const LindbladGenerator& gen,
                                        const std::vector<double>& times,
                                        const EvolutionConfig& cfg, TrajectoryStats* stats,
                                        const Tolerances& tol) {
  const int d = choi_party_dim(gen);
  const int ds = gen.dim();
  const LindbladGenerator ext = extend_for_choi(gen);
  const DensityMatrix phi = max_entangled_state(ds);
  std::vector<DensityMatrix> states = evolve_path(ext, phi, times, cfg, stats, tol);
  std::vector<ChoiState> out;
  out.reserve(states.size());
  for (auto& s : states) out.emplace_back(s.with_subsystem_dims({d, d, d, d}), tol);
  return out;
}

ChoiState evolve_choi(const LindbladGenerator& gen, const EvolutionConfig& cfg,
                      TrajectoryStats* stats, const Tolerances& tol) {
  if (cfg.t_final == 0.0) {
    const int d = choi_party_dim(gen);
    if (stats) *stats = TrajectoryStats{};
    return ChoiState(max_entangled_state(gen.dim()).with_subsystem_dims({d, d, d, d}), tol);
  }
  auto states = evolve_choi_path(gen, {cfg.t_final}, cfg, stats, tol);
  return std::move(states.front());
}

}  // namespace dyncorr
