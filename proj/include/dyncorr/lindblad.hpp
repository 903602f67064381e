#pragma once

#include <vector>

#include "dyncorr/channel.hpp"

namespace dyncorr {

// Markovian generator: -i[H, rho] + sum_jk a_jk (L_k rho L_j^dag
// - (1/2){L_j^dag L_k, rho}). The rate matrix must be Hermitian and PSD
// (complete positivity).
class LindbladGenerator {
 public:
  LindbladGenerator(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> jump_ops,
                    ComplexMatrix rates, const Tolerances& tol = Tolerances::active());
  // Purely coherent generator (no dissipator).
  explicit LindbladGenerator(ComplexMatrix hamiltonian,
                             const Tolerances& tol = Tolerances::active());

  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<ComplexMatrix>& jump_ops() const { return jump_ops_; }
  // Valid only when jump operators are present.
  const ComplexMatrix& rates() const;
  int dim() const { return hamiltonian_.rows(); }

 private:
  ComplexMatrix hamiltonian_;
  std::vector<ComplexMatrix> jump_ops_;
  std::vector<ComplexMatrix> rates_;  // empty or one k x k matrix
};

struct EvolutionConfig {
  double t_final = 0.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double initial_step = 1e-3;
  long max_steps = 10'000'000;

  static EvolutionConfig to_time(double t) {
    EvolutionConfig cfg;
    cfg.t_final = t;
    return cfg;
  }
};

struct TrajectoryStats {
  double max_trace_drift = 0.0;         // before renormalization
  double max_hermiticity_defect = 0.0;  // before re-Hermitization
  double min_checkpoint_eigenvalue = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;
};

// Right-hand side of the master equation; the literal double-index sum.
// Traceless and Hermiticity-preserving.
ComplexMatrix lindblad_rhs(const LindbladGenerator& gen, const ComplexMatrix& rho);

// rho(t_final) by classic RK4 with step-doubling local-error control.
// Accepted-state trace drift beyond tol.trace_drift raises TraceDrift;
// negative eigenvalues below tol.trajectory_psd_floor raise PositivityLoss.
DensityMatrix evolve(const LindbladGenerator& gen, const DensityMatrix& rho0,
                     const EvolutionConfig& cfg, TrajectoryStats* stats = nullptr,
                     const Tolerances& tol = Tolerances::active());

// Single continuous trajectory checkpointed at the given times (ascending,
// nonnegative); one state per time.
std::vector<DensityMatrix> evolve_path(const LindbladGenerator& gen, const DensityMatrix& rho0,
                                       const std::vector<double>& times,
                                       const EvolutionConfig& cfg,
                                       TrajectoryStats* stats = nullptr,
                                       const Tolerances& tol = Tolerances::active());

// Generator of the extended system S (x) S' evolving the Choi state:
// H -> H (x) 1, L_k -> L_k (x) 1, rates unchanged.
LindbladGenerator extend_for_choi(const LindbladGenerator& gen);

// Choi state of e^{t_final L}: evolves the maximally entangled state under
// the extended generator. The generator dimension must be a perfect square.
ChoiState evolve_choi(const LindbladGenerator& gen, const EvolutionConfig& cfg,
                      TrajectoryStats* stats = nullptr,
                      const Tolerances& tol = Tolerances::active());

std::vector<ChoiState> evolve_choi_path(const LindbladGenerator& gen,
                                        const std::vector<double>& times,
                                        const EvolutionConfig& cfg,
                                        TrajectoryStats* stats = nullptr,
                                        const Tolerances& tol = Tolerances::active());

}  // namespace dyncorr
