#pragma once

#include <vector>

#include "dyncorr/density.hpp"

namespace dyncorr {

// A completely positive trace-preserving map, stored either as a single
// unitary or as a Kraus operator list. Channels carry no basis metadata;
// the canonical basis is fixed globally. Equality of channels is always
// decided through Choi states, never by comparing Kraus lists.
class Channel {
 public:
  enum class Kind { unitary, kraus };

  // Validates U U^dag = 1 within tol.unitarity.
  static Channel unitary(ComplexMatrix u, const Tolerances& tol = Tolerances::active());
  // Validates sum K_i^dag K_i = 1 within tol.kraus_completeness.
  static Channel kraus(std::vector<ComplexMatrix> ops, const Tolerances& tol = Tolerances::active());
  static Channel identity(int dim);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_unitary() const { return kind_ == Kind::unitary; }

  // The Kraus operator list; for a unitary channel this is the single matrix.
  const std::vector<ComplexMatrix>& operators() const { return ops_; }
  const ComplexMatrix& unitary_matrix() const;

 private:
  Channel(Kind kind, int dim, std::vector<ComplexMatrix> ops)
      : kind_(kind), dim_(dim), ops_(std::move(ops)) {}
  Kind kind_;
  int dim_;
  std::vector<ComplexMatrix> ops_;
};

// Choi state of a bipartite channel: subsystem order A, B, A', B' with
// dims [d_A, d_B, d_A, d_B]. Construction checks the ancilla marginal
// (trace over A,B equals I/(d_A d_B)), which encodes trace preservation.
class ChoiState {
 public:
  ChoiState(DensityMatrix state, const Tolerances& tol = Tolerances::active());

  const DensityMatrix& state() const { return state_; }
  int d_A() const { return state_.subsystem_dims()[0]; }
  int d_B() const { return state_.subsystem_dims()[1]; }

 private:
  DensityMatrix state_;
};

// |Phi><Phi| with |Phi> = d^{-1/2} sum_j |jj>, subsystem dims [d, d].
DensityMatrix max_entangled_state(int d);

// Channel action: U rho U^dag or sum_i K_i rho K_i^dag.
DensityMatrix apply(const Channel& ch, const DensityMatrix& rho);

// Extends ch with the identity on the remaining subsystems and applies.
// The channel must act on a leading contiguous block of subsystems:
// s_subsystems = {0, 1, ..., k}.
DensityMatrix apply_to_S(const Channel& ch, const DensityMatrix& rho,
                         const std::vector<int>& s_subsystems);

// Choi state of ch acting on a d_A x d_B bipartite system.
ChoiState choi_state(const Channel& ch, int d_A, int d_B,
                     const Tolerances& tol = Tolerances::active());

// Choi state of a single-party channel: (ch (x) 1)(|Phi><Phi|) with
// subsystem dims [d, d].
DensityMatrix single_party_choi(const Channel& ch);

// Kraus list {A_i (x) B_j}; unitary (x) unitary stays unitary.
Channel tensor_channels(const Channel& a, const Channel& b);

// outer after inner; Kraus list {O_i I_j}.
Channel compose(const Channel& outer, const Channel& inner);

}  // namespace dyncorr
