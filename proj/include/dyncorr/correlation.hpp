#pragma once

#include <cstdint>
#include <vector>

#include "dyncorr/channel.hpp"

namespace dyncorr {

// Correlation measure of a bipartite channel: normalized quantum mutual
// information of its Choi state across the AA'|BB' bipartition.
struct CorrelationReport {
  double i_bar = 0.0;               // in [0, 1] after clamping
  double mutual_information = 0.0;  // nats
  double entropy_AA = 0.0;          // nats
  double entropy_BB = 0.0;          // nats
  double entropy_total = 0.0;       // nats
  int d = 0;                        // per-party dimension
};

// -sum lambda ln lambda; eigenvalues in [psd_floor, 0) are clamped to zero,
// below psd_floor raises NotPositive. Natural logarithm.
double von_neumann_entropy(const DensityMatrix& rho,
                           const Tolerances& tol = Tolerances::active());

// The measure: I = S(AA') + S(BB') - S(total), normalized by 4 ln d.
// Requires d_A = d_B (AsymmetricDimensions otherwise). Values within
// tol.ibar_violation of [0,1] are clamped; beyond raises InvariantViolation.
CorrelationReport i_bar(const ChoiState& choi, const Tolerances& tol = Tolerances::active());

// True iff the mutual information across AA'|BB' is below tol_mi (nats).
bool is_uncorrelated(const ChoiState& choi, double tol_mi);
bool is_uncorrelated(const ChoiState& choi);

// Index permutation <k l|U|m n> -> V with <k m|V|l n>; an involution.
// u must be d^2 x d^2.
ComplexMatrix reshuffle(const ComplexMatrix& u, int d);

// max entrywise |V V^dag - 1| for V = reshuffle(u).
double reshuffle_unitarity_defect(const ComplexMatrix& u, int d);

// Maximal-correlation test for unitaries: true iff the reshuffled matrix is
// unitary within tol_reshuffle. Throws NotUnitary if u itself is not unitary.
bool is_maximally_correlated(const ComplexMatrix& u, int d, double tol_reshuffle,
                             const Tolerances& tol = Tolerances::active());
bool is_maximally_correlated(const ComplexMatrix& u, int d);

// One monotonicity trial: measure of the bare channel and of
// (L_A (x) L_B) ch (R_A (x) R_B) with locals drawn from the ensemble.
struct LawTrial {
  double i_bar_before = 0.0;
  double i_bar_after = 0.0;
};

enum class LocalEnsemble {
  kraus,    // random CPT maps (2 Kraus operators each)
  unitary,  // random local unitaries (equality case of the law)
};

// Runs `trials` seeded random local compositions around ch. Trials are
// seeded independently (seed + index), so partitioning across workers
// cannot change the results.
std::vector<LawTrial> check_fundamental_law(const Channel& ch, int trials, std::uint64_t rng_seed,
                                            LocalEnsemble ensemble = LocalEnsemble::kraus);

// P_error = 1 - sqrt(<Phi|rho_CJ|Phi>), overlap with the identity map's
// Choi state.
double error_probability(const ChoiState& choi);

}  // namespace dyncorr
