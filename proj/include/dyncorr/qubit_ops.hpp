#pragma once

#include "dyncorr/complex_matrix.hpp"

namespace dyncorr {

// Single-qubit operators in the basis (|e>, |g>) = (index 0, index 1), so
// sigma_minus = |g><e| has its 1 in the lower-left corner.
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();

// op acting on qubit `which` of an n-qubit register (identity elsewhere).
ComplexMatrix embed_qubit_op(const ComplexMatrix& op, int which, int n_qubits);

// |k l> -> |l k> on a d x d bipartite space.
ComplexMatrix swap_gate(int d = 2);
// control on the first qubit.
ComplexMatrix cnot_gate();

}  // namespace dyncorr
