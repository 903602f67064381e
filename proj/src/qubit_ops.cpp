#include "dyncorr/qubit_ops.hpp"

#include "dyncorr/errors.hpp"

namespace dyncorr {

ComplexMatrix sigma_x() { return {{0, 1}, {1, 0}}; }
ComplexMatrix sigma_y() { return {{0, Complex(0, -1)}, {Complex(0, 1), 0}}; }
ComplexMatrix sigma_z() { return {{1, 0}, {0, -1}}; }
ComplexMatrix sigma_plus() { return {{0, 1}, {0, 0}}; }
ComplexMatrix sigma_minus() { return {{0, 0}, {1, 0}}; }

ComplexMatrix embed_qubit_op(const ComplexMatrix& op, int which, int n_qubits) {
  if (which < 0 || which >= n_qubits) throw BadSubsystemIndex("embed_qubit_op: bad qubit index");
  ComplexMatrix out = ComplexMatrix::identity(1 << which);
  out = kron(out, op);
  const int trailing = n_qubits - which - 1;
  if (trailing > 0) out = kron(out, ComplexMatrix::identity(1 << trailing));
  return out;
}

ComplexMatrix swap_gate(int d) {
  ComplexMatrix u(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) u(l * d + k, k * d + l) = 1.0;
  return u;
}

ComplexMatrix cnot_gate() {
  return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
}

}  // namespace dyncorr
