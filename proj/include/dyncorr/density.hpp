#pragma once

#include <vector>

#include "dyncorr/complex_matrix.hpp"
#include "dyncorr/tolerances.hpp"

namespace dyncorr {

// Full spectrum of a Hermitian matrix. Eigenvalues descending; eigenvector
// columns orthonormal and ordered to match.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

// Cyclic Jacobi diagonalization of a complex Hermitian matrix. Sweeps until
// the off-diagonal Frobenius norm drops below tol.eig_offdiag, at most
// tol.eig_max_sweeps sweeps. Throws NotHermitian / NoConvergence.
Spectrum hermitian_eig(const ComplexMatrix& m, const Tolerances& tol = Tolerances::active());

// Hermitian, unit-trace, positive-semidefinite matrix tagged with an ordered
// list of subsystem dimensions (row-major composite indexing: the first
// subsystem varies slowest).
class DensityMatrix {
 public:
  // Validates Hermiticity, trace and positivity. psd_floor overrides
  // tol.psd_floor when negative eigenvalues up to a looser bound are
  // acceptable (integrator outputs).
  DensityMatrix(ComplexMatrix matrix, std::vector<int> subsystem_dims,
                const Tolerances& tol = Tolerances::active());
  DensityMatrix(ComplexMatrix matrix, std::vector<int> subsystem_dims, const Tolerances& tol,
                double psd_floor);

  // Wraps without any validation; for internal paths where validity is
  // established by construction.
  static DensityMatrix unchecked(ComplexMatrix matrix, std::vector<int> subsystem_dims);

  const ComplexMatrix& matrix() const { return mat_; }
  const std::vector<int>& subsystem_dims() const { return dims_; }
  int dim() const { return mat_.rows(); }

  // Same matrix, new subsystem split (product must equal the dimension).
  DensityMatrix with_subsystem_dims(std::vector<int> dims) const;

  double purity() const;

 private:
  DensityMatrix() = default;
  ComplexMatrix mat_;
  std::vector<int> dims_;
};

// Reduced density matrix over the kept subsystems, in their original
// relative order. keep: subsystem indices, duplicates rejected.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Conjugation by the permutation unitary: output position i holds input
// subsystem perm[i].
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& perm);

// (1/2) sum |eigenvalues(a - b)|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace dyncorr
