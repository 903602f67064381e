#include "dyncorr/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dyncorr/errors.hpp"

namespace dyncorr {

namespace {

double offdiag_frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

long product_of(const std::vector<int>& dims) {
  long p = 1;
  for (int d : dims) p *= d;
  return p;
}

}  // namespace

ComplexMatrix Spectrum::reconstruct() const {
  const int n = eigenvectors.rows();
  ComplexMatrix scaled = eigenvectors;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) scaled(i, j) *= eigenvalues[static_cast<size_t>(j)];
  return scaled * eigenvectors.adjoint();
}

Spectrum hermitian_eig(const ComplexMatrix& m, const Tolerances& tol) {
  if (!m.is_square()) throw NotHermitian("hermitian_eig: matrix not square");
  if (m.hermiticity_defect() > tol.hermiticity)
    throw NotHermitian("hermitian_eig: matrix not Hermitian within tolerance");

  const int n = m.rows();
  // Work on the exactly Hermitian part so rotations stay unitary.
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  int sweep = 0;
  while (offdiag_frobenius(a) >= tol.eig_offdiag) {
    if (++sweep > tol.eig_max_sweeps)
      throw NoConvergence("hermitian_eig: off-diagonal norm above threshold after max sweeps");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex beta = a(p, q);
        const double ab = std::abs(beta);
        if (ab == 0.0) continue;
        const Complex u = beta / ab;  // phase of the pivot
        const double theta = (a(p, p).real() - a(q, q).real()) / (2.0 * ab);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex su = s * u;
        const Complex su_conj = std::conj(su);

        // A <- G^dag A G with G the (p,q)-plane rotation of phase u.
        for (int i = 0; i < n; ++i) {
          const Complex aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip + su_conj * aiq;
          a(i, q) = -su * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const Complex apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + su * aqj;
          a(q, j) = -su_conj * apj + c * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          const Complex vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip + su_conj * viq;
          v(i, q) = -su * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

  Spectrum spec;
  spec.eigenvalues.resize(n);
  spec.eigenvectors = ComplexMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    spec.eigenvalues[static_cast<size_t>(j)] = a(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) spec.eigenvectors(i, j) = v(i, order[j]);
  }
  return spec;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::vector<int> subsystem_dims,
                             const Tolerances& tol)
    : DensityMatrix(std::move(matrix), std::move(subsystem_dims), tol, tol.psd_floor) {}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::vector<int> subsystem_dims,
                             const Tolerances& tol, double psd_floor) {
  if (!matrix.is_square()) throw BadDimension("density matrix must be square");
  if (subsystem_dims.empty()) throw BadDimension("subsystem_dims must be nonempty");
  for (int d : subsystem_dims)
    if (d <= 0) throw BadDimension("subsystem dims must be positive");
  if (product_of(subsystem_dims) != matrix.rows())
    throw DimensionMismatch("product of subsystem dims must equal matrix dimension");
  if (matrix.hermiticity_defect() > tol.hermiticity)
    throw NotHermitian("density matrix not Hermitian within tolerance");
  if (std::abs(matrix.trace() - Complex(1.0, 0.0)) > tol.trace_one)
    throw InvariantViolation("density matrix trace not 1 within tolerance");
  const Spectrum spec = hermitian_eig(matrix, tol);
  if (spec.eigenvalues.back() < psd_floor)
    throw NotPositive("density matrix has eigenvalue below the positivity floor");
  mat_ = std::move(matrix);
  dims_ = std::move(subsystem_dims);
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix matrix, std::vector<int> subsystem_dims) {
  DensityMatrix rho;
  rho.mat_ = std::move(matrix);
  rho.dims_ = std::move(subsystem_dims);
  return rho;
}

DensityMatrix DensityMatrix::with_subsystem_dims(std::vector<int> dims) const {
  if (product_of(dims) != mat_.rows())
    throw DimensionMismatch("subsystem dims do not factor the matrix dimension");
  return unchecked(mat_, std::move(dims));
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const auto& x : mat_.entries()) s += std::norm(x);
  return s;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const auto& dims = rho.subsystem_dims();
  const int n_sub = static_cast<int>(dims.size());
  if (keep.empty()) throw BadSubsystemIndex("partial_trace: keep set is empty");
  std::vector<bool> kept(n_sub, false);
  for (int k : keep) {
    if (k < 0 || k >= n_sub) throw BadSubsystemIndex("partial_trace: subsystem index out of range");
    if (kept[k]) throw BadSubsystemIndex("partial_trace: duplicate subsystem index");
    kept[k] = true;
  }

  // Strides of each subsystem in the composite row-major index.
  std::vector<long> stride(n_sub, 1);
  for (int i = n_sub - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  std::vector<int> keep_sorted, traced;
  for (int i = 0; i < n_sub; ++i) (kept[i] ? keep_sorted : traced).push_back(i);

  std::vector<int> keep_dims, traced_dims;
  long keep_total = 1, traced_total = 1;
  for (int i : keep_sorted) {
    keep_dims.push_back(dims[i]);
    keep_total *= dims[i];
  }
  for (int i : traced) {
    traced_dims.push_back(dims[i]);
    traced_total *= dims[i];
  }

  // Composite offset of every kept / traced multi-index in the full space.
  const auto offsets = [](const std::vector<int>& sub_dims, const std::vector<int>& subs,
                          const std::vector<long>& strides, long total) {
    std::vector<long> out(static_cast<size_t>(total), 0);
    for (long x = 0; x < total; ++x) {
      long rem = x, off = 0;
      for (int i = static_cast<int>(sub_dims.size()) - 1; i >= 0; --i) {
        off += (rem % sub_dims[i]) * strides[static_cast<size_t>(subs[i])];
        rem /= sub_dims[i];
      }
      out[static_cast<size_t>(x)] = off;
    }
    return out;
  };
  const std::vector<long> keep_off = offsets(keep_dims, keep_sorted, stride, keep_total);
  const std::vector<long> traced_off = offsets(traced_dims, traced, stride, traced_total);

  ComplexMatrix out(static_cast<int>(keep_total), static_cast<int>(keep_total));
  const ComplexMatrix& m = rho.matrix();
  for (long r = 0; r < keep_total; ++r)
    for (long c = 0; c < keep_total; ++c) {
      Complex acc = 0.0;
      for (long t = 0; t < traced_total; ++t)
        acc += m(static_cast<int>(keep_off[r] + traced_off[t]),
                 static_cast<int>(keep_off[c] + traced_off[t]));
      out(static_cast<int>(r), static_cast<int>(c)) = acc;
    }
  return DensityMatrix::unchecked(std::move(out), keep_dims);
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& perm) {
  const auto& dims = rho.subsystem_dims();
  const int n_sub = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != n_sub)
    throw BadPermutation("permute_subsystems: wrong permutation length");
  std::vector<bool> seen(n_sub, false);
  for (int p : perm) {
    if (p < 0 || p >= n_sub || seen[p]) throw BadPermutation("permute_subsystems: not a permutation");
    seen[p] = true;
  }

  std::vector<long> stride(n_sub, 1);
  for (int i = n_sub - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  std::vector<int> new_dims(n_sub);
  for (int i = 0; i < n_sub; ++i) new_dims[i] = dims[perm[i]];

  const long total = rho.dim();
  // source composite index for every destination index
  std::vector<long> src(static_cast<size_t>(total), 0);
  for (long x = 0; x < total; ++x) {
    long rem = x, off = 0;
    for (int i = n_sub - 1; i >= 0; --i) {
      off += (rem % new_dims[i]) * stride[static_cast<size_t>(perm[i])];
      rem /= new_dims[i];
    }
    src[static_cast<size_t>(x)] = off;
  }

  ComplexMatrix out(static_cast<int>(total), static_cast<int>(total));
  const ComplexMatrix& m = rho.matrix();
  for (long r = 0; r < total; ++r)
    for (long c = 0; c < total; ++c)
      out(static_cast<int>(r), static_cast<int>(c)) =
          m(static_cast<int>(src[r]), static_cast<int>(src[c]));
  return DensityMatrix::unchecked(std::move(out), new_dims);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("trace_distance: dimension mismatch");
  const ComplexMatrix diff = a.matrix() - b.matrix();
  const Spectrum spec = hermitian_eig(diff);
  double s = 0.0;
  for (double lam : spec.eigenvalues) s += std::abs(lam);
  return 0.5 * s;
}

}  // namespace dyncorr
