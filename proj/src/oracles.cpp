#include "dyncorr/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "dyncorr/errors.hpp"

namespace dyncorr::oracle {

namespace {

// det(M) by LU with partial pivoting; M is consumed.
Complex lu_det(ComplexMatrix m) {
  const int n = m.rows();
  Complex det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    if (std::abs(m(pivot, col)) == 0.0) return 0.0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      const Complex f = m(r, col) / m(col, col);
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

double charpoly_at(const ComplexMatrix& h, double x) {
  ComplexMatrix shifted = h;
  for (int i = 0; i < h.rows(); ++i) shifted(i, i) -= x;
  // real for Hermitian h up to roundoff
  return lu_det(std::move(shifted)).real();
}

}  // namespace

std::vector<double> charpoly_eigenvalues(const ComplexMatrix& h, double tol) {
  if (!h.is_square()) throw BadDimension("charpoly_eigenvalues: matrix not square");
  const int n = h.rows();

  // Gershgorin bound on the spectrum.
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(h(i, j));
    bound = std::max(bound, row);
  }
  bound += 1.0;

  // Scan for sign changes, then bisect each bracket.
  const int grid = 20000;
  std::vector<double> roots;
  double x_prev = -bound;
  double f_prev = charpoly_at(h, x_prev);
  for (int i = 1; i <= grid && static_cast<int>(roots.size()) < n; ++i) {
    const double x = -bound + 2.0 * bound * i / grid;
    const double f = charpoly_at(h, x);
    if (f_prev == 0.0) {
      roots.push_back(x_prev);
    } else if (f_prev * f < 0.0) {
      double lo = x_prev, hi = x, flo = f_prev;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = charpoly_at(h, mid);
        if (fmid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fmid < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fmid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    f_prev = f;
  }
  if (static_cast<int>(roots.size()) != n)
    throw NoConvergence("charpoly_eigenvalues: did not isolate all roots (degenerate spectrum?)");
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

ComplexMatrix partial_trace_bruteforce(const ComplexMatrix& rho, const std::vector<int>& dims,
                                       const std::vector<int>& keep) {
  const int n_sub = static_cast<int>(dims.size());
  std::vector<int> full_index_stride(n_sub, 1);
  for (int i = n_sub - 2; i >= 0; --i)
    full_index_stride[i] = full_index_stride[i + 1] * dims[i + 1];

  std::vector<bool> kept(n_sub, false);
  for (int k : keep) kept[static_cast<size_t>(k)] = true;

  long keep_total = 1;
  for (int i = 0; i < n_sub; ++i)
    if (kept[i]) keep_total *= dims[i];

  ComplexMatrix out(static_cast<int>(keep_total), static_cast<int>(keep_total));
  const long total = rho.rows();
  // Walk every (row, col) pair of the full matrix; accumulate the entries
  // whose traced sub-indices agree.
  for (long r = 0; r < total; ++r) {
    for (long c = 0; c < total; ++c) {
      long rr = r, cc = c;
      long out_r = 0, out_c = 0;
      bool diagonal_in_traced = true;
      for (int i = 0; i < n_sub; ++i) {
        const long sr = rr / full_index_stride[i];
        const long sc = cc / full_index_stride[i];
        rr %= full_index_stride[i];
        cc %= full_index_stride[i];
        if (kept[i]) {
          out_r = out_r * dims[i] + sr;
          out_c = out_c * dims[i] + sc;
        } else if (sr != sc) {
          diagonal_in_traced = false;
          break;
        }
      }
      if (diagonal_in_traced)
        out(static_cast<int>(out_r), static_cast<int>(out_c)) +=
            rho(static_cast<int>(r), static_cast<int>(c));
    }
  }
  return out;
}

ComplexMatrix apply_kraus_extended_bruteforce(const std::vector<ComplexMatrix>& kraus,
                                              const ComplexMatrix& rho, int dim_rest) {
  const int d_s = kraus.front().rows();
  const int total = d_s * dim_rest;
  if (rho.rows() != total) throw DimensionMismatch("apply_kraus_extended_bruteforce: dims");
  ComplexMatrix out(total, total);
  // out[(a,b),(c,e)] = sum_i sum_{a',c'} K_i[a,a'] rho[(a',b),(c',e)] conj(K_i[c,c'])
  for (const auto& k : kraus) {
    for (int a = 0; a < d_s; ++a)
      for (int b = 0; b < dim_rest; ++b)
        for (int c = 0; c < d_s; ++c)
          for (int e = 0; e < dim_rest; ++e) {
            Complex acc = 0.0;
            for (int ap = 0; ap < d_s; ++ap)
              for (int cp = 0; cp < d_s; ++cp)
                acc += k(a, ap) * rho(ap * dim_rest + b, cp * dim_rest + e) *
                       std::conj(k(c, cp));
            out(a * dim_rest + b, c * dim_rest + e) += acc;
          }
  }
  return out;
}

ComplexMatrix expm(const ComplexMatrix& a) {
  if (!a.is_square()) throw BadDimension("expm: matrix not square");
  const int n = a.rows();

  // 1-norm for the scaling decision.
  double norm1 = 0.0;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) col += std::abs(a(i, j));
    norm1 = std::max(norm1, col);
  }
  int squarings = 0;
  double scale = 1.0;
  while (norm1 * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }

  ComplexMatrix scaled = a;
  scaled *= Complex(scale, 0.0);

  // Taylor series; terms decay fast once the norm is < 1/2.
  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 60; ++k) {
    term = term * scaled;
    term *= Complex(1.0 / k, 0.0);
    sum += term;
    if (term.max_abs() < 1e-18 * std::max(1.0, sum.max_abs())) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

ComplexMatrix superoperator_matrix(const LindbladGenerator& gen) {
  const int n = gen.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix& h = gen.hamiltonian();

  // Row-stacking vec: vec(A rho B) = (A (x) B^t) vec(rho).
  ComplexMatrix super =
      Complex(0.0, -1.0) * (kron(h, id) - kron(id, h.transpose()));
  const auto& ls = gen.jump_ops();
  const int k = static_cast<int>(ls.size());
  for (int j = 0; j < k; ++j) {
    for (int kk = 0; kk < k; ++kk) {
      const Complex a = k > 0 ? gen.rates()(j, kk) : Complex(0.0, 0.0);
      if (a == Complex(0.0, 0.0)) continue;
      const ComplexMatrix& lj = ls[static_cast<size_t>(j)];
      const ComplexMatrix& lk = ls[static_cast<size_t>(kk)];
      const ComplexMatrix m = lj.adjoint() * lk;
      super += a * (kron(lk, lj.conjugate()) -
                    Complex(0.5, 0.0) * (kron(m, id) + kron(id, m.transpose())));
    }
  }
  return super;
}

ComplexMatrix evolve_superop_expm(const LindbladGenerator& gen, const ComplexMatrix& rho0,
                                  double t) {
  const int n = gen.dim();
  if (rho0.rows() != n || rho0.cols() != n)
    throw DimensionMismatch("evolve_superop_expm: state dimension mismatch");
  ComplexMatrix super = superoperator_matrix(gen);
  super *= Complex(t, 0.0);
  const ComplexMatrix propagator = expm(super);

  // vec(rho0) with row-stacking is exactly the row-major entry order.
  ComplexMatrix out(n, n);
  for (int i = 0; i < n * n; ++i) {
    Complex acc = 0.0;
    for (int j = 0; j < n * n; ++j)
      acc += propagator(i, j) * rho0.entries()[static_cast<size_t>(j)];
    out.entries()[static_cast<size_t>(i)] = acc;
  }
  return out;
}

double max_corr_sum_rule_defect(const ComplexMatrix& u, int d) {
  if (u.rows() != d * d || u.cols() != d * d)
    throw BadDimension("max_corr_sum_rule_defect: matrix must be d^2 x d^2");
  double worst = 0.0;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
          Complex acc = 0.0;
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
              acc += u(k * d + i, m * d + j) * std::conj(u(l * d + i, n * d + j));
          const Complex expected = (k == l && m == n) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
          worst = std::max(worst, std::abs(acc - expected));
        }
  return worst;
}

double bessel_j2_series(double x) {
  // j_2(x) = x^2 sum_k (-x^2/2)^k / (k! (2k+5)!!)
  double sum = 0.0;
  double term_factor = 1.0;  // (-x^2/2)^k / k!
  double double_fact = 15.0;  // (2k+5)!! at k = 0
  for (int k = 0; k < 50; ++k) {
    if (k > 0) {
      term_factor *= -x * x / 2.0 / k;
      double_fact *= 2 * k + 5;
    }
    sum += term_factor / double_fact;
  }
  return x * x * sum;
}

}  // namespace dyncorr::oracle
