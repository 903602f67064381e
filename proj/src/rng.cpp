#include "dyncorr/rng.hpp"

#include <cmath>

#include "dyncorr/errors.hpp"

namespace dyncorr {

double Rng::uniform() {
  // 53-bit mantissa from the top bits of the engine output.
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im);
}

Rng Rng::fork(std::uint64_t salt) const {
  // SplitMix64 on (engine seed material, salt); decorrelates trial streams.
  std::uint64_t z = salt + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= (z >> 31);
  std::mt19937_64 probe = eng_;  // copy; do not disturb this stream
  return Rng(probe() ^ z);
}

ComplexMatrix random_unitary(int d, Rng& rng) {
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();

  // Modified Gram-Schmidt on columns, one re-orthogonalization pass.
  for (int j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        Complex proj = 0.0;
        for (int i = 0; i < d; ++i) proj += std::conj(g(i, k)) * g(i, j);
        for (int i = 0; i < d; ++i) g(i, j) -= proj * g(i, k);
      }
    }
    double norm = 0.0;
    for (int i = 0; i < d; ++i) norm += std::norm(g(i, j));
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw NoConvergence("random_unitary: degenerate Gram-Schmidt column");
    for (int i = 0; i < d; ++i) g(i, j) /= norm;
  }
  return g;
}

Channel random_kraus_channel(int d, int n_ops, Rng& rng) {
  if (n_ops < 1) throw BadDimension("random_kraus_channel: need at least one operator");
  std::vector<ComplexMatrix> raw;
  raw.reserve(static_cast<size_t>(n_ops));
  for (int k = 0; k < n_ops; ++k) {
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = rng.complex_normal();
    raw.push_back(std::move(m));
  }

  ComplexMatrix gram(d, d);
  for (const auto& k : raw) gram += k.adjoint() * k;
  // inverse square root through the spectral decomposition
  const Spectrum spec = hermitian_eig(gram);
  ComplexMatrix scaled = spec.eigenvectors;
  for (int j = 0; j < d; ++j) {
    const double lam = spec.eigenvalues[static_cast<size_t>(j)];
    if (lam <= 0.0) throw NotPositive("random_kraus_channel: singular Kraus Gram matrix");
    const double f = 1.0 / std::sqrt(lam);
    for (int i = 0; i < d; ++i) scaled(i, j) *= f;
  }
  const ComplexMatrix inv_sqrt = scaled * spec.eigenvectors.adjoint();

  std::vector<ComplexMatrix> ops;
  ops.reserve(raw.size());
  for (const auto& k : raw) ops.push_back(k * inv_sqrt);
  return Channel::kraus(std::move(ops));
}

DensityMatrix random_density_matrix(const std::vector<int>& dims, Rng& rng) {
  int d = 1;
  for (int x : dims) d *= x;
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho *= Complex(1.0 / tr, 0.0);
  return DensityMatrix(std::move(rho), dims);
}

}  // namespace dyncorr
