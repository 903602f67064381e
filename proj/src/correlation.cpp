#include "dyncorr/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "dyncorr/errors.hpp"
#include "dyncorr/rng.hpp"

namespace dyncorr {

double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol) {
  const Spectrum spec = hermitian_eig(rho.matrix(), tol);
  double s = 0.0;
  for (double lam : spec.eigenvalues) {
    if (lam < tol.psd_floor)
      throw NotPositive("von_neumann_entropy: eigenvalue below positivity floor");
    if (lam <= 0.0) continue;  // 0 ln 0 = 0
    s -= lam * std::log(lam);
  }
  return s;
}

CorrelationReport i_bar(const ChoiState& choi, const Tolerances& tol) {
  if (choi.d_A() != choi.d_B())
    throw AsymmetricDimensions("i_bar requires d_A = d_B");
  const int d = choi.d_A();

  CorrelationReport rep;
  rep.d = d;
  rep.entropy_AA = von_neumann_entropy(partial_trace(choi.state(), {0, 2}), tol);
  rep.entropy_BB = von_neumann_entropy(partial_trace(choi.state(), {1, 3}), tol);
  rep.entropy_total = von_neumann_entropy(choi.state(), tol);
  rep.mutual_information = rep.entropy_AA + rep.entropy_BB - rep.entropy_total;

  const double raw = rep.mutual_information / (4.0 * std::log(static_cast<double>(d)));
  if (raw < -tol.ibar_violation || raw > 1.0 + tol.ibar_violation)
    throw InvariantViolation("i_bar outside [0,1] beyond the roundoff band");
  rep.i_bar = std::clamp(raw, 0.0, 1.0);
  return rep;
}

bool is_uncorrelated(const ChoiState& choi, double tol_mi) {
  return i_bar(choi).mutual_information < tol_mi;
}

bool is_uncorrelated(const ChoiState& choi) {
  return is_uncorrelated(choi, Tolerances::active().uncorrelated_mi);
}

ComplexMatrix reshuffle(const ComplexMatrix& u, int d) {
  if (u.rows() != d * d || u.cols() != d * d)
    throw BadDimension("reshuffle: matrix must be d^2 x d^2");
  ComplexMatrix v(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) v(k * d + m, l * d + n) = u(k * d + l, m * d + n);
  return v;
}

double reshuffle_unitarity_defect(const ComplexMatrix& u, int d) {
  return reshuffle(u, d).unitarity_defect();
}

bool is_maximally_correlated(const ComplexMatrix& u, int d, double tol_reshuffle,
                             const Tolerances& tol) {
  if (u.rows() != d * d || u.cols() != d * d)
    throw BadDimension("is_maximally_correlated: matrix must be d^2 x d^2");
  if (u.unitarity_defect() > tol.unitarity)
    throw NotUnitary("is_maximally_correlated: input is not unitary");
  return reshuffle_unitarity_defect(u, d) <= tol_reshuffle;
}

bool is_maximally_correlated(const ComplexMatrix& u, int d) {
  return is_maximally_correlated(u, d, Tolerances::active().reshuffle_unitarity);
}

namespace {

Channel random_local_pair(int d, Rng& rng, LocalEnsemble ensemble) {
  if (ensemble == LocalEnsemble::unitary) {
    const ComplexMatrix ua = random_unitary(d, rng);
    const ComplexMatrix ub = random_unitary(d, rng);
    return Channel::unitary(kron(ua, ub));
  }
  const Channel ea = random_kraus_channel(d, 2, rng);
  const Channel eb = random_kraus_channel(d, 2, rng);
  return tensor_channels(ea, eb);
}

}  // namespace

std::vector<LawTrial> check_fundamental_law(const Channel& ch, int trials, std::uint64_t rng_seed,
                                            LocalEnsemble ensemble) {
  if (trials < 1) throw BadDimension("check_fundamental_law: trials must be >= 1");
  const int d2 = ch.dim();
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(d2))));
  if (d * d != d2) throw BadDimension("check_fundamental_law: channel dim is not a square");

  const double before = i_bar(choi_state(ch, d, d)).i_bar;

  std::vector<LawTrial> out(static_cast<size_t>(trials));
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(rng_seed + static_cast<std::uint64_t>(trial));
    const Channel left = random_local_pair(d, rng, ensemble);
    const Channel right = random_local_pair(d, rng, ensemble);
    const Channel composed = compose(left, compose(ch, right));
    const double after = i_bar(choi_state(composed, d, d)).i_bar;
    out[static_cast<size_t>(trial)] = LawTrial{before, after};
  }
  return out;
}

double error_probability(const ChoiState& choi) {
  const DensityMatrix& rho = choi.state();
  const int d2 = choi.d_A() * choi.d_B();
  // <Phi|rho|Phi> with |Phi> = d2^{-1/2} sum_j |j j>
  Complex overlap = 0.0;
  for (int j = 0; j < d2; ++j)
    for (int k = 0; k < d2; ++k) overlap += rho.matrix()(j * d2 + j, k * d2 + k);
  double fidelity = overlap.real() / d2;
  fidelity = std::clamp(fidelity, 0.0, 1.0);
  return 1.0 - std::sqrt(fidelity);
}

}  // namespace dyncorr
