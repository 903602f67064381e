#include "dyncorr/channel.hpp"

#include <cmath>

#include "dyncorr/errors.hpp"

namespace dyncorr {

Channel Channel::unitary(ComplexMatrix u, const Tolerances& tol) {
  if (!u.is_square()) throw BadDimension("unitary channel: matrix not square");
  if (u.unitarity_defect() > tol.unitarity)
    throw NotUnitary("unitary channel: U U^dag != 1 within tolerance");
  const int d = u.rows();
  std::vector<ComplexMatrix> ops;
  ops.push_back(std::move(u));
  return Channel(Kind::unitary, d, std::move(ops));
}

Channel Channel::kraus(std::vector<ComplexMatrix> ops, const Tolerances& tol) {
  if (ops.empty()) throw BadDimension("kraus channel: empty operator list");
  const int d = ops.front().rows();
  for (const auto& k : ops)
    if (k.rows() != d || k.cols() != d)
      throw DimensionMismatch("kraus channel: operators must be square with equal dims");
  ComplexMatrix sum(d, d);
  for (const auto& k : ops) sum += k.adjoint() * k;
  if (max_abs_diff(sum, ComplexMatrix::identity(d)) > tol.kraus_completeness)
    throw InvariantViolation("kraus channel: sum K^dag K != 1 within tolerance");
  return Channel(Kind::kraus, d, std::move(ops));
}

Channel Channel::identity(int dim) { return Channel::unitary(ComplexMatrix::identity(dim)); }

const ComplexMatrix& Channel::unitary_matrix() const {
  if (kind_ != Kind::unitary) throw InvariantViolation("channel is not unitary");
  return ops_.front();
}

ChoiState::ChoiState(DensityMatrix state, const Tolerances& tol) : state_(std::move(state)) {
  const auto& dims = state_.subsystem_dims();
  if (dims.size() != 4 || dims[0] != dims[2] || dims[1] != dims[3])
    throw BadDimension("Choi state requires subsystem dims [d_A, d_B, d_A, d_B]");
  // Trace preservation of the represented map: ancilla marginal is I/d^2.
  const DensityMatrix marginal = partial_trace(state_, {2, 3});
  const int d2 = marginal.dim();
  ComplexMatrix expected = ComplexMatrix::identity(d2);
  expected *= Complex(1.0 / d2, 0.0);
  if (max_abs_diff(marginal.matrix(), expected) > tol.choi_marginal)
    throw InvariantViolation("Choi state: ancilla marginal differs from I/d^2");
}

DensityMatrix max_entangled_state(int d) {
  if (d < 2) throw BadDimension("max_entangled_state: d must be >= 2");
  const double amp = 1.0 / d;  // <jj|rho|kk> = 1/d for all j,k
  ComplexMatrix m(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) m(j * d + j, k * d + k) = amp;
  return DensityMatrix(std::move(m), {d, d});
}

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
  if (ch.dim() != rho.dim()) throw DimensionMismatch("apply: channel/state dimension mismatch");
  ComplexMatrix out(rho.dim(), rho.dim());
  for (const auto& k : ch.operators()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(std::move(out), rho.subsystem_dims());
}

DensityMatrix apply_to_S(const Channel& ch, const DensityMatrix& rho,
                         const std::vector<int>& s_subsystems) {
  const auto& dims = rho.subsystem_dims();
  for (size_t i = 0; i < s_subsystems.size(); ++i)
    if (s_subsystems[i] != static_cast<int>(i))
      throw DimensionMismatch("apply_to_S: channel must act on a leading contiguous block");
  if (s_subsystems.empty() || s_subsystems.size() > dims.size())
    throw DimensionMismatch("apply_to_S: bad subsystem set");
  long d_s = 1, d_rest = 1;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (i < s_subsystems.size())
      d_s *= dims[i];
    else
      d_rest *= dims[i];
  }
  if (ch.dim() != d_s) throw DimensionMismatch("apply_to_S: channel dim != product of S dims");

  const ComplexMatrix id_rest = ComplexMatrix::identity(static_cast<int>(d_rest));
  ComplexMatrix out(rho.dim(), rho.dim());
  for (const auto& k : ch.operators()) {
    const ComplexMatrix k_ext = kron(k, id_rest);
    out += k_ext * rho.matrix() * k_ext.adjoint();
  }
  return DensityMatrix(std::move(out), dims);
}

ChoiState choi_state(const Channel& ch, int d_A, int d_B, const Tolerances& tol) {
  if (ch.dim() != d_A * d_B) throw DimensionMismatch("choi_state: channel dim != d_A*d_B");
  const DensityMatrix phi = max_entangled_state(d_A * d_B);
  DensityMatrix evolved = apply_to_S(ch, phi, {0});
  return ChoiState(evolved.with_subsystem_dims({d_A, d_B, d_A, d_B}), tol);
}

DensityMatrix single_party_choi(const Channel& ch) {
  return apply_to_S(ch, max_entangled_state(ch.dim()), {0});
}

Channel tensor_channels(const Channel& a, const Channel& b) {
  if (a.is_unitary() && b.is_unitary())
    return Channel::unitary(kron(a.unitary_matrix(), b.unitary_matrix()));
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.operators().size() * b.operators().size());
  for (const auto& ka : a.operators())
    for (const auto& kb : b.operators()) ops.push_back(kron(ka, kb));
  return Channel::kraus(std::move(ops));
}

Channel compose(const Channel& outer, const Channel& inner) {
  if (outer.dim() != inner.dim()) throw DimensionMismatch("compose: dimension mismatch");
  if (outer.is_unitary() && inner.is_unitary())
    return Channel::unitary(outer.unitary_matrix() * inner.unitary_matrix());
  std::vector<ComplexMatrix> ops;
  ops.reserve(outer.operators().size() * inner.operators().size());
  for (const auto& o : outer.operators())
    for (const auto& i : inner.operators()) ops.push_back(o * i);
  return Channel::kraus(std::move(ops));
}

}  // namespace dyncorr
