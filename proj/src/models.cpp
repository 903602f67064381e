#include "dyncorr/models.hpp"

#include <cmath>

#include "dyncorr/errors.hpp"
#include "dyncorr/qubit_ops.hpp"

namespace dyncorr {

double ZZThermalParams::nbar() const {
  if (T < 0.0) throw BadDimension("ZZThermalParams: temperature must be >= 0");
  if (T < 1e-6 * omega) return 0.0;  // guards exp overflow; indistinguishable from T = 0
  return 1.0 / std::expm1(omega / T);
}

double spherical_bessel_j0(double x) {
  if (x < 0.0) throw BadDimension("spherical_bessel_j0: x must be >= 0");
  if (x < 1e-4) return 1.0 - x * x / 6.0;  // series; the formula cancels near 0
  return std::sin(x) / x;
}

double spherical_bessel_j2(double x) {
  if (x < 0.0) throw BadDimension("spherical_bessel_j2: x must be >= 0");
  if (x < 1e-4) return x * x / 15.0;
  return (3.0 / (x * x * x) - 1.0 / x) * std::sin(x) - 3.0 / (x * x) * std::cos(x);
}

ComplexMatrix two_atom_rates(const TwoAtomParams& p) {
  if (p.omega <= 0.0 || p.dipole_norm <= 0.0 || p.r < 0.0)
    throw BadDimension("two_atom_rates: invalid parameters");
  const double g0 = p.gamma0();
  const double x = p.omega * p.r;
  const double cos_theta = std::cos(p.theta);
  const double p2 = 0.5 * (3.0 * cos_theta * cos_theta - 1.0);
  const double off = g0 * (spherical_bessel_j0(x) + p2 * spherical_bessel_j2(x));
  return {{g0, off}, {off, g0}};
}

LindbladGenerator two_atom_generator(const TwoAtomParams& p) {
  const ComplexMatrix h =
      Complex(0.5 * p.omega, 0.0) *
      (embed_qubit_op(sigma_z(), 0, 2) + embed_qubit_op(sigma_z(), 1, 2));
  std::vector<ComplexMatrix> jumps = {embed_qubit_op(sigma_minus(), 0, 2),
                                      embed_qubit_op(sigma_minus(), 1, 2)};
  return LindbladGenerator(h, std::move(jumps), two_atom_rates(p));
}

Channel two_atom_asymptotic_channel() {
  const ComplexMatrix k1 = {{0, 0}, {1, 0}};
  const ComplexMatrix k2 = {{0, 0}, {0, 1}};
  const Channel single = Channel::kraus({k1, k2});
  return tensor_channels(single, single);
}

LindbladGenerator zz_thermal_generator(const ZZThermalParams& p) {
  if (p.gamma0 <= 0.0) throw BadDimension("zz_thermal_generator: gamma0 must be > 0");
  const ComplexMatrix sz1 = embed_qubit_op(sigma_z(), 0, 2);
  const ComplexMatrix sz2 = embed_qubit_op(sigma_z(), 1, 2);
  ComplexMatrix h = Complex(p.J, 0.0) * (sz1 * sz2);
  if (p.include_local_hamiltonian) h += Complex(0.5 * p.omega, 0.0) * (sz1 + sz2);

  std::vector<ComplexMatrix> jumps = {
      embed_qubit_op(sigma_minus(), 0, 2), embed_qubit_op(sigma_minus(), 1, 2),
      embed_qubit_op(sigma_plus(), 0, 2), embed_qubit_op(sigma_plus(), 1, 2)};
  const double n = p.nbar();
  const double down = p.gamma0 * (n + 1.0);
  const double up = p.gamma0 * n;
  ComplexMatrix rates(4, 4);
  rates(0, 0) = down;
  rates(1, 1) = down;
  rates(2, 2) = up;
  rates(3, 3) = up;
  return LindbladGenerator(h, std::move(jumps), std::move(rates));
}

}  // namespace dyncorr
