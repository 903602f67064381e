#pragma once

#include "dyncorr/channel.hpp"
#include "dyncorr/lindblad.hpp"

namespace dyncorr {

// Two identical two-level atoms radiating into the electromagnetic vacuum.
// Natural units: omega sets the frequency scale, r is measured in 1/omega.
struct TwoAtomParams {
  double omega = 1.0;        // transition frequency
  double dipole_norm = 2.0;  // |d|; default matches omega = |d|/2 = 1
  double r = 1.0;            // interatomic distance
  double theta = 0.0;        // angle between dipole and separation vector

  // gamma0 = (4/3) omega^3 |d|^2, the single-atom decay rate.
  double gamma0() const { return 4.0 / 3.0 * omega * omega * omega * dipole_norm * dipole_norm; }
};

// Two qubits with a residual ZZ coupling, each damped by a local thermal
// bath of temperature T (units of omega).
struct ZZThermalParams {
  double omega = 1.0;
  double J = 1.0;           // ZZ coupling strength
  double gamma0 = 4.0 / 3;  // decay rate
  double T = 0.0;           // bath temperature; T = 0 means nbar = 0
  // The error model drops the local (omega/2)(sz1+sz2) term, which is not a
  // source of error.
  bool include_local_hamiltonian = true;

  double nbar() const;  // Bose-Einstein mean occupation at frequency omega
};

double spherical_bessel_j0(double x);
double spherical_bessel_j2(double x);

// Decay-rate matrix a_jk = gamma0 [j0(x) + P2(cos theta) j2(x)], x = omega r;
// diagonal gamma0. Symmetric and PSD for all r >= 0.
ComplexMatrix two_atom_rates(const TwoAtomParams& p);

// H = (omega/2)(sz1 + sz2), jumps [sigma1^-, sigma2^-], rates from
// two_atom_rates.
LindbladGenerator two_atom_generator(const TwoAtomParams& p);

// t -> infinity limit of the two-atom dynamics at r > 0: E (x) E with
// E(.) = K1 . K1^dag + K2 . K2^dag, K1 = |g><e|, K2 = |g><g|.
Channel two_atom_asymptotic_channel();

// H = (omega/2)(sz1 + sz2) [optional] + J sz1 sz2; jump ops
// [s1^-, s2^-, s1^+, s2^+] with rates diag(g(n+1), g(n+1), g n, g n).
LindbladGenerator zz_thermal_generator(const ZZThermalParams& p);

}  // namespace dyncorr
