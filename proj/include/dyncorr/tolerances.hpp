#pragma once

namespace dyncorr {

// Numeric tolerance configuration. One record drives every validity check in
// the library; the defaults below are the contract values. The "strict"
// profile (env DYNCORR_TOLERANCE_PROFILE=strict) tightens the validation
// thresholds by a factor of ten without touching the integrator limits.
struct Tolerances {
  // State / operator validity.
  double hermiticity = 1e-10;         // max entrywise |M - M^dag|
  double trace_one = 1e-9;            // |Tr(rho) - 1|
  double psd_floor = -1e-10;          // min eigenvalue of a state
  double unitarity = 1e-10;           // max entrywise |U U^dag - 1|
  double kraus_completeness = 1e-9;   // max entrywise |sum K^dag K - 1|

  // Eigensolver.
  double eig_offdiag = 1e-12;         // off-diagonal Frobenius target
  int eig_max_sweeps = 100;
  double eig_reconstruction = 1e-8;   // V diag(w) V^dag vs input, entrywise

  // Channel / Choi checks.
  double choi_marginal = 1e-9;        // ancilla marginal vs I/d^2
  double purity = 1e-9;

  // Correlation measure.
  double uncorrelated_mi = 1e-8;      // mutual-information threshold, nats
  double reshuffle_unitarity = 1e-8;  // maximal-correlation test
  double ibar_clamp = 1e-9;           // roundoff band silently clamped
  double ibar_violation = 1e-6;       // beyond this: InvariantViolation

  // Lindblad evolution.
  double rate_psd_floor = -1e-10;       // rate-matrix eigenvalue floor
  double trace_drift = 1e-8;            // renormalization limit
  double trajectory_psd_floor = -1e-8;  // positivity along trajectories

  static Tolerances defaults() { return Tolerances{}; }
  static Tolerances strict();

  // Profile selected by DYNCORR_TOLERANCE_PROFILE ("default" | "strict").
  // Resolved once on first use.
  static const Tolerances& active();
};

}  // namespace dyncorr
