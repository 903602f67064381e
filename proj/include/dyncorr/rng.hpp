#pragma once

#include <cstdint>
#include <random>

#include "dyncorr/channel.hpp"

namespace dyncorr {

// Seeded random source with a platform-independent normal sampler
// (Box-Muller over the raw mt19937_64 stream; std::normal_distribution is
// implementation-defined and would break byte-identical reruns).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1).
  double uniform();
  double normal();
  Complex complex_normal();

  // Derives an independent stream, e.g. one per trial index.
  Rng fork(std::uint64_t salt) const;

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-ish random unitary: Gram-Schmidt on a standard-normal complex matrix.
ComplexMatrix random_unitary(int d, Rng& rng);

// Random CPT channel: n_ops Kraus operators with standard-normal complex
// entries, right-normalized by (sum K^dag K)^{-1/2}.
Channel random_kraus_channel(int d, int n_ops, Rng& rng);

// Random full-rank state G G^dag / Tr(G G^dag); test utility.
DensityMatrix random_density_matrix(const std::vector<int>& dims, Rng& rng);

}  // namespace dyncorr
