#pragma once

#include "dyncorr/density.hpp"
#include "dyncorr/lindblad.hpp"

// Independent verification routes. Nothing here feeds production results;
// these exist so the main code paths can be checked against structurally
// different algorithms (self-test suite and unit tests).
namespace dyncorr::oracle {

// Eigenvalues of a Hermitian matrix via sign changes of det(H - x 1)
// (LU-evaluated characteristic polynomial, grid scan + bisection).
// Returns descending eigenvalues; assumes simple spectra.
std::vector<double> charpoly_eigenvalues(const ComplexMatrix& h, double tol = 1e-12);

// Reduced state by explicit multi-index summation.
ComplexMatrix partial_trace_bruteforce(const ComplexMatrix& rho, const std::vector<int>& dims,
                                       const std::vector<int>& keep);

// sum_i (K_i (x) 1) rho (K_i (x) 1)^dag by explicit index summation over
// the first tensor factor.
ComplexMatrix apply_kraus_extended_bruteforce(const std::vector<ComplexMatrix>& kraus,
                                              const ComplexMatrix& rho, int dim_rest);

// Dense matrix exponential: scaling and squaring with a Taylor core.
ComplexMatrix expm(const ComplexMatrix& a);

// Vectorized superoperator of the generator (row-stacking convention).
ComplexMatrix superoperator_matrix(const LindbladGenerator& gen);

// rho(t) = reshape(expm(t L_super) vec(rho0)); the matrix-exponential
// evolution route.
ComplexMatrix evolve_superop_expm(const LindbladGenerator& gen, const ComplexMatrix& rho0,
                                  double t);

// Left side of the maximal-correlation sum rule
// sum_ij <k i|U|m j><n j|U^dag|l i> compared against delta_kl delta_mn;
// returns the max deviation.
double max_corr_sum_rule_defect(const ComplexMatrix& u, int d);

// Taylor-series spherical Bessel j2 (50 terms).
double bessel_j2_series(double x);

}  // namespace dyncorr::oracle
