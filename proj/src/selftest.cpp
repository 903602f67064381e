#include "dyncorr/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "dyncorr/correlation.hpp"
#include "dyncorr/errors.hpp"
#include "dyncorr/experiments.hpp"
#include "dyncorr/models.hpp"
#include "dyncorr/oracles.hpp"
#include "dyncorr/qubit_ops.hpp"
#include "dyncorr/rng.hpp"

namespace dyncorr {

namespace {

struct Suite {
  std::ostream& out;
  int failures = 0;

  void run(const std::string& name, const std::function<void()>& body) {
    try {
      body();
      out << "PASS  " << name << '\n';
    } catch (const std::exception& e) {
      ++failures;
      out << "FAIL  " << name << ": " << e.what() << '\n';
    }
  }
};

void require(bool cond, const std::string& what) {
  if (!cond) throw InvariantViolation(what);
}

double measure_of(const Channel& ch) { return i_bar(choi_state(ch, 2, 2)).i_bar; }

}  // namespace

int run_selftest(std::uint64_t seed, std::ostream& out) {
  Suite suite{out};
  Rng rng(seed);

  suite.run("property_i_product_channels_uncorrelated", [&] {
    for (int k = 0; k < 5; ++k) {
      const Channel prod = tensor_channels(random_kraus_channel(2, 2, rng),
                                           random_kraus_channel(2, 2, rng));
      const ChoiState choi = choi_state(prod, 2, 2);
      require(i_bar(choi).i_bar < 1e-8, "product channel has i_bar >= 1e-8");
      require(is_uncorrelated(choi), "product channel not flagged uncorrelated");
    }
  });

  suite.run("property_i_correlated_channels_detected", [&] {
    const double swap_value = measure_of(Channel::unitary(swap_gate()));
    const double cnot_value = measure_of(Channel::unitary(cnot_gate()));
    require(std::abs(swap_value - 1.0) < 1e-9, "swap should measure 1");
    require(std::abs(cnot_value - 0.5) < 1e-9, "controlled-NOT should measure 1/2");
  });

  suite.run("property_ii_measure_within_unit_interval", [&] {
    for (int k = 0; k < 8; ++k) {
      const Channel ch = (k % 2 == 0) ? random_kraus_channel(4, 2, rng)
                                      : Channel::unitary(random_unitary(4, rng));
      const CorrelationReport rep = i_bar(choi_state(ch, 2, 2));
      require(rep.i_bar >= 0.0 && rep.i_bar <= 1.0, "i_bar outside [0,1]");
      require(rep.mutual_information >= -1e-9, "negative mutual information");
    }
  });

  suite.run("property_iii_no_increase_under_local_composition", [&] {
    for (const Channel& base :
         {Channel::unitary(cnot_gate()), random_kraus_channel(4, 2, rng)}) {
      for (const LawTrial& trial : check_fundamental_law(base, 20, seed))
        require(trial.i_bar_after <= trial.i_bar_before + 1e-8,
                "measure increased under local composition");
    }
  });

  suite.run("property_iii_equality_for_local_unitaries", [&] {
    for (const Channel& base :
         {Channel::unitary(swap_gate()), Channel::unitary(cnot_gate())}) {
      for (const LawTrial& trial :
           check_fundamental_law(base, 10, seed, LocalEnsemble::unitary))
        require(std::abs(trial.i_bar_after - trial.i_bar_before) < 1e-9,
                "local unitaries changed the measure");
    }
  });

  suite.run("choi_factorization_of_product_channels", [&] {
    for (int k = 0; k < 5; ++k) {
      const Channel ea = random_kraus_channel(2, 2, rng);
      const Channel eb = random_kraus_channel(2, 2, rng);
      const ChoiState joint = choi_state(tensor_channels(ea, eb), 2, 2);
      const DensityMatrix prod = DensityMatrix::unchecked(
          kron(single_party_choi(ea).matrix(), single_party_choi(eb).matrix()), {2, 2, 2, 2});
      const DensityMatrix swapped = permute_subsystems(prod, {0, 2, 1, 3});
      require(trace_distance(joint.state(), swapped) < 1e-10,
              "Choi state does not factor through the subsystem swap");
    }
  });

  suite.run("maximal_correlation_pool_consistency", [&] {
    const auto agree = [&](const ComplexMatrix& u, bool expect_max) {
      const bool by_reshuffle = is_maximally_correlated(u, 2);
      const double value = i_bar(choi_state(Channel::unitary(u), 2, 2)).i_bar;
      const bool by_measure = std::abs(value - 1.0) < 1e-6;
      require(by_reshuffle == expect_max && by_measure == expect_max,
              "reshuffle test and measure disagree");
    };
    for (int k = 0; k < 5; ++k) {
      const ComplexMatrix dressed = kron(random_unitary(2, rng), random_unitary(2, rng)) *
                                    swap_gate() *
                                    kron(random_unitary(2, rng), random_unitary(2, rng));
      agree(dressed, true);
    }
    agree(ComplexMatrix::identity(4), false);
    agree(cnot_gate(), false);
    for (int k = 0; k < 5; ++k) agree(random_unitary(4, rng), false);
  });

  suite.run("integrator_matches_superoperator_exponential", [&] {
    TwoAtomParams atoms;
    atoms.r = 0.1;
    const LindbladGenerator two_atom = extend_for_choi(two_atom_generator(atoms));
    ZZThermalParams zz;
    zz.T = 0.5;
    const LindbladGenerator thermal = extend_for_choi(zz_thermal_generator(zz));
    const DensityMatrix phi = max_entangled_state(4);
    const struct {
      const LindbladGenerator* gen;
      double t;
    } cases[] = {{&two_atom, 1.0 / atoms.gamma0()}, {&thermal, 0.3 / zz.gamma0}};
    for (const auto& c : cases) {
      const DensityMatrix rk4 = evolve(*c.gen, phi, EvolutionConfig::to_time(c.t));
      ComplexMatrix expected = oracle::evolve_superop_expm(*c.gen, phi.matrix(), c.t);
      const DensityMatrix reference =
          DensityMatrix::unchecked(std::move(expected), phi.subsystem_dims());
      require(trace_distance(rk4, reference) < 1e-6,
              "RK4 and matrix-exponential trajectories disagree");
    }
  });

  suite.run("eigensolver_matches_charpoly_roots", [&] {
    for (int k = 0; k < 3; ++k) {
      ComplexMatrix g(4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = rng.complex_normal();
      const ComplexMatrix h = g + g.adjoint();
      const Spectrum spec = hermitian_eig(h);
      const std::vector<double> roots = oracle::charpoly_eigenvalues(h);
      for (size_t i = 0; i < roots.size(); ++i)
        require(std::abs(spec.eigenvalues[i] - roots[i]) < 1e-8,
                "eigenvalue differs from characteristic-polynomial root");
    }
  });

  suite.run("partial_trace_matches_bruteforce", [&] {
    const DensityMatrix rho = random_density_matrix({2, 2, 2, 2}, rng);
    const DensityMatrix reduced = partial_trace(rho, {0, 2});
    const ComplexMatrix expected =
        oracle::partial_trace_bruteforce(rho.matrix(), {2, 2, 2, 2}, {0, 2});
    require(max_abs_diff(reduced.matrix(), expected) < 1e-12,
            "partial trace differs from index summation");
  });

  out << (suite.failures == 0 ? "ALL PASS" : "FAILURES") << "  (" << suite.failures
      << " failed)" << '\n';
  return suite.failures;
}

}  // namespace dyncorr
