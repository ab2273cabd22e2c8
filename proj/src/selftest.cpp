// selftest.cpp

#include "entsim/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "entsim/analysis.hpp"
#include "entsim/protocol.hpp"
#include "entsim/qcore.hpp"

namespace entsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rand_angle(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-kPi, kPi)(rng);
}

AngleTriple rand_angles(std::mt19937_64& rng) {
  return {rand_angle(rng), rand_angle(rng), rand_angle(rng)};
}

// Random single-qubit density matrix from a Bloch vector of length <= 1.
DensityMatrix rand_qubit_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = std::cbrt(unit(rng));
  const double z = 2.0 * unit(rng) - 1.0;
  const double phi = 2.0 * kPi * unit(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double bx = r * s * std::cos(phi), by = r * s * std::sin(phi), bz = r * z;
  Matrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + bz);
  m(1, 1) = 0.5 * (1.0 - bz);
  m(0, 1) = 0.5 * Complex{bx, -by};
  m(1, 0) = 0.5 * Complex{bx, by};
  return DensityMatrix(1, std::move(m));
}

// Haar-ish random pure state: normalized complex Gaussian amplitudes.
StateVector rand_pure(std::mt19937_64& rng, std::size_t num_qubits) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  for (Complex& a : amps) a = Complex{gauss(rng), gauss(rng)};
  return StateVector::raw(num_qubits, std::move(amps)).normalize();
}

// Random mixed state on `num_qubits` by tracing a pure state on twice as many.
DensityMatrix rand_mixed(std::mt19937_64& rng, std::size_t num_qubits) {
  const StateVector pure = rand_pure(rng, 2 * num_qubits);
  std::vector<std::size_t> keep(num_qubits);
  for (std::size_t i = 0; i < num_qubits; ++i) keep[i] = i;
  return reduced_density(pure, keep);
}

struct Check {
  bool passed = true;
  double worst = 0.0;  // largest deviation seen

  void observe(double deviation, double bound) {
    worst = std::max(worst, deviation);
    if (!(deviation < bound)) passed = false;
  }
};

InvariantResult result_of(const std::string& name, const Check& check,
                          const std::string& what) {
  return {name, check.passed, "max " + what + " = " + fmt(check.worst)};
}

// --- qcore invariants ---------------------------------------------------------

InvariantResult inv_unitarity(std::mt19937_64& rng) {
  Check check;
  auto dev = [](const UnitaryOperator& u) {
    return max_abs_diff(u.entries().adjoint() * u.entries(),
                        Matrix::identity(u.dimension()));
  };
  for (int t = 0; t < 16; ++t) check.observe(dev(rotation_matrix(rand_angle(rng))), 1e-12);
  for (ProtocolMode mode : {ProtocolMode::WithCommunication, ProtocolMode::LocalOnly}) {
    check.observe(dev(disentangler_global(mode)), 1e-12);
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l) check.observe(dev(disentangler_pair(mode, i, l)), 1e-12);
  }
  return result_of("qcore.unitarity", check, "|U†U - I|");
}

InvariantResult inv_partial_trace_preserves_trace(std::mt19937_64& rng) {
  Check check;
  for (int t = 0; t < 16; ++t) {
    const DensityMatrix rho = rand_mixed(rng, 2);
    for (const std::vector<std::size_t>& keep :
         {std::vector<std::size_t>{0}, {1}, {0, 1}}) {
      const DensityMatrix red = partial_trace(rho, keep);
      check.observe(std::abs(red.entries().trace() - rho.entries().trace()), 1e-12);
    }
  }
  return result_of("qcore.partial_trace_preserves_trace", check, "trace drift");
}

InvariantResult inv_entropy_additivity(std::mt19937_64& rng) {
  Check check;
  for (int t = 0; t < 16; ++t) {
    const DensityMatrix rho = rand_qubit_state(rng);
    const DensityMatrix tau = rand_qubit_state(rng);
    const double joint = von_neumann_entropy(tensor_product(rho, tau));
    const double parts = von_neumann_entropy(rho) + von_neumann_entropy(tau);
    check.observe(std::abs(joint - parts), 1e-10);
  }
  return result_of("qcore.entropy_additivity", check, "|S(rho x tau) - S(rho) - S(tau)|");
}

InvariantResult inv_trace_distance_metric(std::mt19937_64& rng) {
  Check symmetry, triangle;
  for (int t = 0; t < 12; ++t) {
    const DensityMatrix a = rand_mixed(rng, 2);
    const DensityMatrix b = rand_mixed(rng, 2);
    const DensityMatrix c = rand_mixed(rng, 2);
    const double ab = trace_distance(a, b);
    const double ba = trace_distance(b, a);
    symmetry.observe(ab == ba ? 0.0 : 1.0, 0.5);  // exact, not approximate
    triangle.observe(ab - (trace_distance(a, c) + trace_distance(c, b)), 1e-10);
  }
  InvariantResult r = result_of("qcore.trace_distance_metric", symmetry, "triangle excess");
  r.passed = symmetry.passed && triangle.passed;
  r.detail = "max triangle excess = " + fmt(triangle.worst) +
             (symmetry.passed ? ", symmetry exact" : ", SYMMETRY BROKEN");
  return r;
}

InvariantResult inv_apply_unitary_preserves(std::mt19937_64& rng) {
  Check check;
  for (int t = 0; t < 12; ++t) {
    const UnitaryOperator u = rotation_matrix(rand_angle(rng)).acting_on({1});
    const StateVector psi = rand_pure(rng, 3);
    check.observe(std::abs(apply_unitary(u, psi).squared_norm() - 1.0), 1e-10);

    const DensityMatrix rho = rand_mixed(rng, 2);
    const DensityMatrix out = apply_unitary(u.acting_on({0}), rho);
    check.observe(std::abs(out.entries().trace() - Complex{1.0, 0.0}), 1e-10);
    check.observe(max_abs_diff(out.entries(), out.entries().adjoint()), 1e-10);
  }
  return result_of("qcore.apply_unitary_preserves", check, "norm/trace/hermiticity drift");
}

// --- protocol invariants --------------------------------------------------------

InvariantResult inv_reconstruction_identity(std::mt19937_64& rng) {
  Check check;
  for (int t = 0; t < 8; ++t) {
    const AngleTriple angles = rand_angles(rng);
    const DensityMatrix rho = reduced_abcd(prepare_joint_state(angles));
    Matrix assembled(16, 16);
    for (int i = 0; i < 2; ++i) {
      for (int l = 0; l < 2; ++l) {
        try {
          const ConditionalState cs = conditional_state(angles, i, l);
          Matrix block(4, 4);
          for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
              block(r, c) = cs.state.amplitude(r) * std::conj(cs.state.amplitude(c));
          Matrix pi(2, 2), pl(2, 2);
          pi(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1.0;
          pl(static_cast<std::size_t>(l), static_cast<std::size_t>(l)) = 1.0;
          assembled += kron(kron(pi, block), pl) * Complex{cs.probability / 2.0, 0.0};
        } catch (const DegenerateOutcomeError&) {
          // zero-probability sector contributes a zero block
        }
      }
    }
    check.observe(max_abs_diff(assembled, rho.entries()), 1e-10);
  }
  return result_of("protocol.reconstruction_identity", check, "entrywise |assembled - reduced|");
}

InvariantResult inv_conditional_operator_identity(std::mt19937_64& rng) {
  Check check;
  for (int t = 0; t < 8; ++t) {
    const AngleTriple angles{kPi / 4.0, rand_angle(rng), rand_angle(rng)};
    const StateVector phi00 = conditional_state(angles, 0, 0).state;
    for (int i = 0; i < 2; ++i) {
      for (int l = 0; l < 2; ++l) {
        const StateVector phi = conditional_state(angles, i, l).state;
        const UnitaryOperator v_dagger =
            disentangler_pair(ProtocolMode::WithCommunication, i, l).adjoint();
        const Complex overlap = inner_product(phi, apply_unitary(v_dagger, phi00));
        check.observe(std::abs(std::norm(overlap) - 1.0), 1e-10);
      }
    }
  }
  return result_of("protocol.conditional_operator_identity", check, "| |<phi|V†|phi00>|^2 - 1 |");
}

InvariantResult inv_product_form(std::mt19937_64& rng, bool inject_fault) {
  Check check;
  for (int t = 0; t < 6; ++t) {
    for (ProtocolMode mode : {ProtocolMode::WithCommunication, ProtocolMode::LocalOnly}) {
      AngleTriple angles{kPi / 4.0, rand_angle(rng), rand_angle(rng)};
      if (mode == ProtocolMode::LocalOnly) angles.theta_double_prime = kPi / 4.0;
      PreparedSystem system = prepare_joint_state(angles);
      if (inject_fault) {
        std::vector<Complex> amps = system.state.amplitudes();
        std::size_t biggest = 0;
        for (std::size_t n = 1; n < amps.size(); ++n)
          if (std::abs(amps[n]) > std::abs(amps[biggest])) biggest = n;
        amps[biggest] = -amps[biggest];
        system.state = StateVector::normalized(6, std::move(amps));
      }
      const VerificationReport report = run_protocol(system, mode);
      check.observe(1.0 - report.bc_purity, 1e-9);
      check.observe(report.mutual_info_bc_rest, 1e-9);
      check.observe(1.0 - report.fidelity_to_target, 1e-9);
    }
  }
  return result_of("protocol.product_form", check, "purity/fidelity deficit and mutual info");
}

InvariantResult inv_probability_completeness(std::mt19937_64& rng) {
  Check check;
  for (int t = 0; t < 64; ++t) {
    const AngleTriple angles = rand_angles(rng);
    double sum = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l) sum += conditional_probability(angles, i, l);
    check.observe(std::abs(sum - 2.0), 1e-12);
  }
  return result_of("protocol.probability_completeness", check, "|sum p_il - 2|");
}

InvariantResult inv_entanglement_invariance(std::mt19937_64& rng) {
  Check check;
  for (int t = 0; t < 8; ++t) {
    const AngleTriple angles{kPi / 4.0, rand_angle(rng), rand_angle(rng)};
    double lo = 2.0, hi = -1.0;
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l) {
        const double se = entanglement_entropy_state(conditional_state(angles, i, l).state);
        lo = std::min(lo, se);
        hi = std::max(hi, se);
      }
    check.observe(hi - lo, 1e-10);
  }
  return result_of("protocol.entanglement_invariance", check, "entropy spread over (i,l)");
}

InvariantResult inv_local_factorization() {
  const auto [ab, cd] = local_disentangler_halves();
  const UnitaryOperator global = disentangler_global(ProtocolMode::LocalOnly);
  const double factor_diff = max_abs_diff(global.entries(), kron(ab.entries(), cd.entries()));

  // the literal controlled-phase construction must agree with the assembled
  // conditional form
  Matrix conditional_form(16, 16);
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l < 2; ++l) {
      Matrix pi(2, 2), pl(2, 2);
      pi(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1.0;
      pl(static_cast<std::size_t>(l), static_cast<std::size_t>(l)) = 1.0;
      conditional_form +=
          kron(kron(pi, disentangler_pair(ProtocolMode::LocalOnly, i, l).entries()), pl);
    }
  const double form_diff = max_abs_diff(global.entries(), conditional_form);

  const std::size_t rank =
      operator_schmidt_rank_ab_cd(disentangler_global(ProtocolMode::WithCommunication));

  InvariantResult r;
  r.name = "protocol.local_factorization";
  r.passed = factor_diff == 0.0 && form_diff == 0.0 && rank >= 2;
  r.detail = "factorization diff = " + fmt(factor_diff) + ", conditional-form diff = " +
             fmt(form_diff) + ", locc operator-Schmidt rank = " + std::to_string(rank);
  return r;
}

// --- analysis invariants --------------------------------------------------------

InvariantResult inv_closed_form_agreement() {
  Check check;
  for (double tp : uniform_grid(0.0, kPi, 9, false))
    for (double tpp : uniform_grid(0.0, kPi / 2.0, 9, true)) {
      const AngleTriple angles{kPi / 4.0, tp, tpp};
      const double closed = entanglement_entropy_closed_form(tpp);
      for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l) {
          const double se = entanglement_entropy_state(conditional_state(angles, i, l).state);
          check.observe(std::abs(se - closed), 1e-10);
        }
    }
  return result_of("analysis.closed_form_agreement", check, "|S_E(state) - closed form|");
}

InvariantResult inv_theta_prime_independence() {
  Check check;
  for (double tpp : uniform_grid(0.0, kPi / 2.0, 7, true)) {
    double lo = 2.0, hi = -1.0;
    for (double tp : uniform_grid(0.0, kPi, 17, false)) {
      const double se =
          entanglement_entropy_state(conditional_state({kPi / 4.0, tp, tpp}, 0, 0).state);
      lo = std::min(lo, se);
      hi = std::max(hi, se);
    }
    check.observe(hi - lo, 1e-10);
  }
  return result_of("analysis.theta_prime_independence", check, "entropy spread over theta'");
}

InvariantResult inv_quarter_pi_uniformity(std::mt19937_64& rng) {
  Check check;
  const double family[] = {kPi / 4.0, 3.0 * kPi / 4.0, -kPi / 4.0};
  for (int t = 0; t < 12; ++t) {
    AngleTriple angles = rand_angles(rng);
    const int slot = t % 3;
    const double member = family[static_cast<std::size_t>(t) % 3];
    if (slot == 0) angles.theta = member;
    if (slot == 1) angles.theta_prime = member;
    if (slot == 2) angles.theta_double_prime = member;

    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l)
        check.observe(std::abs(conditional_probability(angles, i, l) - 0.5), 1e-12);
    check.observe(mutual_information_ad(reduced_abcd(prepare_joint_state(angles))), 1e-10);
  }
  return result_of("analysis.quarter_pi_uniformity", check, "|p - 1/2| and S(A:D)");
}

InvariantResult inv_coherence_bound() {
  Check check;
  for (double tp : uniform_grid(0.0, kPi, 7, false))
    for (double tpp : uniform_grid(0.0, kPi / 2.0, 7, true))
      check.observe(coherence_trace_distance({kPi / 4.0, tp, tpp}), 1.0 - 1e-9);
  return result_of("analysis.coherence_bound", check, "trace distance (must stay below 1)");
}

InvariantResult inv_sigma_consistency(std::mt19937_64& rng) {
  Check check;
  for (int t = 0; t < 8; ++t) {
    const AngleTriple angles = rand_angles(rng);
    const DensityMatrix rho = reduced_abcd(prepare_joint_state(angles));
    const DensityMatrix sigma = classical_counterpart(angles);
    double dev = 0.0;
    for (std::size_t r = 0; r < 16; ++r)
      for (std::size_t c = 0; c < 16; ++c) {
        const Complex expected = r == c ? rho.entries()(r, r) : Complex{0.0, 0.0};
        dev = std::max(dev, std::abs(sigma.entries()(r, c) - expected));
      }
    check.observe(dev, 1e-12);
  }
  return result_of("analysis.sigma_consistency", check, "|sigma - diag(rho)|");
}

// --- cli invariants ---------------------------------------------------------

InvariantResult inv_sweep_determinism() {
  const SweepSpec spec = SweepSpec::fig2(5, 9);
  const SweepResult a = run_sweep(spec);
  const SweepResult b = run_sweep(spec);
  bool identical = a.points.size() == b.points.size();
  for (std::size_t i = 0; identical && i < a.points.size(); ++i)
    identical = a.points[i].swept_value == b.points[i].swept_value &&
                a.points[i].trace_distance == b.points[i].trace_distance;
  return {"cli.sweep_determinism", identical,
          identical ? "repeated sweeps bit-identical" : "REPEATED SWEEPS DIFFER"};
}

}  // namespace

std::vector<InvariantResult> run_selftest(const SelftestOptions& options) {
  std::mt19937_64 rng(0x5eed5eedULL);  // fixed seed: the suite is deterministic
  std::vector<InvariantResult> results;
  results.push_back(inv_unitarity(rng));
  results.push_back(inv_partial_trace_preserves_trace(rng));
  results.push_back(inv_entropy_additivity(rng));
  results.push_back(inv_trace_distance_metric(rng));
  results.push_back(inv_apply_unitary_preserves(rng));
  results.push_back(inv_reconstruction_identity(rng));
  results.push_back(inv_conditional_operator_identity(rng));
  results.push_back(inv_product_form(rng, options.inject_fault));
  results.push_back(inv_probability_completeness(rng));
  results.push_back(inv_entanglement_invariance(rng));
  results.push_back(inv_local_factorization());
  results.push_back(inv_closed_form_agreement());
  results.push_back(inv_theta_prime_independence());
  results.push_back(inv_quarter_pi_uniformity(rng));
  results.push_back(inv_coherence_bound());
  results.push_back(inv_sigma_consistency(rng));
  results.push_back(inv_sweep_determinism());
  return results;
}

}  // namespace entsim
