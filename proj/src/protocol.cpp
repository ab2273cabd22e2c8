// protocol.cpp

#include "entsim/protocol.hpp"

#include <cmath>
#include <vector>

namespace entsim {

namespace {

constexpr double kQuarterPiTol = 1e-12;
constexpr double kDegenerateTol = 1e-14;
constexpr double kSqrt2Inv = 0.70710678118654752440;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_bit(int b, const char* name) {
  require(b == 0 || b == 1, std::string(name) + " must be 0 or 1");
}

Matrix projector(int bit) {
  Matrix p(2, 2);
  p(bit, bit) = 1.0;
  return p;
}

Matrix pauli_power(const Matrix& p, int e) { return e ? p : Matrix::identity(2); }

struct Rotations {
  Matrix u, up, upp;
};

Rotations rotations(const AngleTriple& a) {
  return {rotation_matrix(a.theta).entries(), rotation_matrix(a.theta_prime).entries(),
          rotation_matrix(a.theta_double_prime).entries()};
}

// c1 * a + c2 * b for equal-length state vectors.
StateVector combine(Complex c1, const StateVector& a, Complex c2, const StateVector& b) {
  std::vector<Complex> amps(a.dim());
  for (std::size_t i = 0; i < amps.size(); ++i)
    amps[i] = c1 * a.amplitude(i) + c2 * b.amplitude(i);
  return StateVector::raw(a.num_qubits(), std::move(amps));
}

}  // namespace

const QubitLayout& protocol_layout() {
  static const QubitLayout layout({"Q", "R", "A", "B", "C", "D"});
  return layout;
}

void validate_angles(const AngleTriple& angles) {
  require(std::isfinite(angles.theta) && std::isfinite(angles.theta_prime) &&
              std::isfinite(angles.theta_double_prime),
          "angles must be finite");
}

bool is_quarter_pi_family(double theta) {
  if (!std::isfinite(theta)) return false;
  const double c = std::cos(theta);
  return std::abs(c * c - 0.5) < kQuarterPiTol;
}

void validate_mode_angles(ProtocolMode mode, const AngleTriple& angles) {
  validate_angles(angles);
  if (mode == ProtocolMode::WithCommunication) {
    require(is_quarter_pi_family(angles.theta),
            "mode 'locc' requires |cos^2 theta - 1/2| < 1e-12 (theta in the pi/4 family)");
  } else {
    require(is_quarter_pi_family(angles.theta) && is_quarter_pi_family(angles.theta_double_prime),
            "mode 'local' requires theta and theta2 both in the pi/4 family");
  }
}

PreparedSystem prepare_joint_state(const AngleTriple& angles) {
  validate_angles(angles);
  const Rotations rot = rotations(angles);

  std::vector<Complex> amps(64, Complex{0.0, 0.0});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const std::size_t idx = static_cast<std::size_t>(l << 5 | i << 4 | i << 3 |
                                                           j << 2 | k << 1 | l);
          amps[idx] += kSqrt2Inv * rot.u(i, j) * rot.up(j, k) * rot.upp(k, l);
        }
  StateVector psi = StateVector::normalized(6, std::move(amps));

  // The chain's Q marginal is maximally mixed by construction; anything else
  // means the encoding is broken.
  const DensityMatrix rho_q = reduced_density(psi, {protocol_layout().position_of("Q")});
  if (max_abs_diff(rho_q.entries(), DensityMatrix::maximally_mixed(1).entries()) > 1e-10)
    throw NotAStateError("prepare_joint_state: Q marginal is not maximally mixed");

  return PreparedSystem{std::move(psi), angles};
}

DensityMatrix reduced_abcd(const PreparedSystem& system) {
  const QubitLayout& layout = protocol_layout();
  return reduced_density(system.state,
                         {layout.position_of("A"), layout.position_of("B"),
                          layout.position_of("C"), layout.position_of("D")});
}

double conditional_probability(const AngleTriple& angles, int i, int l) {
  validate_angles(angles);
  check_bit(i, "i");
  check_bit(l, "l");
  const Rotations rot = rotations(angles);
  double p = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      p += std::norm(rot.u(i, j)) * std::norm(rot.up(j, k)) * std::norm(rot.upp(k, l));
  return p;
}

ConditionalState conditional_state(const AngleTriple& angles, int i, int l) {
  validate_angles(angles);
  check_bit(i, "i");
  check_bit(l, "l");
  const Rotations rot = rotations(angles);

  std::vector<Complex> v(4, Complex{0.0, 0.0});
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) v[j << 1 | k] += rot.u(i, j) * rot.up(j, k) * rot.upp(k, l);

  const double p = conditional_probability(angles, i, l);
  if (p < kDegenerateTol)
    throw DegenerateOutcomeError("conditional_state: outcome (" + std::to_string(i) + "," +
                                 std::to_string(l) + ") has zero probability");
  return ConditionalState{p, StateVector::raw(2, std::move(v)).normalize()};
}

StateVector generalized_bell(double theta_double_prime, int z, int x) {
  require(std::isfinite(theta_double_prime), "generalized_bell: angle must be finite");
  check_bit(z, "z");
  check_bit(x, "x");
  const double s = std::sin(theta_double_prime);
  const double c = std::cos(theta_double_prime);
  std::vector<Complex> amps(4, Complex{0.0, 0.0});
  if (z == 0 && x == 0) {
    amps[0] = s;
    amps[3] = c;
  } else if (z == 0 && x == 1) {
    amps[1] = s;
    amps[2] = c;
  } else if (z == 1 && x == 0) {
    amps[0] = c;
    amps[3] = -s;
  } else {
    amps[1] = c;
    amps[2] = -s;
  }
  return StateVector::normalized(2, std::move(amps));
}

StateVector standard_bell(int z, int x) {
  check_bit(z, "z");
  check_bit(x, "x");
  const StateVector bell00 =
      StateVector::normalized(2, {kSqrt2Inv, 0.0, 0.0, kSqrt2Inv});
  // X^x Z^z on the second qubit (Z acts first).
  const Matrix op = pauli_power(pauli_x(), x) * pauli_power(pauli_z(), z);
  return apply_unitary(UnitaryOperator(op, {1}), bell00);
}

UnitaryOperator disentangler_pair(ProtocolMode mode, int i, int l) {
  check_bit(i, "i");
  check_bit(l, "l");
  Matrix on_b(2, 2), on_c(2, 2);
  if (mode == ProtocolMode::WithCommunication) {
    // adjoint of Z^{i+l} X^l (x) X^l, exponent sum mod 2
    on_b = pauli_power(pauli_x(), l) * pauli_power(pauli_z(), (i + l) % 2);
    on_c = pauli_power(pauli_x(), l);
  } else {
    // adjoint of Z^i (x) (-Z)^l; both factors are Hermitian
    on_b = pauli_power(pauli_z(), i);
    on_c = pauli_power(pauli_z(), l);
    if (l) on_c *= Complex{-1.0, 0.0};
  }
  return UnitaryOperator(kron(on_b, on_c), {0, 1});
}

std::pair<UnitaryOperator, UnitaryOperator> local_disentangler_halves() {
  const Matrix z = pauli_z();
  Matrix ab = kron(projector(0), Matrix::identity(2)) + kron(projector(1), z);
  Matrix minus_z = z;
  minus_z *= Complex{-1.0, 0.0};
  Matrix cd = kron(Matrix::identity(2), projector(0)) + kron(minus_z, projector(1));
  return {UnitaryOperator(std::move(ab), {0, 1}), UnitaryOperator(std::move(cd), {0, 1})};
}

UnitaryOperator disentangler_global(ProtocolMode mode) {
  if (mode == ProtocolMode::LocalOnly) {
    const auto [ab, cd] = local_disentangler_halves();
    return UnitaryOperator(kron(ab.entries(), cd.entries()), {0, 1, 2, 3});
  }
  Matrix sum(16, 16);
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l < 2; ++l)
      sum += kron(kron(projector(i), disentangler_pair(mode, i, l).entries()), projector(l));
  return UnitaryOperator(std::move(sum), {0, 1, 2, 3});
}

StateVector target_state(ProtocolMode mode, const AngleTriple& angles) {
  validate_angles(angles);
  const Complex c1{-std::sin(angles.theta_prime), 0.0};
  const Complex c2{std::cos(angles.theta_prime), 0.0};
  StateVector raw =
      mode == ProtocolMode::WithCommunication
          ? combine(c1, generalized_bell(angles.theta_double_prime, 0, 1), c2,
                    generalized_bell(angles.theta_double_prime, 1, 0))
          : combine(c1, standard_bell(0, 1), c2, standard_bell(1, 0));
  return raw.normalize();
}

std::size_t operator_schmidt_rank_ab_cd(const UnitaryOperator& op, double tol) {
  require(op.dimension() == 16, "operator_schmidt_rank_ab_cd: 16x16 operator required");
  // Reshuffle M[(p,q),(p',q')] -> R[(p,p'),(q,q')] with p over AB, q over CD;
  // the singular values of R are the operator-Schmidt coefficients.
  Matrix r(16, 16);
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t pp = 0; pp < 4; ++pp)
      for (std::size_t q = 0; q < 4; ++q)
        for (std::size_t qq = 0; qq < 4; ++qq)
          r(p * 4 + pp, q * 4 + qq) = op.entries()(p * 4 + q, pp * 4 + qq);

  const std::vector<double> eig = hermitian_eigenvalues(r.adjoint() * r);
  double sv_max = 0.0;
  for (double e : eig) sv_max = std::max(sv_max, std::sqrt(std::max(e, 0.0)));
  std::size_t rank = 0;
  for (double e : eig)
    if (std::sqrt(std::max(e, 0.0)) > tol * std::max(1.0, sv_max)) ++rank;
  return rank;
}

VerificationReport run_protocol(const AngleTriple& angles, ProtocolMode mode) {
  validate_mode_angles(mode, angles);
  return run_protocol(prepare_joint_state(angles), mode);
}

VerificationReport run_protocol(const PreparedSystem& system, ProtocolMode mode) {
  validate_mode_angles(mode, system.angles);
  require(system.state.num_qubits() == 6, "run_protocol: six-qubit system required");

  const QubitLayout& layout = protocol_layout();
  const std::size_t a = layout.position_of("A");
  const std::size_t b = layout.position_of("B");
  const std::size_t c = layout.position_of("C");
  const std::size_t d = layout.position_of("D");

  const UnitaryOperator v = disentangler_global(mode).acting_on({a, b, c, d});
  const StateVector post = apply_unitary(v, system.state);

  const DensityMatrix rho_bc = reduced_density(post, {b, c});
  const DensityMatrix rho_rest =
      reduced_density(post, {layout.position_of("Q"), layout.position_of("R"), a, d});

  VerificationReport report;
  report.mode = mode;
  report.angles = system.angles;
  report.fidelity_to_target = fidelity_pure(target_state(mode, system.angles), rho_bc);
  report.bc_purity = purity(rho_bc);
  // the post state is a vector, hence exactly pure: S(whole) = 0
  double mi = von_neumann_entropy(rho_bc) + von_neumann_entropy(rho_rest);
  report.mutual_info_bc_rest = mi > 0.0 ? mi : 0.0;
  report.final_entanglement_entropy = von_neumann_entropy(reduced_density(post, {b}));
  report.passed =
      report.fidelity_to_target > 1.0 - 1e-9 && report.mutual_info_bc_rest < 1e-9;
  return report;
}

}  // namespace entsim
