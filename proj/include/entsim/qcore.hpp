// qcore.hpp
// Dense complex linear algebra for small multi-qubit registers (dimension <= 64):
// states, density matrices, tagged unitaries, partial traces and spectral
// functionals (von Neumann entropy, trace distance).
//
// Register convention: position 0 is the MOST significant bit of a basis index.
// For a register (Q,R,A,B,C,D) the ket |q r a b c d> sits at index
// q*32 + r*16 + a*8 + b*4 + c*2 + d.
//
// Everything here is a pure function over immutable values; instances are
// safely shareable across threads.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace entsim {

using Complex = std::complex<double>;

// Spectral check failed: the operand is not a valid quantum state.
class NotAStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A conditional outcome has (numerically) zero probability; its state is undefined.
class DegenerateOutcomeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense row-major complex matrix. Assembly plumbing for the domain types below.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix adjoint() const;
  Complex trace() const;
  double max_abs() const;
  bool is_hermitian(double tol) const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
  Matrix operator*(const Matrix& rhs) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Kronecker product; a's indices are more significant than b's.
Matrix kron(const Matrix& a, const Matrix& b);
double max_abs_diff(const Matrix& a, const Matrix& b);

// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations.
// Converges to roughly machine precision relative to the matrix norm.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

Matrix pauli_x();
Matrix pauli_z();

// Pure state over an ordered qubit register.
class StateVector {
 public:
  // Unit-norm state; throws std::invalid_argument if the squared norm
  // deviates from 1 by more than 1e-10.
  static StateVector normalized(std::size_t num_qubits, std::vector<Complex> amplitudes);
  // Intermediate (possibly unnormalized) vector, tagged as such.
  static StateVector raw(std::size_t num_qubits, std::vector<Complex> amplitudes);
  // Computational basis state |index>.
  static StateVector basis(std::size_t num_qubits, std::size_t index);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex amplitude(std::size_t i) const { return amps_.at(i); }
  bool is_normalized() const { return normalized_; }
  double squared_norm() const;

  // Unit-norm copy; throws DegenerateOutcomeError on a (near-)zero vector.
  StateVector normalize() const;

 private:
  StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes, bool normalized);

  std::size_t num_qubits_ = 0;
  std::vector<Complex> amps_;
  bool normalized_ = false;
};

// Hermitian, unit-trace operator on a qubit register. Hermiticity (1e-12
// entrywise) and trace (1e-10) are validated at construction; positive
// semidefiniteness is validated where spectra are computed.
class DensityMatrix {
 public:
  DensityMatrix(std::size_t num_qubits, Matrix entries);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t num_qubits);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }

  bool is_positive_semidefinite(double tol = 1e-10) const;

 private:
  std::size_t num_qubits_ = 0;
  Matrix entries_;
};

// Unitary tagged with the register positions it acts on. U†U = I is validated
// within 1e-12 (max entry); dimension must be 2^(#targets).
class UnitaryOperator {
 public:
  UnitaryOperator(Matrix entries, std::vector<std::size_t> target_qubits);
  explicit UnitaryOperator(Matrix entries);  // targets 0..k-1

  std::size_t dimension() const { return entries_.rows(); }
  std::size_t num_target_qubits() const { return targets_.size(); }
  const Matrix& entries() const { return entries_; }
  const std::vector<std::size_t>& target_qubits() const { return targets_; }

  // Same matrix re-tagged onto other register positions.
  UnitaryOperator acting_on(std::vector<std::size_t> targets) const;
  UnitaryOperator adjoint() const;

 private:
  void validate() const;

  Matrix entries_;
  std::vector<std::size_t> targets_;
};

// Ordered labels for the positions of a register; position 0 is the most
// significant bit of the amplitude index.
class QubitLayout {
 public:
  explicit QubitLayout(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t position_of(std::string_view label) const;
  const std::string& label(std::size_t position) const { return labels_.at(position); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

// --- operations -------------------------------------------------------------

// 2x2 real rotation [[cos t, -sin t], [sin t, cos t]].
UnitaryOperator rotation_matrix(double theta);

// Kronecker compositions; a's qubits are more significant than b's.
StateVector tensor_product(const StateVector& a, const StateVector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
UnitaryOperator tensor_product(const UnitaryOperator& a, const UnitaryOperator& b);

// Reduced state over `keep` (register positions, any order; output keeps their
// original relative order). Trace is preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

// Reduced state of a pure state without forming the full outer product.
DensityMatrix reduced_density(const StateVector& psi, const std::vector<std::size_t>& keep);

// -sum lambda log2 lambda, in bits. Eigenvalues in [-1e-10, 0) are clipped to
// zero; anything more negative raises NotAStateError.
double von_neumann_entropy(const DensityMatrix& rho);

// T = (1/2) sum |eig(rho - sigma)|; symmetric in its arguments bit-for-bit.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// U acting on its target positions, identity elsewhere.
StateVector apply_unitary(const UnitaryOperator& u, const StateVector& psi);
DensityMatrix apply_unitary(const UnitaryOperator& u, const DensityMatrix& rho);

// Full 2^n matrix of U embedded on its targets.
Matrix embed_unitary(const UnitaryOperator& u, std::size_t num_qubits);

double purity(const DensityMatrix& rho);                                   // Tr(rho^2)
double fidelity_pure(const StateVector& target, const DensityMatrix& rho); // <t|rho|t>
Complex inner_product(const StateVector& a, const StateVector& b);         // <a|b>

}  // namespace entsim
