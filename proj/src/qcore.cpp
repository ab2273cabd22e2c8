// qcore.cpp

#include "entsim/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace entsim {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kHermitianTol = 1e-12;
constexpr double kUnitaryTol = 1e-12;
constexpr double kEntropyClip = 1e-10;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Validated, ascending copy of a position list.
std::vector<std::size_t> checked_positions(const std::vector<std::size_t>& positions,
                                           std::size_t num_qubits, const char* what) {
  require(!positions.empty(), std::string(what) + ": position set is empty");
  std::vector<std::size_t> sorted = positions;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    require(sorted[i] < num_qubits,
            std::string(what) + ": position " + std::to_string(sorted[i]) + " out of range");
    require(i == 0 || sorted[i] != sorted[i - 1], std::string(what) + ": duplicate position");
  }
  return sorted;
}

// Maps a local index over `positions` (first listed = most significant local
// bit) to its bits scattered into a full register index.
std::vector<std::size_t> scatter_table(const std::vector<std::size_t>& positions,
                                       std::size_t num_qubits) {
  const std::size_t k = positions.size();
  std::vector<std::size_t> table(std::size_t{1} << k, 0);
  for (std::size_t v = 0; v < table.size(); ++v) {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t bit = (v >> (k - 1 - a)) & 1u;
      idx |= bit << (num_qubits - 1 - positions[a]);
    }
    table[v] = idx;
  }
  return table;
}

std::vector<std::size_t> complement_positions(const std::vector<std::size_t>& sorted,
                                              std::size_t num_qubits) {
  std::vector<std::size_t> rest;
  rest.reserve(num_qubits - sorted.size());
  for (std::size_t q = 0, i = 0; q < num_qubits; ++q) {
    if (i < sorted.size() && sorted[i] == q) {
      ++i;
    } else {
      rest.push_back(q);
    }
  }
  return rest;
}

std::size_t checked_num_qubits_for_dim(std::size_t dim, const char* what) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  require((std::size_t{1} << n) == dim && dim >= 2,
          std::string(what) + ": dimension " + std::to_string(dim) + " is not a power of two");
  return n;
}

}  // namespace

// --- Matrix ------------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex Matrix::trace() const {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool Matrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix add: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix sub: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require(cols_ == rhs.rows_, "matrix mul: shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(r, k);
      if (a == Complex{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex v = a(ar, ac);
      if (v == Complex{0.0, 0.0}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
    }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  require(m.rows() == m.cols() && m.rows() > 0, "hermitian_eigenvalues: square matrix required");
  const std::size_t n = m.rows();
  Matrix a = m;

  const double scale = std::max(1.0, a.max_abs());
  const double stop = 1e-15 * scale;

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= stop) continue;
        const Complex u = apq / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double t = 0.5 * std::atan2(2.0 * r, app - aqq);
        const double c = std::cos(t);
        const double s = std::sin(t);

        // A <- A J with J = [[c, -s e^{i phi}], [s e^{-i phi}, c]] on (p,q)
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + s * std::conj(u) * akq;
          a(k, q) = -s * u * akp + c * akq;
        }
        // A <- J† A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + s * u * aqk;
          a(q, k) = -s * std::conj(u) * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

// --- StateVector ---------------------------------------------------------------

StateVector::StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes, bool normalized)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)), normalized_(normalized) {
  require(num_qubits_ >= 1, "StateVector: at least one qubit required");
  require(amps_.size() == (std::size_t{1} << num_qubits_),
          "StateVector: amplitude count must be 2^num_qubits");
}

StateVector StateVector::normalized(std::size_t num_qubits, std::vector<Complex> amplitudes) {
  StateVector psi(num_qubits, std::move(amplitudes), true);
  const double n2 = psi.squared_norm();
  require(std::abs(n2 - 1.0) <= kNormTol,
          "StateVector: squared norm " + fmt(n2) + " is not 1 within 1e-10");
  return psi;
}

StateVector StateVector::raw(std::size_t num_qubits, std::vector<Complex> amplitudes) {
  return StateVector(num_qubits, std::move(amplitudes), false);
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
  std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  if (index >= amps.size()) throw std::invalid_argument("StateVector::basis: index out of range");
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps), true);
}

double StateVector::squared_norm() const {
  double n2 = 0.0;
  for (const Complex& a : amps_) n2 += std::norm(a);
  return n2;
}

StateVector StateVector::normalize() const {
  const double n2 = squared_norm();
  if (n2 < 1e-28)
    throw DegenerateOutcomeError("normalize: vector norm is numerically zero");
  const double inv = 1.0 / std::sqrt(n2);
  std::vector<Complex> amps = amps_;
  for (Complex& a : amps) a *= inv;
  return StateVector(num_qubits_, std::move(amps), true);
}

// --- DensityMatrix ---------------------------------------------------------------

DensityMatrix::DensityMatrix(std::size_t num_qubits, Matrix entries)
    : num_qubits_(num_qubits), entries_(std::move(entries)) {
  require(num_qubits_ >= 1, "DensityMatrix: at least one qubit required");
  require(entries_.rows() == entries_.cols() &&
              entries_.rows() == (std::size_t{1} << num_qubits_),
          "DensityMatrix: entries must be 2^n x 2^n");
  require(entries_.is_hermitian(kHermitianTol), "DensityMatrix: not Hermitian within 1e-12");
  const Complex tr = entries_.trace();
  require(std::abs(tr - Complex{1.0, 0.0}) <= kNormTol,
          "DensityMatrix: trace " + fmt(tr.real()) + " is not 1 within 1e-10");
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  const std::size_t d = psi.dim();
  Matrix m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      m(r, c) = psi.amplitude(r) * std::conj(psi.amplitude(c));
  return DensityMatrix(psi.num_qubits(), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t num_qubits) {
  const std::size_t d = std::size_t{1} << num_qubits;
  Matrix m = Matrix::identity(d);
  m *= Complex{1.0 / static_cast<double>(d), 0.0};
  return DensityMatrix(num_qubits, std::move(m));
}

bool DensityMatrix::is_positive_semidefinite(double tol) const {
  const std::vector<double> eig = hermitian_eigenvalues(entries_);
  return eig.front() >= -tol;
}

// --- UnitaryOperator ---------------------------------------------------------------

UnitaryOperator::UnitaryOperator(Matrix entries, std::vector<std::size_t> target_qubits)
    : entries_(std::move(entries)), targets_(std::move(target_qubits)) {
  validate();
}

UnitaryOperator::UnitaryOperator(Matrix entries) : entries_(std::move(entries)) {
  const std::size_t k = checked_num_qubits_for_dim(entries_.rows(), "UnitaryOperator");
  targets_.resize(k);
  for (std::size_t i = 0; i < k; ++i) targets_[i] = i;
  validate();
}

void UnitaryOperator::validate() const {
  require(entries_.rows() == entries_.cols(), "UnitaryOperator: square matrix required");
  const std::size_t k = checked_num_qubits_for_dim(entries_.rows(), "UnitaryOperator");
  require(k == targets_.size(), "UnitaryOperator: dimension must be 2^(#target qubits)");
  for (std::size_t i = 0; i < targets_.size(); ++i)
    for (std::size_t j = i + 1; j < targets_.size(); ++j)
      require(targets_[i] != targets_[j], "UnitaryOperator: duplicate target qubit");
  const double dev = max_abs_diff(entries_.adjoint() * entries_, Matrix::identity(entries_.rows()));
  require(dev <= kUnitaryTol,
          "UnitaryOperator: max |U†U - I| = " + fmt(dev) + " exceeds 1e-12");
}

UnitaryOperator UnitaryOperator::acting_on(std::vector<std::size_t> targets) const {
  return UnitaryOperator(entries_, std::move(targets));
}

UnitaryOperator UnitaryOperator::adjoint() const {
  return UnitaryOperator(entries_.adjoint(), targets_);
}

// --- QubitLayout ---------------------------------------------------------------

QubitLayout::QubitLayout(std::vector<std::string> labels) : labels_(std::move(labels)) {
  require(!labels_.empty(), "QubitLayout: empty label list");
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = i + 1; j < labels_.size(); ++j)
      require(labels_[i] != labels_[j], "QubitLayout: duplicate label '" + labels_[i] + "'");
}

std::size_t QubitLayout::position_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw std::invalid_argument("QubitLayout: unknown label '" + std::string(label) + "'");
}

// --- operations ---------------------------------------------------------------

UnitaryOperator rotation_matrix(double theta) {
  require(std::isfinite(theta), "rotation_matrix: angle must be finite");
  Matrix m(2, 2);
  m(0, 0) = std::cos(theta);
  m(0, 1) = -std::sin(theta);
  m(1, 0) = std::sin(theta);
  m(1, 1) = std::cos(theta);
  return UnitaryOperator(std::move(m), {0});
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  std::vector<Complex> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a.amplitude(i) * b.amplitude(j);
  // product of unit-norm factors stays unit-norm; keep the tag without revalidating
  if (a.is_normalized() && b.is_normalized())
    return StateVector::normalized(a.num_qubits() + b.num_qubits(), std::move(amps));
  return StateVector::raw(a.num_qubits() + b.num_qubits(), std::move(amps));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(a.num_qubits() + b.num_qubits(), kron(a.entries(), b.entries()));
}

UnitaryOperator tensor_product(const UnitaryOperator& a, const UnitaryOperator& b) {
  std::vector<std::size_t> targets(a.num_target_qubits() + b.num_target_qubits());
  for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = i;
  return UnitaryOperator(kron(a.entries(), b.entries()), std::move(targets));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
  const std::size_t n = rho.num_qubits();
  const std::vector<std::size_t> kept = checked_positions(keep, n, "partial_trace");
  const std::vector<std::size_t> rest = complement_positions(kept, n);
  const std::vector<std::size_t> kscat = scatter_table(kept, n);
  const std::vector<std::size_t> rscat = scatter_table(rest, n);

  const std::size_t dk = kscat.size();
  Matrix out(dk, dk);
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < rscat.size(); ++t)
        acc += rho.entries()(kscat[r] | rscat[t], kscat[c] | rscat[t]);
      out(r, c) = acc;
    }
  return DensityMatrix(kept.size(), std::move(out));
}

DensityMatrix reduced_density(const StateVector& psi, const std::vector<std::size_t>& keep) {
  const std::size_t n = psi.num_qubits();
  const std::vector<std::size_t> kept = checked_positions(keep, n, "reduced_density");
  const std::vector<std::size_t> rest = complement_positions(kept, n);
  const std::vector<std::size_t> kscat = scatter_table(kept, n);
  const std::vector<std::size_t> rscat = scatter_table(rest, n);

  const std::size_t dk = kscat.size();
  Matrix out(dk, dk);
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < rscat.size(); ++t)
        acc += psi.amplitude(kscat[r] | rscat[t]) * std::conj(psi.amplitude(kscat[c] | rscat[t]));
      out(r, c) = acc;
    }
  return DensityMatrix(kept.size(), std::move(out));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const std::vector<double> eig = hermitian_eigenvalues(rho.entries());
  double s = 0.0;
  for (double lambda : eig) {
    if (lambda < -kEntropyClip)
      throw NotAStateError("von_neumann_entropy: eigenvalue " + fmt(lambda) +
                           " below -1e-10; operand is not a state");
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s > 0.0 ? s : 0.0;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require(rho.dim() == sigma.dim(), "trace_distance: dimension mismatch");
  Matrix d = rho.entries();
  d -= sigma.entries();
  // Canonical sign so that (rho,sigma) and (sigma,rho) eigensolve the bitwise
  // identical matrix: IEEE subtraction makes the two differences exact negations.
  [&d] {
    for (std::size_t r = 0; r < d.rows(); ++r) {
      for (std::size_t c = 0; c < d.cols(); ++c) {
        const Complex z = d(r, c);
        if (z == Complex{0.0, 0.0}) continue;
        if (z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0)) d *= Complex{-1.0, 0.0};
        return;
      }
    }
  }();
  double t = 0.0;
  for (double lambda : hermitian_eigenvalues(d)) t += std::abs(lambda);
  return 0.5 * t;
}

Matrix embed_unitary(const UnitaryOperator& u, std::size_t num_qubits) {
  const std::vector<std::size_t> targets = u.target_qubits();
  checked_positions(targets, num_qubits, "embed_unitary");  // range/duplicate check
  std::vector<std::size_t> sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  const std::vector<std::size_t> rest = complement_positions(sorted, num_qubits);
  const std::vector<std::size_t> tscat = scatter_table(targets, num_qubits);
  const std::vector<std::size_t> rscat = scatter_table(rest, num_qubits);

  const std::size_t d = std::size_t{1} << num_qubits;
  const std::size_t dt = tscat.size();
  Matrix out(d, d);
  for (std::size_t t = 0; t < rscat.size(); ++t)
    for (std::size_t r = 0; r < dt; ++r)
      for (std::size_t c = 0; c < dt; ++c)
        out(rscat[t] | tscat[r], rscat[t] | tscat[c]) = u.entries()(r, c);
  return out;
}

StateVector apply_unitary(const UnitaryOperator& u, const StateVector& psi) {
  const std::size_t n = psi.num_qubits();
  const std::vector<std::size_t> targets = u.target_qubits();
  checked_positions(targets, n, "apply_unitary");
  std::vector<std::size_t> sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  const std::vector<std::size_t> rest = complement_positions(sorted, n);
  const std::vector<std::size_t> tscat = scatter_table(targets, n);
  const std::vector<std::size_t> rscat = scatter_table(rest, n);

  const std::size_t dt = tscat.size();
  std::vector<Complex> out(psi.dim(), Complex{0.0, 0.0});
  for (std::size_t t = 0; t < rscat.size(); ++t) {
    const std::size_t base = rscat[t];
    for (std::size_t r = 0; r < dt; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t c = 0; c < dt; ++c) acc += u.entries()(r, c) * psi.amplitude(base | tscat[c]);
      out[base | tscat[r]] = acc;
    }
  }
  return psi.is_normalized() ? StateVector::normalized(n, std::move(out))
                             : StateVector::raw(n, std::move(out));
}

DensityMatrix apply_unitary(const UnitaryOperator& u, const DensityMatrix& rho) {
  const Matrix e = embed_unitary(u, rho.num_qubits());
  return DensityMatrix(rho.num_qubits(), e * rho.entries() * e.adjoint());
}

double purity(const DensityMatrix& rho) {
  double p = 0.0;
  for (std::size_t r = 0; r < rho.dim(); ++r)
    for (std::size_t c = 0; c < rho.dim(); ++c) p += std::norm(rho.entries()(r, c));
  return p;
}

double fidelity_pure(const StateVector& target, const DensityMatrix& rho) {
  require(target.num_qubits() == rho.num_qubits(), "fidelity_pure: qubit count mismatch");
  Complex acc{0.0, 0.0};
  for (std::size_t r = 0; r < rho.dim(); ++r)
    for (std::size_t c = 0; c < rho.dim(); ++c)
      acc += std::conj(target.amplitude(r)) * rho.entries()(r, c) * target.amplitude(c);
  return acc.real();
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  require(a.dim() == b.dim(), "inner_product: dimension mismatch");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amplitude(i)) * b.amplitude(i);
  return acc;
}

}  // namespace entsim
