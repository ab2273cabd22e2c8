// analysis.cpp

#include "entsim/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace entsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double h_bits(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

void check_grid(const std::vector<double>& grid, const char* what) {
  require(!grid.empty(), std::string(what) + ": grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    require(grid[i] > grid[i - 1], std::string(what) + ": grid must be strictly increasing");
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, std::size_t n, bool include_end) {
  require(n >= 1, "uniform_grid: at least one point required");
  require(hi > lo, "uniform_grid: hi must exceed lo");
  std::vector<double> grid(n);
  if (include_end) {
    require(n >= 2, "uniform_grid: closed grid needs at least two points");
    for (std::size_t i = 0; i < n; ++i)
      grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
  }
  return grid;
}

SweepSpec SweepSpec::fig2(std::size_t grid_points, std::size_t averaging_points) {
  SweepSpec spec;
  spec.swept = Parameter::ThetaDoublePrime;
  spec.theta = kPi / 4.0;
  spec.grid = uniform_grid(0.0, kPi / 2.0, grid_points, /*include_end=*/true);
  spec.averaging_grid = uniform_grid(0.0, kPi, averaging_points, /*include_end=*/false);
  return spec;
}

SweepSpec SweepSpec::fig3(std::size_t grid_points) {
  SweepSpec spec;
  spec.swept = Parameter::ThetaPrime;
  spec.theta = kPi / 4.0;
  spec.theta_double_prime = kPi / 4.0;
  spec.grid = uniform_grid(0.0, kPi, grid_points, /*include_end=*/false);
  return spec;
}

double entanglement_entropy_state(const StateVector& psi) {
  require(psi.num_qubits() == 2, "entanglement_entropy_state: two-qubit state required");
  require(std::abs(psi.squared_norm() - 1.0) <= 1e-10,
          "entanglement_entropy_state: state is not normalized");
  const double s = von_neumann_entropy(reduced_density(psi, {0}));
  return std::min(s, 1.0);
}

double entanglement_entropy_closed_form(double theta_double_prime) {
  require(std::isfinite(theta_double_prime),
          "entanglement_entropy_closed_form: angle must be finite");
  const double c2 = std::cos(theta_double_prime) * std::cos(theta_double_prime);
  const double s2 = std::sin(theta_double_prime) * std::sin(theta_double_prime);
  return std::min(h_bits(c2) + h_bits(s2), 1.0);
}

double mutual_information_ad(const DensityMatrix& rho_abcd) {
  require(rho_abcd.num_qubits() == 4, "mutual_information_ad: four-qubit state required");
  const double s_a = von_neumann_entropy(partial_trace(rho_abcd, {0}));
  const double s_d = von_neumann_entropy(partial_trace(rho_abcd, {3}));
  const double s_ad = von_neumann_entropy(partial_trace(rho_abcd, {0, 3}));
  const double mi = s_a + s_d - s_ad;
  if (mi < -1e-10)
    throw NotAStateError("mutual_information_ad: negative beyond round-off; invalid state");
  return mi > 0.0 ? mi : 0.0;
}

DensityMatrix classical_counterpart(const AngleTriple& angles) {
  validate_angles(angles);
  const Matrix u = rotation_matrix(angles.theta).entries();
  const Matrix up = rotation_matrix(angles.theta_prime).entries();
  const Matrix upp = rotation_matrix(angles.theta_double_prime).entries();

  Matrix diag(16, 16);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const std::size_t idx = static_cast<std::size_t>(i << 3 | j << 2 | k << 1 | l);
          diag(idx, idx) =
              0.5 * std::norm(u(i, j)) * std::norm(up(j, k)) * std::norm(upp(k, l));
        }
  return DensityMatrix(4, std::move(diag));
}

double coherence_trace_distance(const AngleTriple& angles) {
  return trace_distance(reduced_abcd(prepare_joint_state(angles)), classical_counterpart(angles));
}

double averaged_trace_distance(double theta, double theta_double_prime,
                               const std::vector<double>& averaging_grid) {
  require(!averaging_grid.empty(), "averaged_trace_distance: averaging grid is empty");
  double sum = 0.0;
  for (double theta_prime : averaging_grid)
    sum += coherence_trace_distance({theta, theta_prime, theta_double_prime});
  return sum / static_cast<double>(averaging_grid.size());
}

SweepResult run_sweep(const SweepSpec& spec) {
  check_grid(spec.grid, "run_sweep");
  SweepResult result;
  result.spec = spec;
  result.points.reserve(spec.grid.size());
  for (double x : spec.grid) {
    double value = 0.0;
    if (spec.swept == SweepSpec::Parameter::ThetaDoublePrime) {
      value = averaged_trace_distance(spec.theta, x, spec.averaging_grid);
    } else {
      value = coherence_trace_distance({spec.theta, x, spec.theta_double_prime});
    }
    result.points.push_back({x, value});
  }
  return result;
}

ConditionReport condition_scan(const std::vector<double>& theta_grid,
                               const std::vector<double>& theta_prime_grid,
                               const std::vector<double>& theta_double_prime_grid) {
  check_grid(theta_grid, "condition_scan");
  check_grid(theta_prime_grid, "condition_scan");
  check_grid(theta_double_prime_grid, "condition_scan");

  ConditionReport report;
  report.points.reserve(theta_grid.size() * theta_prime_grid.size() *
                        theta_double_prime_grid.size());
  for (double theta : theta_grid) {
    for (double theta_prime : theta_prime_grid) {
      for (double theta_double_prime : theta_double_prime_grid) {
        ConditionPoint point;
        point.angles = {theta, theta_prime, theta_double_prime};
        point.mutual_info_ad_bits =
            mutual_information_ad(reduced_abcd(prepare_joint_state(point.angles)));

        double lo = 2.0, hi = -1.0;
        for (int i = 0; i < 2; ++i) {
          for (int l = 0; l < 2; ++l) {
            try {
              const ConditionalState cs = conditional_state(point.angles, i, l);
              const double se = entanglement_entropy_state(cs.state);
              point.conditional_entropies[static_cast<std::size_t>(i << 1 | l)] = se;
              lo = std::min(lo, se);
              hi = std::max(hi, se);
            } catch (const DegenerateOutcomeError&) {
              ++point.num_degenerate;
            }
          }
        }
        // the four probabilities sum to 2, so at least one outcome is defined
        point.se_min_bits = lo;
        point.se_max_bits = hi;
        point.entropies_constant = (hi - lo) < kVanishingBits;
        point.entanglement_nonzero = lo > kPositiveBits;
        report.points.push_back(std::move(point));
      }
    }
  }
  return report;
}

}  // namespace entsim
