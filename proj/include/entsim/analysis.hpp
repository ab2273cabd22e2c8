// analysis.hpp
// Diagnostics over the encoded chain: entanglement entropy (state-based and
// closed form), the A:D mutual-information condition, the decohered classical
// counterpart, coherence trace-distance curves, and angle-grid scans.
// Grid points are independent and may be evaluated concurrently by callers;
// the functions here evaluate sequentially in grid order, deterministically.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "entsim/protocol.hpp"
#include "entsim/qcore.hpp"

namespace entsim {

// Thresholds for classifying the condition-scan quantities: below kVanishing
// counts as zero, above kPositive as positive, in between as indeterminate.
inline constexpr double kVanishingBits = 1e-9;
inline constexpr double kPositiveBits = 1e-6;

// One trace-distance curve: which parameter is swept, the fixed angles, the
// swept grid (strictly increasing) and, for averaged curves, the theta'
// averaging grid.
struct SweepSpec {
  enum class Parameter { ThetaPrime, ThetaDoublePrime };

  Parameter swept = Parameter::ThetaDoublePrime;
  double theta = 0.0;
  double theta_double_prime = 0.0;  // fixed value; used when sweeping theta'
  std::vector<double> grid;
  std::vector<double> averaging_grid;  // theta' grid; empty when not averaged

  // theta = pi/4, theta'' swept over [0, pi/2] (closed), averaged over a
  // half-open theta' grid on [0, pi).
  static SweepSpec fig2(std::size_t grid_points = 91, std::size_t averaging_points = 181);
  // theta = theta'' = pi/4, theta' swept over [0, pi) (half-open).
  static SweepSpec fig3(std::size_t grid_points = 181);
};

struct SweepPoint {
  double swept_value = 0.0;
  double trace_distance = 0.0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepPoint> points;
};

// Per-grid-point record of the entanglement-generation condition.
struct ConditionPoint {
  AngleTriple angles;
  double mutual_info_ad_bits = 0.0;
  // Conditional-state entanglement entropies by outcome index 2i+l; nullopt
  // marks a degenerate (zero-probability) outcome.
  std::array<std::optional<double>, 4> conditional_entropies;
  double se_min_bits = 0.0;  // over defined outcomes
  double se_max_bits = 0.0;
  bool entropies_constant = false;  // max - min < kVanishingBits over defined
  bool entanglement_nonzero = false;  // se_min > kPositiveBits
  int num_degenerate = 0;
};

struct ConditionReport {
  std::vector<ConditionPoint> points;
};

// Entanglement entropy of a normalized two-qubit pure state, in bits.
double entanglement_entropy_state(const StateVector& psi);

// -cos^2 t'' log2 cos^2 t'' - sin^2 t'' log2 sin^2 t''; the value the
// conditional states take at theta = pi/4, independent of theta'.
double entanglement_entropy_closed_form(double theta_double_prime);

// S(A) + S(D) - S(AD) of a four-qubit (A,B,C,D) state, in bits; tiny negative
// round-off is clipped to zero.
double mutual_information_ad(const DensityMatrix& rho_abcd);

// Fully decohered counterpart: diagonal entries (1/2)|U_ij|^2|U'_jk|^2|U''_kl|^2.
DensityMatrix classical_counterpart(const AngleTriple& angles);

// Trace distance between the encoded (A,B,C,D) state and its decohered
// counterpart.
double coherence_trace_distance(const AngleTriple& angles);

// Uniform average of coherence_trace_distance over theta' in the grid.
double averaged_trace_distance(double theta, double theta_double_prime,
                               const std::vector<double>& averaging_grid);

// Evaluates a sweep; point order follows the grid.
SweepResult run_sweep(const SweepSpec& spec);

// Cartesian scan (theta outer, theta' middle, theta'' inner) recording the
// A:D mutual information and the four conditional entanglement entropies.
ConditionReport condition_scan(const std::vector<double>& theta_grid,
                               const std::vector<double>& theta_prime_grid,
                               const std::vector<double>& theta_double_prime_grid);

// n evenly spaced points from lo; includes hi when closed, else stops short.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n, bool include_end);

}  // namespace entsim
