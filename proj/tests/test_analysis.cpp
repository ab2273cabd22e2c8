// test_analysis.cpp

#include <cmath>
#include <random>

#include "doctest.h"
#include "entsim/analysis.hpp"
#include "oracles.hpp"

using namespace entsim;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;

AngleTriple random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  return {angle(rng), angle(rng), angle(rng)};
}

// Closed form of the coherence trace distance at theta = pi/4, theta'' = 0:
// each (A,D) sector keeps one single-qubit coherence of magnitude |sin 2t'|/8.
double t_at_tpp_zero(double theta_prime) { return 0.5 * std::abs(std::sin(2.0 * theta_prime)); }

}  // namespace

TEST_CASE("entanglement_entropy_state: known values") {
  CHECK(entanglement_entropy_state(
            StateVector::normalized(2, {kInvSqrt2, 0.0, 0.0, kInvSqrt2})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entanglement_entropy_state(StateVector::basis(2, 1)) == 0.0);

  const double c = std::cos(kPi / 6.0), s = std::sin(kPi / 6.0);
  // reduced spectrum (3/4, 1/4); frozen from the entropy oracle
  CHECK(entanglement_entropy_state(StateVector::normalized(2, {c, 0.0, 0.0, s})) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-12));

  CHECK_THROWS_AS(entanglement_entropy_state(StateVector::raw(2, {0.5, 0.0, 0.0, 0.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(entanglement_entropy_state(StateVector::basis(1, 0)),
                  std::invalid_argument);
}

TEST_CASE("entanglement_entropy_closed_form: endpoints and frozen value") {
  CHECK(entanglement_entropy_closed_form(0.0) == 0.0);
  CHECK(entanglement_entropy_closed_form(kPi / 4.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entanglement_entropy_closed_form(kPi / 6.0) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-12));
}

TEST_CASE("closed form matches the Schmidt oracle on conditional states") {
  for (double tp : uniform_grid(0.0, kPi, 11, false))
    for (double tpp : uniform_grid(0.0, kPi / 2.0, 11, true)) {
      const double closed = entanglement_entropy_closed_form(tpp);
      for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l) {
          const StateVector phi = conditional_state({kPi / 4.0, tp, tpp}, i, l).state;
          CHECK(std::abs(oracle::schmidt_entropy_bits(phi) - closed) < 1e-10);
          CHECK(std::abs(entanglement_entropy_state(phi) - closed) < 1e-10);
        }
    }
}

TEST_CASE("mutual_information_ad: known values") {
  auto mi = [](const AngleTriple& angles) {
    return mutual_information_ad(reduced_abcd(prepare_joint_state(angles)));
  };
  CHECK(mi({kPi / 4.0, 0.3, 0.6}) < 1e-10);
  CHECK(mi({0.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mi({kPi / 8.0, kPi / 8.0, kPi / 8.0}) > 1e-3);
  CHECK_THROWS_AS(mutual_information_ad(DensityMatrix::maximally_mixed(2)),
                  std::invalid_argument);
}

TEST_CASE("classical_counterpart: diagonal of the joint state") {
  const DensityMatrix sigma0 = classical_counterpart({0.0, 0.0, 0.0});
  Matrix expected(16, 16);
  expected(0, 0) = 0.5;
  expected(15, 15) = 0.5;
  CHECK(max_abs_diff(sigma0.entries(), expected) < 1e-15);

  std::mt19937_64 rng(101);
  for (int t = 0; t < 10; ++t) {
    const AngleTriple angles = random_angles(rng);
    const DensityMatrix sigma = classical_counterpart(angles);
    CHECK(std::abs(sigma.entries().trace() - Complex{1.0, 0.0}) < 1e-12);

    const DensityMatrix rho = reduced_abcd(prepare_joint_state(angles));
    for (std::size_t r = 0; r < 16; ++r)
      for (std::size_t c = 0; c < 16; ++c) {
        const Complex expect = r == c ? rho.entries()(r, r) : Complex{0.0, 0.0};
        CHECK(std::abs(sigma.entries()(r, c) - expect) < 1e-12);
      }
  }
}

TEST_CASE("coherence_trace_distance: frozen values and bound") {
  // four rotated-Bell sectors, each contributing 1/4 of trace norm
  CHECK(coherence_trace_distance({kPi / 4.0, 0.0, kPi / 4.0}) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // fully classical chain: conditional states are computational basis states
  CHECK(coherence_trace_distance({kPi / 4.0, 0.0, 0.0}) < 1e-12);

  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int t = 0; t < 10; ++t) {
    const AngleTriple angles{kPi / 4.0, angle(rng), kPi / 4.0};
    const double T = coherence_trace_distance(angles);
    CHECK(T < 1.0);
    CHECK(T == doctest::Approx(oracle::trace_distance(
                   reduced_abcd(prepare_joint_state(angles)), classical_counterpart(angles)))
                   .epsilon(1e-11));
  }
}

TEST_CASE("coherence_trace_distance: single-coherence closed form at theta2 = 0") {
  for (double tp : uniform_grid(0.0, kPi, 13, false))
    CHECK(coherence_trace_distance({kPi / 4.0, tp, 0.0}) ==
          doctest::Approx(t_at_tpp_zero(tp)).epsilon(1e-12));
}

TEST_CASE("averaged_trace_distance: grid average of the closed form at theta2 = 0") {
  const std::vector<double> grid = uniform_grid(0.0, kPi, 61, false);
  double expected = 0.0;
  for (double tp : grid) expected += t_at_tpp_zero(tp);
  expected /= static_cast<double>(grid.size());
  CHECK(averaged_trace_distance(kPi / 4.0, 0.0, grid) ==
        doctest::Approx(expected).epsilon(1e-12));
  // close to the exact uniform average 1/pi
  CHECK(averaged_trace_distance(kPi / 4.0, 0.0, grid) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-3));
}

TEST_CASE("averaged_trace_distance: bounds and monotonicity on [0, pi/4]") {
  const std::vector<double> avg = uniform_grid(0.0, kPi, 45, false);
  const double at_quarter = averaged_trace_distance(kPi / 4.0, kPi / 4.0, avg);
  CHECK(at_quarter > 0.0);
  CHECK(at_quarter < 1.0);

  double prev = -1.0;
  for (double tpp : uniform_grid(0.0, kPi / 4.0, 9, true)) {
    const double t = averaged_trace_distance(kPi / 4.0, tpp, avg);
    CHECK(t >= prev - 1e-12);
    prev = t;
  }

  CHECK_THROWS_AS(averaged_trace_distance(kPi / 4.0, 0.0, {}), std::invalid_argument);
}

TEST_CASE("run_sweep: fig2 and fig3 shapes") {
  const SweepResult fig2 = run_sweep(SweepSpec::fig2(5, 15));
  REQUIRE(fig2.points.size() == 5);
  CHECK(fig2.points.front().swept_value == 0.0);
  CHECK(fig2.points.back().swept_value == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  for (const SweepPoint& p : fig2.points) CHECK(p.trace_distance < 1.0);

  const SweepResult fig3 = run_sweep(SweepSpec::fig3(8));
  REQUIRE(fig3.points.size() == 8);
  CHECK(fig3.points.front().swept_value == 0.0);
  CHECK(fig3.points.front().trace_distance == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fig3.points.back().swept_value < kPi);
  for (const SweepPoint& p : fig3.points) CHECK(p.trace_distance < 1.0);

  SweepSpec bad;
  CHECK_THROWS_AS(run_sweep(bad), std::invalid_argument);
}

TEST_CASE("condition_scan: flags the quarter-pi family and degeneracies") {
  const ConditionReport report =
      condition_scan({kPi / 8.0, kPi / 4.0}, {0.3}, {0.0, 0.6});
  REQUIRE(report.points.size() == 4);

  // (pi/4, 0.3, 0.6): vanishing mutual information, constant nonzero entropies
  const ConditionPoint& family = report.points[3];
  CHECK(family.mutual_info_ad_bits < 1e-9);
  CHECK(family.entropies_constant);
  CHECK(family.entanglement_nonzero);
  CHECK(family.num_degenerate == 0);

  // (pi/4, 0.3, 0): vanishing mutual information with vanishing entropies
  const ConditionPoint& flat = report.points[2];
  CHECK(flat.mutual_info_ad_bits < 1e-9);
  CHECK(flat.entropies_constant);
  CHECK_FALSE(flat.entanglement_nonzero);
  CHECK(flat.se_max_bits < 1e-12);

  // (pi/8, 0.3, *): positive mutual information
  CHECK(report.points[0].mutual_info_ad_bits > 1e-6);
  CHECK(report.points[1].mutual_info_ad_bits > 1e-6);

  const ConditionReport degen = condition_scan({0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0});
  CHECK(degen.points.front().num_degenerate == 2);  // the i != l outcomes at (0,0,0)

  CHECK_THROWS_AS(condition_scan({}, {0.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(condition_scan({1.0, 0.5}, {0.0}, {0.0}), std::invalid_argument);
}

TEST_CASE("uniform_grid: closed and half-open") {
  const std::vector<double> closed = uniform_grid(0.0, 1.0, 5, true);
  CHECK(closed.front() == 0.0);
  CHECK(closed.back() == 1.0);
  CHECK(closed[1] == doctest::Approx(0.25).epsilon(1e-15));

  const std::vector<double> open = uniform_grid(0.0, 1.0, 4, false);
  CHECK(open.back() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 1, true), std::invalid_argument);
  CHECK_THROWS_AS(uniform_grid(1.0, 0.0, 4, false), std::invalid_argument);
}
