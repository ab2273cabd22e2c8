// acceptance_main.cpp
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
// its measured runtime; the process exits nonzero if any selected criterion
// fails. --criterion N runs a single criterion; --cli PATH points at the
// entangle-sim binary (required by criterion 8).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "entsim/analysis.hpp"
#include "entsim/protocol.hpp"
#include "entsim/qcore.hpp"
#include "oracles.hpp"

using namespace entsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Criterion {
  int id;
  std::string name;
  double time_budget_s;
  std::function<bool(std::string&)> check;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// 1. Product-form verification: 200 locc samples and 200 local samples must
//    leave BC pure, on target, and uncorrelated with QRAD.
bool criterion_product_form(std::string& detail) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  double worst_purity = 1.0, worst_fidelity = 1.0, worst_mi = 0.0;
  for (int t = 0; t < 200; ++t) {
    const VerificationReport r =
        run_protocol({kPi / 4.0, angle(rng), angle(rng)}, ProtocolMode::WithCommunication);
    worst_purity = std::min(worst_purity, r.bc_purity);
    worst_fidelity = std::min(worst_fidelity, r.fidelity_to_target);
    worst_mi = std::max(worst_mi, r.mutual_info_bc_rest);
  }
  for (int t = 0; t < 200; ++t) {
    const VerificationReport r =
        run_protocol({kPi / 4.0, angle(rng), kPi / 4.0}, ProtocolMode::LocalOnly);
    worst_purity = std::min(worst_purity, r.bc_purity);
    worst_fidelity = std::min(worst_fidelity, r.fidelity_to_target);
    worst_mi = std::max(worst_mi, r.mutual_info_bc_rest);
  }
  detail = "min purity " + fmt(worst_purity) + ", min fidelity " + fmt(worst_fidelity) +
           ", max mutual info " + fmt(worst_mi);
  return worst_purity > 1.0 - 1e-9 && worst_fidelity > 1.0 - 1e-9 && worst_mi < 1e-9;
}

// 2. Closed-form entanglement entropy equals the Schmidt oracle on a 50x50
//    (theta', theta'') grid at theta = pi/4; exact endpoints.
bool criterion_entropy_closed_form(std::string& detail) {
  double worst = 0.0;
  for (double tp : uniform_grid(0.0, kPi, 50, false)) {
    for (double tpp : uniform_grid(0.0, kPi / 2.0, 50, true)) {
      const double closed = entanglement_entropy_closed_form(tpp);
      for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l) {
          const double se = oracle::schmidt_entropy_bits(
              conditional_state({kPi / 4.0, tp, tpp}, i, l).state);
          worst = std::max(worst, std::abs(se - closed));
        }
    }
  }
  const double end0 = std::abs(entanglement_entropy_closed_form(0.0));
  const double end1 = std::abs(entanglement_entropy_closed_form(kPi / 4.0) - 1.0);
  detail = "max |closed - oracle| " + fmt(worst) + ", |S(0)| " + fmt(end0) +
           ", |S(pi/4) - 1| " + fmt(end1);
  return worst < 1e-10 && end0 < 1e-12 && end1 < 1e-12;
}

// 3. LocalOnly maximality: 100 sampled theta' end with exactly one bit of
//    entanglement.
bool criterion_local_maximality(std::string& detail) {
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const VerificationReport r =
        run_protocol({kPi / 4.0, angle(rng), kPi / 4.0}, ProtocolMode::LocalOnly);
    worst = std::max(worst, std::abs(r.final_entanglement_entropy - 1.0));
  }
  detail = "max |S_E - 1| = " + fmt(worst);
  return worst < 1e-10;
}

// 4. Factorization dichotomy: the local disentangler is exactly the tensor
//    product of its halves; the locc one has operator-Schmidt rank >= 2.
bool criterion_factorization(std::string& detail) {
  const auto [ab, cd] = local_disentangler_halves();
  const double diff = max_abs_diff(disentangler_global(ProtocolMode::LocalOnly).entries(),
                                   kron(ab.entries(), cd.entries()));
  const std::size_t rank =
      operator_schmidt_rank_ab_cd(disentangler_global(ProtocolMode::WithCommunication));
  detail = "local factorization diff " + fmt(diff) + ", locc operator-Schmidt rank " +
           std::to_string(rank);
  return diff == 0.0 && rank >= 2;
}

// 5. Condition scan on an 11^3 grid over [0, pi/2]^3: quarter-pi-family points
//    have vanishing S(A:D); the all-pi/8 point is strictly positive.
bool criterion_condition_scan(std::string& detail) {
  const std::vector<double> axis = uniform_grid(0.0, kPi / 2.0, 11, true);
  const ConditionReport report = condition_scan(axis, axis, axis);
  double worst_family = 0.0;
  std::size_t family_points = 0;
  for (const ConditionPoint& p : report.points) {
    const bool family = [&p] {
      for (double t : {p.angles.theta, p.angles.theta_prime, p.angles.theta_double_prime}) {
        const double c = std::cos(t);
        if (std::abs(c * c - 0.5) < 1e-9) return true;
      }
      return false;
    }();
    if (family) {
      ++family_points;
      worst_family = std::max(worst_family, p.mutual_info_ad_bits);
    }
  }
  const double at_pi8 = mutual_information_ad(
      reduced_abcd(prepare_joint_state({kPi / 8.0, kPi / 8.0, kPi / 8.0})));
  detail = std::to_string(family_points) + " family points, max S(A:D) " + fmt(worst_family) +
           "; S(A:D) at all-pi/8 " + fmt(at_pi8);
  return family_points > 0 && worst_family < 1e-9 && at_pi8 > 1e-6;
}

// 6. Coherence curves: fig3 starts at exactly 1/2 and stays below one; fig2
//    vanishes at theta'' = 0, stays below one, and is non-decreasing up to pi/4.
bool criterion_coherence_curves(std::string& detail) {
  const SweepResult fig3 = run_sweep(SweepSpec::fig3());
  const double fig3_start = std::abs(fig3.points.front().trace_distance - 0.5);
  bool fig3_below_one = true;
  for (const SweepPoint& p : fig3.points) fig3_below_one = fig3_below_one && p.trace_distance < 1.0;

  const SweepResult fig2 = run_sweep(SweepSpec::fig2());
  const double fig2_at_zero = fig2.points.front().trace_distance;
  bool fig2_below_one = true;
  bool monotone = true;
  double prev = -1.0;
  for (const SweepPoint& p : fig2.points) {
    fig2_below_one = fig2_below_one && p.trace_distance < 1.0;
    if (p.swept_value <= kPi / 4.0 + 1e-12) {
      monotone = monotone && p.trace_distance >= prev - 1e-12;
      prev = p.trace_distance;
    }
  }
  detail = "fig3 |T(0) - 1/2| " + fmt(fig3_start) + ", fig3 below one " +
           (fig3_below_one ? "yes" : "NO") + "; fig2 t_avg(0) " + fmt(fig2_at_zero) +
           " (required < 1e-9), below one " + (fig2_below_one ? "yes" : "NO") +
           ", non-decreasing on [0, pi/4] " + (monotone ? "yes" : "NO");
  return fig3_start < 1e-9 && fig3_below_one && fig2_at_zero < 1e-9 && fig2_below_one &&
         monotone;
}

// 7. Probability completeness: the four conditional probabilities sum to two
//    on 1000 random angle triples.
bool criterion_probability_completeness(std::string& detail) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const AngleTriple angles{angle(rng), angle(rng), angle(rng)};
    double sum = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l) sum += conditional_probability(angles, i, l);
    worst = std::max(worst, std::abs(sum - 2.0));
  }
  detail = "max |sum p - 2| = " + fmt(worst);
  return worst < 1e-12;
}

// 8. Determinism: two consecutive fig2 sweeps through the CLI binary produce
//    byte-identical CSV files.
bool criterion_determinism(std::string& detail, const std::string& cli_path) {
  if (cli_path.empty()) {
    detail = "no --cli path provided";
    return false;
  }
  namespace fs = std::filesystem;
  const std::string a = (fs::temp_directory_path() / "entsim_accept_a.csv").string();
  const std::string b = (fs::temp_directory_path() / "entsim_accept_b.csv").string();
  const std::string base = "\"" + cli_path + "\" sweep --figure fig2 --out ";
  if (std::system((base + "\"" + a + "\"").c_str()) != 0 ||
      std::system((base + "\"" + b + "\"").c_str()) != 0) {
    detail = "CLI sweep invocation failed";
    return false;
  }
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string ca = slurp(a), cb = slurp(b);
  fs::remove(a);
  fs::remove(b);
  detail = std::to_string(ca.size()) + " bytes per file, " +
           (ca == cb ? "byte-identical" : "FILES DIFFER");
  return !ca.empty() && ca == cb;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  std::string cli_path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (arg == "--cli" && i + 1 < argc) cli_path = argv[++i];
  }

  const std::vector<Criterion> criteria = {
      {1, "product-form verification (200 locc + 200 local runs)", 5.0,
       [](std::string& d) { return criterion_product_form(d); }},
      {2, "entanglement entropy closed form (50x50 grid)", 2.0,
       [](std::string& d) { return criterion_entropy_closed_form(d); }},
      {3, "local-only maximal entanglement (100 runs)", 2.0,
       [](std::string& d) { return criterion_local_maximality(d); }},
      {4, "disentangler factorization dichotomy", 1.0,
       [](std::string& d) { return criterion_factorization(d); }},
      {5, "condition scan (11x11x11 grid)", 30.0,
       [](std::string& d) { return criterion_condition_scan(d); }},
      {6, "coherence curves (fig2 + fig3 sweeps)", 20.0,
       [](std::string& d) { return criterion_coherence_curves(d); }},
      {7, "probability completeness (1000 samples)", 1.0,
       [](std::string& d) { return criterion_probability_completeness(d); }},
      {8, "CSV determinism through the CLI", 20.0,
       [&cli_path](std::string& d) { return criterion_determinism(d, cli_path); }},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    if (only != 0 && criterion.id != only) continue;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criterion.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < criterion.time_budget_s;
    if (!in_budget)
      detail += " [exceeded " + fmt(criterion.time_budget_s) + " s budget]";
    const bool passed = ok && in_budget;
    std::printf("[%s] criterion %d: %s  (%.2f s)  %s\n", passed ? "PASS" : "FAIL",
                criterion.id, criterion.name.c_str(), seconds, detail.c_str());
    if (!passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
