// cli.cpp

#include "entsim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "entsim/analysis.hpp"
#include "entsim/protocol.hpp"
#include "entsim/selftest.hpp"

namespace entsim {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// CSV rule: '.' decimal separator, 15 significant digits, '\n' line ends.
std::string fmt_g(double v, int significant = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, v);
  return buf;
}

// Angles are echoed at full round-trip precision.
std::string fmt_angle(double v) { return fmt_g(v, 17); }

const char* mode_name(ProtocolMode mode) {
  return mode == ProtocolMode::WithCommunication ? "locc" : "local";
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output path '" + out_path + "'");
  file << text;
  if (!file) throw std::invalid_argument("failed writing to '" + out_path + "'");
}

void check_finite(double v, const char* flag) {
  if (!std::isfinite(v))
    throw std::invalid_argument(std::string(flag) + " must be a finite value in radians");
}

// ---- run -------------------------------------------------------------------

std::string render_run_text(const VerificationReport& r) {
  std::string out;
  out += "mode                        " + std::string(mode_name(r.mode)) + "\n";
  out += "theta                       " + fmt_angle(r.angles.theta) + "\n";
  out += "theta_prime                 " + fmt_angle(r.angles.theta_prime) + "\n";
  out += "theta_double_prime          " + fmt_angle(r.angles.theta_double_prime) + "\n";
  out += "fidelity_to_target          " + fmt_g(r.fidelity_to_target) + "\n";
  out += "bc_purity                   " + fmt_g(r.bc_purity) + "\n";
  out += "final_entanglement_entropy  " + fmt_g(r.final_entanglement_entropy) + "\n";
  out += "mutual_info_bc_rest         " + fmt_g(r.mutual_info_bc_rest) + "\n";
  out += "passed                      " + std::string(r.passed ? "true" : "false") + "\n";
  return out;
}

ordered_json run_to_json(const VerificationReport& r) {
  return ordered_json{{"command", "run"},
                      {"mode", mode_name(r.mode)},
                      {"theta", r.angles.theta},
                      {"theta_prime", r.angles.theta_prime},
                      {"theta_double_prime", r.angles.theta_double_prime},
                      {"fidelity_to_target", r.fidelity_to_target},
                      {"bc_purity", r.bc_purity},
                      {"final_entanglement_entropy", r.final_entanglement_entropy},
                      {"mutual_info_bc_rest", r.mutual_info_bc_rest},
                      {"passed", r.passed}};
}

// ---- sweep -----------------------------------------------------------------

std::string render_sweep_csv(const SweepResult& result) {
  const bool fig2 = result.spec.swept == SweepSpec::Parameter::ThetaDoublePrime;
  std::string out = fig2 ? "theta_double_prime_rad,t_avg\n" : "theta_prime_rad,t\n";
  for (const SweepPoint& p : result.points)
    out += fmt_g(p.swept_value) + "," + fmt_g(p.trace_distance) + "\n";
  return out;
}

ordered_json sweep_to_json(const SweepResult& result) {
  const bool fig2 = result.spec.swept == SweepSpec::Parameter::ThetaDoublePrime;
  ordered_json meta{{"command", "sweep"},
                    {"figure", fig2 ? "fig2" : "fig3"},
                    {"theta", result.spec.theta},
                    {"grid_points", result.spec.grid.size()}};
  if (fig2)
    meta["averaging_points"] = result.spec.averaging_grid.size();
  else
    meta["theta_double_prime"] = result.spec.theta_double_prime;

  ordered_json rows = ordered_json::array();
  for (const SweepPoint& p : result.points) {
    if (fig2)
      rows.push_back({{"theta_double_prime_rad", p.swept_value}, {"t_avg", p.trace_distance}});
    else
      rows.push_back({{"theta_prime_rad", p.swept_value}, {"t", p.trace_distance}});
  }
  meta["rows"] = std::move(rows);
  return meta;
}

// ---- condition scan ----------------------------------------------------------

std::string render_condition_csv(const ConditionReport& report) {
  std::string out =
      "theta_rad,theta_prime_rad,theta_double_prime_rad,mutual_info_ad_bits,"
      "se_min_bits,se_max_bits,se_constant,num_degenerate\n";
  for (const ConditionPoint& p : report.points) {
    out += fmt_g(p.angles.theta) + "," + fmt_g(p.angles.theta_prime) + "," +
           fmt_g(p.angles.theta_double_prime) + "," + fmt_g(p.mutual_info_ad_bits) + "," +
           fmt_g(p.se_min_bits) + "," + fmt_g(p.se_max_bits) + "," +
           (p.entropies_constant ? "true" : "false") + "," +
           std::to_string(p.num_degenerate) + "\n";
  }
  return out;
}

ordered_json condition_to_json(const ConditionReport& report, std::size_t grid_points) {
  ordered_json rows = ordered_json::array();
  for (const ConditionPoint& p : report.points) {
    rows.push_back({{"theta_rad", p.angles.theta},
                    {"theta_prime_rad", p.angles.theta_prime},
                    {"theta_double_prime_rad", p.angles.theta_double_prime},
                    {"mutual_info_ad_bits", p.mutual_info_ad_bits},
                    {"se_min_bits", p.se_min_bits},
                    {"se_max_bits", p.se_max_bits},
                    {"se_constant", p.entropies_constant},
                    {"num_degenerate", p.num_degenerate}});
  }
  return ordered_json{{"command", "condition-scan"},
                      {"grid_points_per_axis", grid_points},
                      {"rows", std::move(rows)}};
}

// ---- selftest ----------------------------------------------------------------

std::string render_selftest_text(const std::vector<InvariantResult>& results) {
  std::string out;
  std::size_t passed = 0;
  for (const InvariantResult& r : results) {
    out += (r.passed ? "PASS  " : "FAIL  ");
    std::string name = r.name;
    name.resize(40, ' ');
    out += name + r.detail + "\n";
    if (r.passed) ++passed;
  }
  out += "selftest: " + std::to_string(passed) + "/" + std::to_string(results.size()) +
         " invariants passed\n";
  return out;
}

ordered_json selftest_to_json(const std::vector<InvariantResult>& results) {
  ordered_json invariants = ordered_json::array();
  bool all = true;
  for (const InvariantResult& r : results) {
    invariants.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  return ordered_json{{"command", "selftest"}, {"invariants", std::move(invariants)},
                      {"passed", all}};
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "entangle-sim: six-qubit encoding that lets two remote parties extract a\n"
      "shared entangled pair of qubits B and C by conditional local operations"};
  app.require_subcommand(1);

  double theta = 0.0, theta_prime = 0.0, theta2 = 0.0;
  std::string mode_str, figure, out_path;
  bool as_json = false, inject_fault = false;
  std::size_t grid = 0, avg_grid = 181;

  CLI::App* run = app.add_subcommand("run", "run the protocol once and verify the output");
  run->add_option("--theta", theta, "angle between the A and B observables (radians)")
      ->required();
  run->add_option("--theta-prime", theta_prime,
                  "angle between the B and C observables (radians, default 0)");
  run->add_option("--theta2", theta2, "angle between the C and D observables (radians)")
      ->required();
  run->add_option("--mode", mode_str,
                  "locc (one-way classical communication) or local (no communication)")
      ->required()
      ->check(CLI::IsMember({"locc", "local"}));
  run->add_flag("--json", as_json, "emit the report as JSON");
  run->add_option("--out", out_path, "write output to this path instead of stdout");

  CLI::App* sweep = app.add_subcommand("sweep", "emit a trace-distance curve as CSV");
  sweep->add_option("--figure", figure, "fig2 (t_avg vs theta2) or fig3 (t vs theta-prime)")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3"}));
  CLI::Option* grid_opt =
      sweep->add_option("--grid", grid, "points on the swept grid (default: fig2 91, fig3 181)");
  CLI::Option* avg_opt = sweep->add_option(
      "--avg-grid", avg_grid, "theta-prime averaging points for fig2 (default 181)");
  sweep->add_flag("--json", as_json, "emit rows as JSON instead of CSV");
  sweep->add_option("--out", out_path, "write output to this path instead of stdout");

  CLI::App* scan = app.add_subcommand(
      "condition-scan", "scan the A:D mutual-information condition over an angle grid");
  scan->add_option("--grid", grid, "points per axis over [0, pi/2] (default 11)");
  scan->add_flag("--json", as_json, "emit rows as JSON instead of CSV");
  scan->add_option("--out", out_path, "write output to this path instead of stdout");

  CLI::App* selftest = app.add_subcommand("selftest", "run the module invariant suite");
  selftest->add_flag("--json", as_json, "emit results as JSON");
  selftest->add_flag("--inject-fault", inject_fault,
                     "test hook: flip one encoded amplitude sign; the product-form "
                     "invariant must then fail");
  selftest->add_option("--out", out_path, "write output to this path instead of stdout");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return kExitUsage;
    }

    if (*run) {
      check_finite(theta, "--theta");
      check_finite(theta_prime, "--theta-prime");
      check_finite(theta2, "--theta2");
      const ProtocolMode mode =
          mode_str == "locc" ? ProtocolMode::WithCommunication : ProtocolMode::LocalOnly;
      const AngleTriple angles{theta, theta_prime, theta2};
      validate_mode_angles(mode, angles);  // mismatch is a usage error
      const VerificationReport report = run_protocol(angles, mode);
      emit(as_json ? run_to_json(report).dump(2) + "\n" : render_run_text(report), out_path);
      return report.passed ? kExitOk : kExitFailure;
    }

    if (*sweep) {
      const bool fig2 = figure == "fig2";
      if (grid_opt->count() == 0) grid = fig2 ? 91 : 181;
      if (grid < 2) throw std::invalid_argument("--grid must be at least 2");
      if (avg_opt->count() > 0 && !fig2)
        throw std::invalid_argument("--avg-grid only applies to fig2");
      if (avg_grid < 2) throw std::invalid_argument("--avg-grid must be at least 2");
      const SweepSpec spec = fig2 ? SweepSpec::fig2(grid, avg_grid) : SweepSpec::fig3(grid);
      const SweepResult result = run_sweep(spec);
      emit(as_json ? sweep_to_json(result).dump(2) + "\n" : render_sweep_csv(result), out_path);
      return kExitOk;
    }

    if (*scan) {
      if (grid == 0) grid = 11;
      if (grid < 2) throw std::invalid_argument("--grid must be at least 2 points per axis");
      const std::vector<double> axis =
          uniform_grid(0.0, 3.14159265358979323846 / 2.0, grid, /*include_end=*/true);
      const ConditionReport report = condition_scan(axis, axis, axis);
      emit(as_json ? condition_to_json(report, grid).dump(2) + "\n"
                   : render_condition_csv(report),
           out_path);
      return kExitOk;
    }

    // selftest
    const std::vector<InvariantResult> results = run_selftest({inject_fault});
    emit(as_json ? selftest_to_json(results).dump(2) + "\n" : render_selftest_text(results),
         out_path);
    for (const InvariantResult& r : results)
      if (!r.passed) return kExitFailure;
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace entsim
