// selftest.hpp
// Built-in invariant suite covering the core, protocol and analysis modules.
// Deterministic (fixed seed); used by the CLI `selftest` subcommand.

#pragma once

#include <string>
#include <vector>

namespace entsim {

struct SelftestOptions {
  // Test hook: flip the sign of one encoded amplitude before the protocol
  // runs, to confirm the product-form invariant actually detects faults.
  bool inject_fault = false;
};

struct InvariantResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<InvariantResult> run_selftest(const SelftestOptions& options = {});

}  // namespace entsim
