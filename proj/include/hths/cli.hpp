#pragma once

// Command-line front end: betti, poincare, arrangement and verify over a graph
// given as JSON.  Exit codes: 0 success, 1 verification failure, 2 input error.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hths/graph.hpp"

namespace hths {

struct RunConfig {
  std::string command;
  std::string graph_path;
  std::uint64_t seed = 0;
  std::size_t max_dim = 3;
  bool json = false;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;
  /// Machine-readable report: checks plus, per eligible edge and degree i,
  /// the exactness flags and the dimension sequences used.
  std::string json;

  bool passed() const;
};

/// Every verification that applies to the graph.  Failures are recorded, not
/// thrown.
VerificationReport run_verification(const MultiGraph& g, std::uint64_t seed = 0, std::size_t max_dim = 3);

int cmd_betti(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_poincare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_arrangement(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hths
