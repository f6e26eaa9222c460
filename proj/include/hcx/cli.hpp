#pragma once

// Command dispatch, per-n verification rows and report rendering for the
// `hcx` tool. Everything here writes to caller-supplied streams so it can be
// driven from tests.

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hcx/cache.hpp"

namespace hcx {

enum class OutputFormat { Json, Csv, Markdown };

OutputFormat parse_format(const std::string& name);

enum ExitCode : int { kExitPass = 0, kExitFalsified = 1, kExitUsage = 2 };

struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::optional<int> nMax;
  std::optional<int> k;
  bool dual = false;
  std::string coefficients = "Z";
  std::string cacheDir;
  std::optional<OutputFormat> format;
  Budget budget;
  std::optional<std::chrono::milliseconds> timeBudget;
  int verbosity = 0;
};

struct ConjectureRow {
  int n = 0;
  std::vector<int> expected;
  std::vector<int> observed;
  std::string method;
  bool complete = true;
  bool primalMorseOk = false;
  bool dualMorseOk = false;
  bool acyclicOk = false;
  bool symmetryOk = false;
  bool witnessOk = false;

  // Detail for the long-form report.
  std::vector<std::uint64_t> fVector;
  std::vector<std::uint64_t> primalMorse;
  std::vector<std::uint64_t> dualMorse;
  std::vector<BettiTable> tables;
  std::vector<std::string> failures;

  bool pass() const;
  std::string verdict() const;
};

struct ConjectureReport {
  std::vector<ConjectureRow> rows;

  bool pass() const;
};

// Runs every check for one n: both matchings (well-definedness, critical
// shapes, acyclicity, thresholds, Morse inequalities), the homology plan,
// symmetry and the witness family.
ConjectureRow conjecture_row(int n, ResultCache& cache, const Budget& budget, const HomologyOptions& options,
                             std::ostream* log = nullptr);

// Summary table: one row per n with the expected range next to the observed
// dimensions. Empty reports render as the header alone.
std::string render_report(const ConjectureReport& report, OutputFormat format);
// Summary plus per-n f-vectors, Morse numbers and Betti tables.
std::string render_full_report(const ConjectureReport& report, OutputFormat format);

// Dispatches config.command. Artifacts go to `out`, diagnostics to `log`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& log);

}  // namespace hcx
