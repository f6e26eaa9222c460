#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hcx/cli.hpp"

namespace {

// Writes next to the target and renames, so readers never see a partial file.
bool write_atomically(const std::string& path, const std::string& text) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::trunc);
    out << text;
    if (!out.flush()) return false;
  }
  return std::rename(temp.c_str(), path.c_str()) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and verify the h-complex of the truncated Boolean algebra"};
  app.require_subcommand(1);

  hcx::RunConfig config;
  std::string format, out;
  double timeBudget = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md", "markdown"}));
    sub->add_option("--cache-dir", config.cacheDir, "result cache directory")->envname("HCX_CACHE_DIR");
    sub->add_flag("--unsafe-budget", config.budget.unsafe, "lift the size ceilings");
    sub->add_option("--out", out, "write the artifact here instead of stdout");
    sub->add_flag("-v,--verbose", config.verbosity, "progress and timing on stderr");
  };
  auto with_n = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--n", config.n, "size of the ground set")->check(CLI::Range(1, hcx::kMaxN));
    if (required) opt->required();
  };

  auto* build = app.add_subcommand("build", "enumerate the faces of Delta_n");
  with_n(build, true);
  auto* match = app.add_subcommand("match", "build and verify the matching");
  with_n(match, true);
  match->add_flag("--dual", config.dual, "use the dual matching");
  auto* morse = app.add_subcommand("morse", "Morse numbers and an acyclicity certificate");
  with_n(morse, true);
  morse->add_flag("--dual", config.dual, "use the dual matching");
  auto* homology = app.add_subcommand("homology", "reduced homology");
  with_n(homology, true);
  homology->add_option("--coeff", config.coefficients, "Z, Q or F<p>");
  homology->add_option("--time-budget", timeBudget, "seconds before giving up on a boundary rank");
  auto* witness = app.add_subcommand("witness", "free-face cycle witnesses");
  with_n(witness, true);
  witness->add_option("--k", config.k, "cycle dimension (default: every admissible k)");
  auto* conjecture = app.add_subcommand("conjecture", "check the non-vanishing range for n = 1..n-max");
  with_n(conjecture, false);
  conjecture->add_option("--n-max", config.nMax, "largest n")->check(CLI::Range(1, hcx::kMaxN));
  conjecture->add_option("--time-budget", timeBudget, "seconds per boundary rank");
  auto* report = app.add_subcommand("report", "full report for n = 1..n-max");
  with_n(report, false);
  report->add_option("--n-max", config.nMax, "largest n")->check(CLI::Range(1, hcx::kMaxN));
  report->add_option("--time-budget", timeBudget, "seconds per boundary rank");
  for (auto* sub : {build, match, morse, homology, witness, conjecture, report}) common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? hcx::kExitPass : hcx::kExitUsage;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (timeBudget > 0) config.timeBudget = std::chrono::milliseconds(static_cast<long long>(timeBudget * 1000));
  try {
    if (!format.empty()) config.format = hcx::parse_format(format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hcx::kExitUsage;
  }

  if (out.empty()) return hcx::execute(config, std::cout, std::cerr);
  std::ostringstream buffer;
  const int status = hcx::execute(config, buffer, std::cerr);
  if (!write_atomically(out, buffer.str())) {
    std::cerr << "error: could not write " << out << "\n";
    return hcx::kExitUsage;
  }
  return status;
}
