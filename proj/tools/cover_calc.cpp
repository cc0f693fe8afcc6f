// cover-calc: command-line front end for the covercalc library.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covercalc/cli/run.hpp"

namespace cli = covercalc::cli;

int main(int argc, char** argv) {
  CLI::App app{"Covering numbers of modules by proper submodules and cosets"};
  app.name("cover-calc");

  std::string command;
  std::vector<std::string> args;
  bool json = false;
  cli::Options options;
  std::uint64_t max_size = 0;
  std::string puncture;

  std::string help_commands;
  for (const auto& c : cli::commands()) help_commands += (help_commands.empty() ? "" : ", ") + c;
  app.add_option("command", command, "One of: " + help_commands)->required();
  app.add_option("args", args, "Quoted specification(s) for the command");
  app.add_flag("--json", json, "Print the report as JSON");
  app.add_flag("--check", options.check, "Cross-check against the brute-force oracle where feasible");
  app.add_option("--max-size", max_size, "Override the oracle size bounds")->check(CLI::PositiveNumber);
  app.add_option("--puncture", puncture, "Puncture element for coset covers (default 0)");
  app.add_option("--maximal-only", options.maximal_only, "Restrict oracle searches to maximal parts (true|false)");
  app.add_flag("--timing", options.timing, "Include wall-clock time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }
  if (max_size > 0) options.max_size = max_size;
  if (!puncture.empty()) options.puncture = puncture;

  cli::Outcome out;
  try {
    out = cli::run(command, args, options);
  } catch (const cli::UsageError& e) {
    std::cerr << "cover-calc: " << e.what() << "\n" << app.help();
    return cli::kUsage;
  }
  if (json) {
    std::cout << out.report.dump(2) << "\n";
  } else {
    std::cout << cli::render_human(out.report);
  }
  return out.exit_code;
}
