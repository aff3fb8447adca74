#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sheafwb::cli {

enum class OutputFormat { Plain, Machine };

struct RunConfig {
  std::string subcommand;
  std::string sheaf_path;
  std::string site_path;
  std::vector<std::string> sections;  // x=node:elem
  OutputFormat format = OutputFormat::Plain;
  std::uint64_t seed = 1;

  std::vector<std::string> formulas;
  std::string node;
  std::string open;  // comma-separated nodes; empty means the environment's domain
  std::size_t depth = 1;
  std::size_t alpha = 2;
  std::size_t k = 1;
  std::size_t steps = 10;
  bool counts = false;
  bool check_fundamental = false;
  std::string axiom;
};

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2 };

// Parses argv-style arguments (without the program name) and runs the subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sheafwb::cli
