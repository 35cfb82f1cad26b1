#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ima_cli/json_io.hpp"

namespace ima::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

inline const std::vector<std::string> kCommands{"contrast", "sweep", "genericity", "spurious", "reparam"};

struct RunConfig {
  std::string command;
  Json params = Json::object();  // normalized: every parameter present
  std::uint64_t master_seed = 0;
  int threads = 1;
  std::string output_dir = ".";
};

/// One documented parameter of a subcommand.
struct ParamSpec {
  std::string name;
  std::string description;
};

const std::vector<ParamSpec>& param_specs(const std::string& command);

/// Fully populated default parameters of a subcommand.
Json default_params(const std::string& command);

/// Validates params against the command's schema and preconditions and
/// returns them with defaults filled in. Throws ValidationError.
Json normalize_params(const std::string& command, const Json& params);

/// Parses a RunConfig document, rejecting unknown keys.
RunConfig run_config_from_json(const Json& j);
Json run_config_to_json(const RunConfig& config);

/// Executes the experiment and writes <command>.csv and manifest.json.
/// Errors are reported on `err` as one JSON object; the return value is the
/// process exit status.
int run(const RunConfig& config, std::ostream& err);

/// Help text listing every parameter with its default value.
std::string params_help(const std::string& command);

/// Entry point shared by the executable and the tests.
int main_entry(int argc, char** argv);

}  // namespace ima::cli
