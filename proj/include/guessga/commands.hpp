#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "guessga/config.hpp"
#include "guessga/report.hpp"

namespace guessga {

/// A subcommand as recorded in a manifest: name plus its positional
/// argument (calibration axis or level preset).
struct CommandRequest {
  std::string name;
  std::string argument;
};

struct CommandOutput {
  std::vector<std::filesystem::path> files;
  std::filesystem::path manifest;
};

/// Checks the command name, its argument and the configuration without
/// touching the filesystem. Throws InvalidArgument.
void validate_request(const CommandRequest& request, const Config& config);

/// The configuration with command-implied values (level iteration budget,
/// alternative payoff model) applied, as it will be recorded.
Config materialize(const CommandRequest& request, const Config& config);

/// Runs the experiment and writes its CSV file(s) plus one manifest into
/// config.out_dir.
CommandOutput execute(const CommandRequest& request, const Config& config);

/// Re-runs a manifest into `out_dir`.
CommandOutput replay(const std::filesystem::path& manifest_path, const std::filesystem::path& out_dir,
                     std::size_t jobs);

}  // namespace guessga
