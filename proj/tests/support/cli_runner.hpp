#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cli_test {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

/// Runs the currikit CLI with `args`, optionally setting CURRIKIT_THREADS.
RunResult run_cli(const std::vector<std::string>& args, const std::string& threads = "");

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

std::string file_digest(const std::filesystem::path& path);

}  // namespace cli_test
