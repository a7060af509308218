#include "support/cli_runner.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>

#include "currikit/ingest.hpp"

namespace cli_test {

namespace {

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

RunResult run_cli(const std::vector<std::string>& args, const std::string& threads) {
  std::string cmd = threads.empty() ? "env -u CURRIKIT_THREADS " : "env CURRIKIT_THREADS=" + quote(threads) + " ";
  cmd += quote(CURRIKIT_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>&1";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("currikit_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string file_digest(const std::filesystem::path& path) {
  return currikit::sha256_hex(currikit::read_file(path));
}

}  // namespace cli_test
