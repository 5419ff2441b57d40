#pragma once

// Subcommands of the holocurve tool. Each returns the process exit status
// and reports failures as a JSON error object on `err`.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace holocurve::cli {

enum ExitStatus : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitDomain = 3,
  kExitConvergence = 4,
  kExitCheckFailed = 5,
};

struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  bool force = false;
  std::optional<std::string> suite;
  double target = 30.0;
  std::size_t dimension = 100;
};

int cmd_solve(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sensitivity(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_chi_witness(const CommandOptions& opts, std::ostream& out, std::ostream& err);

/// Writes `content` to a temporary sibling of `path` and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

const char* version();

}  // namespace holocurve::cli
