#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wuxu/hash.hpp"

// Command-line driver for reproducible scenarios. Kept in a library so
// the test suite can invoke commands in-process; main() is a thin shim.

namespace wuxu::cli {

/// Parsed scenario configuration file. Relative paths in the file are
/// resolved against the directory containing the config file.
struct ScenarioConfig {
  std::uint64_t seed = 0;
  HashAlg alg = HashAlg::kSha256;
  std::uint64_t freshness_window = 60;
  struct User {
    std::string id;
    std::string pw;
  };
  std::vector<User> users;  // registration order is significant
  User adversary;
  std::filesystem::path dictionary_path;  // optional; empty when absent
  std::filesystem::path output_path;      // artifact directory
};

ScenarioConfig load_config(const std::filesystem::path& path);

inline constexpr int kExitOk = 0;        // expected outcome
inline constexpr int kExitVerdict = 1;   // attack verdict contradicts --expect
inline constexpr int kExitUsage = 2;     // usage or I/O error

/// Runs one command. `args` excludes the program name and is in natural
/// order. All output goes to the given streams; nothing touches the
/// global stdio state.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace wuxu::cli
