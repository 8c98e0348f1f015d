#pragma once

#include <atomic>
#include <filesystem>
#include <string>

// Fresh writable directory for a test case, unique across the whole test
// binary so cases can run in any order without clobbering each other.
inline std::filesystem::path make_temp_dir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path dir = std::filesystem::temp_directory_path() /
                              ("wuxu_test_" + tag + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}
