#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>
#include <unistd.h>

namespace afdkit::testsupport {

inline std::filesystem::path fixture_dir() { return AFDKIT_FIXTURE_DIR; }
inline std::filesystem::path data_dir() { return AFDKIT_DATA_DIR; }
inline std::string cli_bin() { return AFDKIT_CLI_BIN; }

// Fresh unique directory under the system temp root.
inline std::filesystem::path make_temp_dir(const std::string& tag) {
  std::string tmpl =
      (std::filesystem::temp_directory_path() / ("afdkit-" + tag + "-XXXXXX")).string();
  char* made = mkdtemp(tmpl.data());
  if (!made) throw std::runtime_error("mkdtemp failed");
  return std::filesystem::path(made);
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) : path(make_temp_dir(tag)) {}
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace afdkit::testsupport
