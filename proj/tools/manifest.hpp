#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orthodisk/report.hpp"

namespace orthodisk::cli {

/// Lowercase hex SHA-256 of a file's bytes. Throws std::runtime_error if the
/// file cannot be read.
std::string sha256_file(const std::string& path);

struct RunManifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> params;  // flag -> value, as given or defaulted
  std::vector<std::pair<std::string, std::string>> inputs;  // path -> sha256
  std::string version;
  double duration_seconds = 0.0;

  report::Json to_json() const;
};

}  // namespace orthodisk::cli
