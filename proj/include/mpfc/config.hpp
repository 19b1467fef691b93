#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpfc/harness.hpp"

namespace mpfc {

/// Everything a CLI invocation needs. Text form: one `key: value` per line,
/// dotted keys, `#` starts a comment. `scenario.preset` is applied before any
/// other key regardless of its position.
struct RunConfig {
  std::string preset = "small-static";
  Experiment experiment;
  std::string output_dir = "out";
  bool emit_fire_frames = false;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, int line, const std::string& message);
  const std::string& key() const { return key_; }
  int line() const { return line_; }  // 0 when the error is not tied to a line

 private:
  std::string key_;
  int line_;
};

RunConfig default_config();

/// Parses and fully validates a config. Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Canonical text with every key spelled out, in a fixed order.
std::string serialize_config(const RunConfig& config);

/// Hash of the canonical text.
std::string config_hash(const RunConfig& config);

/// Every recognised key, in canonical order.
std::vector<std::string> config_keys();

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace mpfc
