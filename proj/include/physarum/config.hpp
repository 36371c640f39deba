#pragma once

#include "physarum/experiment.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace physarum {

/// Config file problem. `line()` is 1-based, 0 when not tied to a line.
class ConfigParseError : public ConfigError {
public:
    ConfigParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

/// Parses the line-oriented `key = value` format (`#` starts a comment).
///
/// With `preset = li|la` every other key is an override of the preset; without
/// it all model, arena and run keys are required. Unknown keys, duplicates and
/// malformed values are errors. The result is validated before it is returned.
ExperimentConfig parse_config_text(std::string_view text);

/// Same grammar, but skips the final validate() so callers can report every
/// violation themselves.
ExperimentConfig parse_config_text_unchecked(std::string_view text);

/// Reads and parses a config file. A missing file is a ConfigError.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_unchecked(const std::filesystem::path& path);

/// Canonical, preset-free rendering; parse_config_text(format_config(c)) == c.
std::string format_config(const ExperimentConfig& config);

/// FNV-1a 64 of format_config(config), as 16 lowercase hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace physarum
