#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frl/numerics.hpp"

namespace frl::config {

using Json = nlohmann::ordered_json;

/// Invalid configuration value; key() names the offending parameter.
class ConfigError : public DomainError {
 public:
  ConfigError(std::string key, const std::string& what) : DomainError(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Malformed configuration text; line() is 1-based.
class ParseError : public DomainError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DomainError("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ExperimentConfig {
  std::string experiment;
  Json params = Json::object();  // every key of the experiment, defaults filled
  std::string out_dir = "out";
  std::uint64_t seed = 1;
};

const std::vector<std::string>& experiment_names();

/// Default parameter map of an experiment (ConfigError on unknown names).
Json defaults_for(const std::string& experiment);

/// Merge `user` over the defaults, type-check every key and apply the module preconditions.
ExperimentConfig make_config(const std::string& experiment, const Json& user, std::string out_dir = "out",
                             std::uint64_t seed = 1);

/// Parse configuration text (JSON object of parameters; optional "experiment" and "seed" entries).
Json parse_text(const std::string& text);

/// "key=value" overrides; the value is read as JSON and falls back to a plain string.
Json parse_overrides(const std::vector<std::string>& overrides);

/// Config file (optional) + overrides, validated for `experiment`.
ExperimentConfig load_config(const std::string& experiment, const std::optional<std::string>& path,
                             const std::vector<std::string>& overrides, std::string out_dir,
                             std::optional<std::uint64_t> seed);

}  // namespace frl::config
