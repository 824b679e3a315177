#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace hybridleg {

inline constexpr const char* kToolName = "hybridleg";
inline constexpr const char* kToolVersion = "1.0.0";

/// Reproducibility record written next to every set of generated artifacts:
/// which subcommand ran, the fully resolved parameter values, and what files
/// were produced.  Feeding the manifest back through the `replay` subcommand
/// re-runs the command and regenerates byte-identical outputs (the manifest
/// itself carries the only timestamp).
struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters;
  std::string tool;
  std::string version;
  std::string timestamp;  // ISO 8601 UTC
  std::vector<std::string> outputs;
};

std::string current_utc_timestamp();

RunManifest make_manifest(const std::string& command,
                          nlohmann::ordered_json parameters,
                          std::vector<std::string> outputs);

nlohmann::ordered_json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::ordered_json& doc);

/// Writes <dir>/manifest.json (creating the directory if needed).
void write_manifest(const std::string& dir, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

/// Writes a whole text file, creating parent directories; throws
/// std::runtime_error on I/O failure.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace hybridleg
