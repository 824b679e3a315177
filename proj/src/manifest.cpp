#include "hybridleg/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hybridleg {

std::string current_utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest make_manifest(const std::string& command,
                          nlohmann::ordered_json parameters,
                          std::vector<std::string> outputs) {
  RunManifest m;
  m.command = command;
  m.parameters = std::move(parameters);
  m.tool = kToolName;
  m.version = kToolVersion;
  m.timestamp = current_utc_timestamp();
  m.outputs = std::move(outputs);
  return m;
}

nlohmann::ordered_json to_json(const RunManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["tool"] = manifest.tool;
  doc["version"] = manifest.version;
  doc["timestamp"] = manifest.timestamp;
  doc["command"] = manifest.command;
  doc["parameters"] = manifest.parameters;
  doc["outputs"] = manifest.outputs;
  return doc;
}

RunManifest manifest_from_json(const nlohmann::ordered_json& doc) {
  RunManifest m;
  m.tool = doc.at("tool").get<std::string>();
  m.version = doc.at("version").get<std::string>();
  m.timestamp = doc.at("timestamp").get<std::string>();
  m.command = doc.at("command").get<std::string>();
  m.parameters = doc.at("parameters");
  m.outputs = doc.at("outputs").get<std::vector<std::string>>();
  return m;
}

void write_manifest(const std::string& dir, const RunManifest& manifest) {
  write_text_file((std::filesystem::path(dir) / "manifest.json").string(),
                  to_json(manifest).dump(2) + "\n");
}

RunManifest read_manifest(const std::string& path) {
  const std::string text = read_text_file(path);
  return manifest_from_json(nlohmann::ordered_json::parse(text));
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hybridleg
