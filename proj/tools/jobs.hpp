#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace hsm::cli {

inline constexpr const char* kVersion = "0.1.0";

struct JobConfig {
  std::string kind;
  double tolerance = 1e-7;
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "json";

  std::string matrix;
  std::string multiplier;
  std::string group;
  std::string window;
  std::string suite = "all";
  int instances = 30;
  int inner_radius = -1;
  int outer_radius = -1;
  bool factors = false;
  nlohmann::json steps = nlohmann::json::array();
};

struct JobResult {
  nlohmann::json report;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  bool pass = true;
};

const std::vector<std::string>& job_kinds();

/// Applies a JSON config on top of cfg; relative paths resolve against
/// base_dir. Throws ParseError on unknown keys or wrong types.
void apply_config(JobConfig& cfg, const nlohmann::json& j, const std::filesystem::path& base_dir);

/// Throws hsm::Error subclasses; the caller maps them to exit codes.
JobResult run(const JobConfig& cfg);

std::string render(const JobResult& r, const std::string& format);

}  // namespace hsm::cli
