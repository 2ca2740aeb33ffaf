#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace swarmgrad {

// CSV with a header row; numbers in shortest round-trip form, LF endings.
class CsvWriter {
 public:
  CsvWriter(std::filesystem::path path, std::vector<std::string> columns);
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& values);
  void close();
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::string buffer_;
  std::size_t n_columns_;
  bool closed_ = false;
};

// Run manifest written next to every CSV: config echo, seed, version,
// wall time and a free-form summary object.
void write_manifest(const std::filesystem::path& csv_path,
                    const std::string& command,
                    const nlohmann::ordered_json& config,
                    const nlohmann::ordered_json& summary, double wall_time_s);

// Flat dotted-key JSON config: file values overridden by CLI values.
// Unknown keys are rejected against the per-command key registry.
nlohmann::ordered_json load_config_file(const std::filesystem::path& path);

}  // namespace swarmgrad
