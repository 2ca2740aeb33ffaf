#include "swarmgrad/io.hpp"

#include <fstream>
#include <stdexcept>

#include "swarmgrad/numerics.hpp"

namespace swarmgrad {

CsvWriter::CsvWriter(std::filesystem::path path,
                     std::vector<std::string> columns)
    : path_(std::move(path)), n_columns_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += columns[i];
  }
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != n_columns_)
    throw std::invalid_argument("csv: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += format_double(values[i]);
  }
  buffer_ += '\n';
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
  if (values.size() != n_columns_)
    throw std::invalid_argument("csv: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += values[i];
  }
  buffer_ += '\n';
}

void CsvWriter::close() {
  if (closed_) return;
  std::ofstream out(path_, std::ios::binary);
  if (!out) throw std::runtime_error("csv: cannot open " + path_.string());
  out << buffer_;
  closed_ = true;
}

void write_manifest(const std::filesystem::path& csv_path,
                    const std::string& command,
                    const nlohmann::ordered_json& config,
                    const nlohmann::ordered_json& summary, double wall_time_s) {
  nlohmann::ordered_json m;
  m["command"] = command;
  m["version"] = "0.1.0";
  m["config"] = config;
  m["summary"] = summary;
  m["wall_time_s"] = wall_time_s;
  m["outputs"] = {csv_path.filename().string()};
  std::filesystem::path p = csv_path;
  p += ".manifest.json";
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("manifest: cannot open " + p.string());
  out << m.dump(2) << '\n';
}

nlohmann::ordered_json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path.string());
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("config: parse error in " + path.string() + ": " +
                             e.what());
  }
  if (!j.is_object()) throw std::runtime_error("config: expected a JSON object");
  return j;
}

}  // namespace swarmgrad
