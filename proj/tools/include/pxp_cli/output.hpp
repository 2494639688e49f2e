#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace pxp::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// 12 significant digits.
std::string num(double x);

/// UTC timestamp for the excluded header line.
std::string utc_now();

/**
 * CSV file with '#' metadata. The first line carries the tool version and
 * timestamp; everything after it is deterministic for a given config.
 */
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const nlohmann::ordered_json& config,
            const std::vector<std::string>& columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void meta(const std::string& key, const std::string& value);
  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream os_;
  std::size_t columns_;
  bool header_written_ = false;
  std::vector<std::string> header_;
  void flush_header();
};

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);

/// Doubles rounded to the CSV print precision so JSON and CSV agree.
double rounded(double x);

}  // namespace pxp::cli
