#include "pxp_cli/output.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace pxp::cli {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double rounded(double x) { return std::stod(num(x)); }

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const nlohmann::ordered_json& config,
                     const std::vector<std::string>& columns)
    : os_(path), columns_(columns.size()), header_(columns) {
  if (!os_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os_ << "# pxp " << kToolVersion << " generated " << utc_now() << '\n';
  for (const auto& [key, value] : config.items()) os_ << "# " << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

CsvWriter::~CsvWriter() {
  if (!header_written_) flush_header();
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
  if (header_written_) throw std::logic_error("metadata must precede the CSV header");
  os_ << "# " << key << '=' << value << '\n';
}

void CsvWriter::flush_header() {
  for (std::size_t i = 0; i < header_.size(); ++i) os_ << (i ? "," : "") << header_[i];
  os_ << '\n';
  header_written_ = true;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::logic_error("CSV row width does not match the header");
  if (!header_written_) flush_header();
  for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
  os_ << '\n';
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
}

}  // namespace pxp::cli
