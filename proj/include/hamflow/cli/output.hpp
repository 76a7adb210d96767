#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hamflow::cli {

// Shortest decimal text that parses back to the same double.
std::string format_real(double value);
double parse_real(std::string_view text);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row();
  CsvTable& add(double value);
  CsvTable& add(long long value);
  CsvTable& add(int value) { return add(static_cast<long long>(value)); }
  CsvTable& add(std::size_t value) { return add(static_cast<long long>(value)); }
  CsvTable& add(bool value);
  CsvTable& add(std::string_view text);
  CsvTable& add(const char* text) { return add(std::string_view(text)); }

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return cells_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> cells_;
};

struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
};

CsvData parse_csv(std::string_view text);
CsvData read_csv(const std::filesystem::path& path);

// Creates parent directories; the file is replaced atomically enough for a
// single writer (temp file + rename).
void write_text(const std::filesystem::path& path, std::string_view content);
std::string read_text(const std::filesystem::path& path);

}  // namespace hamflow::cli
