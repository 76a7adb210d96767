#include "hamflow/cli/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace hamflow::cli {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format real");
  return {buf.data(), end};
}

double parse_real(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [end, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || end != last)
    throw std::invalid_argument("not a real number: '" + std::string(text) + "'");
  return value;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("csv header must not be empty");
}

CsvTable& CsvTable::row() {
  if (!cells_.empty() && cells_.back().size() != header_.size())
    throw std::logic_error("csv row has the wrong number of cells");
  cells_.emplace_back();
  cells_.back().reserve(header_.size());
  return *this;
}

CsvTable& CsvTable::add(double value) { return add(std::string_view(format_real(value))); }

CsvTable& CsvTable::add(long long value) { return add(std::string_view(std::to_string(value))); }

CsvTable& CsvTable::add(bool value) { return add(std::string_view(value ? "true" : "false")); }

CsvTable& CsvTable::add(std::string_view text) {
  if (cells_.empty()) throw std::logic_error("call row() before add()");
  if (cells_.back().size() == header_.size()) throw std::logic_error("csv row is already full");
  if (text.find_first_of(",\"\n") != std::string_view::npos)
    throw std::invalid_argument("csv cell needs quoting: '" + std::string(text) + "'");
  cells_.back().emplace_back(text);
  return *this;
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : cells_) {
    if (r.size() != header_.size()) throw std::logic_error("csv row has the wrong number of cells");
    line(r);
  }
  return out;
}

std::size_t CsvData::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range("no column '" + std::string(name) + "'");
}

CsvData parse_csv(std::string_view text) {
  CsvData data;
  bool first = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.emplace_back(line.substr(start, comma == std::string_view::npos ? line.size() - start
                                                                            : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (first) {
      data.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != data.header.size())
        throw std::runtime_error("csv row " + std::to_string(data.rows.size() + 1) +
                                 " has the wrong number of cells");
      data.rows.push_back(std::move(cells));
    }
  }
  return data;
}

CsvData read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }

void write_text(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace hamflow::cli
