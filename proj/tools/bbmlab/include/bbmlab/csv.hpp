#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace bbm::app {

// Round-trip decimal form used for every number in data files.
std::string format_number(double v);

using MetaLines = std::vector<std::pair<std::string, std::string>>;

// `# key=value` lines, then the column header, then rows.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const MetaLines& meta,
            const std::vector<std::string>& columns);

  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

// Lines of a CSV file that do not start with '#'.
std::vector<std::string> read_data_section(const std::filesystem::path& path);

}  // namespace bbm::app
