#include "bbmlab/csv.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "bbm/errors.hpp"

namespace bbm::app {

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

CsvWriter::CsvWriter(const std::filesystem::path& path, const MetaLines& meta,
                     const std::vector<std::string>& columns)
    : path_(path), out_(path), columns_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  for (const auto& [key, value] : meta) out_ << "# " << key << '=' << value << '\n';
  row(columns);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw ShapeError("csv row has the wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

std::vector<std::string> read_data_section(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (line.empty() || line.front() != '#') lines.push_back(line);
  return lines;
}

}  // namespace bbm::app
