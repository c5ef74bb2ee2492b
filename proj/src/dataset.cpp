#include "deepinfer/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "deepinfer/errors.hpp"

namespace deepinfer {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_cell(std::string_view cell, std::size_t line_no, std::size_t col) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw DataError("non-numeric cell \"" + std::string(cell) + "\" at line " + std::to_string(line_no) +
                    ", column " + std::to_string(col));
  }
  return v;
}

}  // namespace

Dataset parse_csv(std::string_view text, const std::optional<std::string>& label_column) {
  Dataset data;
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }

  std::size_t header_line = 0;
  while (header_line < lines.size() && trim(lines[header_line]).empty()) ++header_line;
  if (header_line == lines.size()) return data;

  const auto header = split(lines[header_line]);
  std::optional<std::size_t> label_index;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (label_column && header[c] == *label_column) {
      label_index = c;
    } else {
      data.feature_names.emplace_back(header[c]);
    }
  }

  std::vector<double> values;
  std::vector<int> labels;
  std::size_t n_rows = 0;
  for (std::size_t l = header_line + 1; l < lines.size(); ++l) {
    if (trim(lines[l]).empty()) continue;
    const auto cells = split(lines[l]);
    if (cells.size() != header.size()) {
      throw DataError("line " + std::to_string(l + 1) + " has " + std::to_string(cells.size()) +
                      " cells, header has " + std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const double v = parse_cell(cells[c], l + 1, c + 1);
      if (label_index && c == *label_index) {
        if (v != 0.0 && v != 1.0) {
          throw DataError("label at line " + std::to_string(l + 1) + " must be 0 or 1");
        }
        labels.push_back(static_cast<int>(v));
      } else {
        values.push_back(v);
      }
    }
    ++n_rows;
  }

  data.rows = linalg::Matrix(n_rows, data.feature_names.size());
  std::copy(values.begin(), values.end(), data.rows.data().begin());
  if (label_index) data.labels = std::move(labels);
  return data;
}

Dataset load_csv(const std::filesystem::path& path, const std::optional<std::string>& label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), label_column);
}

void write_csv(std::ostream& out, const Dataset& data, const std::string& label_column) {
  const auto old_precision = out.precision(17);
  for (std::size_t c = 0; c < data.width(); ++c) out << (c ? "," : "") << data.feature_names[c];
  if (data.labels) out << (data.width() ? "," : "") << label_column;
  out << '\n';
  for (std::size_t r = 0; r < data.size(); ++r) {
    const auto row = data.rows.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    if (data.labels) out << (row.empty() ? "" : ",") << (*data.labels)[r];
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace deepinfer
