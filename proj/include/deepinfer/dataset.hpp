#pragma once

// Tabular numeric data. CSV ingestion: the first line is a header, the label
// column (when named) is split off, and every other cell must be a decimal real.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deepinfer/linalg.hpp"

namespace deepinfer {

struct Dataset {
  std::vector<std::string> feature_names;
  linalg::Matrix rows;
  std::optional<std::vector<int>> labels;

  std::size_t size() const noexcept { return rows.rows(); }
  std::size_t width() const noexcept { return feature_names.size(); }
  bool empty() const noexcept { return size() == 0; }
};

// A label column that is named but absent leaves `labels` empty; callers that
// need ground truth check for it.
Dataset parse_csv(std::string_view text, const std::optional<std::string>& label_column = std::nullopt);
Dataset load_csv(const std::filesystem::path& path, const std::optional<std::string>& label_column = std::nullopt);

void write_csv(std::ostream& out, const Dataset& data, const std::string& label_column = "label");

}  // namespace deepinfer
