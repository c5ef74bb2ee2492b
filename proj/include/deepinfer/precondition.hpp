#pragma once

// Per-feature interval form of an input predicate, and its JSON persistence:
//   {"mode": str, "post": [n1, n2],
//    "features": [{"index": int, "lo": num|"-inf", "hi": num|"inf", "feasible": bool}]}

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "deepinfer/model_ir.hpp"
#include "deepinfer/predicate.hpp"
#include "deepinfer/wp_engine.hpp"

namespace deepinfer::wp {

struct DataPrecondition {
  linalg::Vector lo;
  linalg::Vector hi;
  std::vector<bool> feasible;
  TransformMode mode = TransformMode::Corrected;
  Postcondition post;

  std::size_t size() const noexcept { return lo.size(); }
  bool operator==(const DataPrecondition&) const = default;
};

// Intersects conjunctions and takes the interval hull of disjunctions, per
// feature. Strict and non-strict comparisons both map to closed bounds.
// Throws UnsupportedPredicate for == / != atoms and DimensionError when an atom
// does not have `input_dim` components.
DataPrecondition consolidate(const Predicate& pred, std::size_t input_dim);

// wp_network followed by consolidate.
DataPrecondition infer_precondition(const ModelIR& model, const Postcondition& post, const WpOptions& options = {});

nlohmann::json to_json(const DataPrecondition& pre);
DataPrecondition precondition_from_json(const nlohmann::json& doc);
void save_precondition(const DataPrecondition& pre, const std::filesystem::path& path);
DataPrecondition load_precondition(const std::filesystem::path& path);

}  // namespace deepinfer::wp
