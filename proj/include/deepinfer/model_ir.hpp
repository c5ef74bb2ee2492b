#pragma once

// Interchange format for trained dense networks.
//
//   {"name": str, "version": str?, "input_dim": int,
//    "layers": [{"weights": [[num]], "bias": [num],
//                "activation": "linear"|"relu"|"sigmoid"|"tanh"}]}
//
// Weights are stored out_dim x in_dim: weights[i][j] multiplies input j into
// output neuron i. Layer indices in diagnostics are zero-based.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "deepinfer/linalg.hpp"

namespace deepinfer {

enum class Activation { Linear, Relu, Sigmoid, Tanh };

std::string_view to_string(Activation a);
std::optional<Activation> parse_activation(std::string_view tag);

struct LayerIR {
  linalg::Matrix weights;
  linalg::Vector bias;
  Activation activation = Activation::Linear;

  std::size_t in_dim() const noexcept { return weights.cols(); }
  std::size_t out_dim() const noexcept { return weights.rows(); }

  bool operator==(const LayerIR&) const = default;
};

struct ModelIR {
  std::string name;
  std::string version;
  std::size_t input_dim = 0;
  std::vector<LayerIR> layers;

  std::size_t output_dim() const noexcept { return layers.empty() ? 0 : layers.back().out_dim(); }
  std::size_t neuron_count() const noexcept;

  bool operator==(const ModelIR&) const = default;
};

// Throws ModelError (parse, schema or dimension) naming the offending layer.
ModelIR load_model(const std::filesystem::path& path);
ModelIR parse_model(std::string_view json_text);
ModelIR model_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const ModelIR& model);
std::string serialize_model(const ModelIR& model);
void save_model(const ModelIR& model, const std::filesystem::path& path);

// Every broken invariant, one description each; empty when the model is valid.
std::vector<std::string> validate_dims(const ModelIR& model);

}  // namespace deepinfer
