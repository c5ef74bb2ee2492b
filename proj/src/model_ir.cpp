#include "deepinfer/model_ir.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "deepinfer/errors.hpp"

namespace deepinfer {

using nlohmann::json;

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Linear:
      return "linear";
    case Activation::Relu:
      return "relu";
    case Activation::Sigmoid:
      return "sigmoid";
    case Activation::Tanh:
      return "tanh";
  }
  return "unknown";
}

std::optional<Activation> parse_activation(std::string_view tag) {
  if (tag == "linear") return Activation::Linear;
  if (tag == "relu") return Activation::Relu;
  if (tag == "sigmoid") return Activation::Sigmoid;
  if (tag == "tanh") return Activation::Tanh;
  return std::nullopt;
}

std::size_t ModelIR::neuron_count() const noexcept {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.out_dim();
  return n;
}

namespace {

using Kind = ModelError::Kind;

double read_number(const json& v, std::size_t layer, const char* field) {
  if (!v.is_number()) {
    throw ModelError(Kind::Schema, layer, std::string(field) + " entries must be numbers");
  }
  return v.get<double>();
}

LayerIR read_layer(const json& node, std::size_t index) {
  if (!node.is_object()) throw ModelError(Kind::Schema, index, "layer must be an object");
  for (const char* field : {"weights", "bias", "activation"}) {
    if (!node.contains(field)) {
      throw ModelError(Kind::Schema, index, std::string("missing field \"") + field + "\"");
    }
  }

  const json& act = node.at("activation");
  if (!act.is_string()) throw ModelError(Kind::Schema, index, "activation must be a string");
  const auto activation = parse_activation(act.get<std::string>());
  if (!activation) {
    throw ModelError(Kind::Schema, index, "unknown activation \"" + act.get<std::string>() + "\"");
  }

  const json& w = node.at("weights");
  if (!w.is_array()) throw ModelError(Kind::Schema, index, "weights must be an array of rows");
  if (w.empty()) throw ModelError(Kind::Dimension, index, "weights has no rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(w.size());
  for (const json& row : w) {
    if (!row.is_array()) throw ModelError(Kind::Schema, index, "weights must be an array of rows");
    auto& out = rows.emplace_back();
    out.reserve(row.size());
    for (const json& x : row) out.push_back(read_number(x, index, "weights"));
    if (out.size() != rows.front().size()) {
      throw ModelError(Kind::Dimension, index, "weights rows have differing lengths");
    }
  }
  if (rows.front().empty()) throw ModelError(Kind::Dimension, index, "weights has no columns");

  const json& b = node.at("bias");
  if (!b.is_array()) throw ModelError(Kind::Schema, index, "bias must be an array");
  linalg::Vector bias;
  bias.reserve(b.size());
  for (const json& x : b) bias.push_back(read_number(x, index, "bias"));

  return LayerIR{linalg::Matrix::from_rows(rows), std::move(bias), *activation};
}

}  // namespace

ModelIR model_from_json(const json& doc) {
  if (!doc.is_object()) throw ModelError(Kind::Schema, std::nullopt, "model must be a JSON object");
  if (!doc.contains("layers") || !doc.at("layers").is_array()) {
    throw ModelError(Kind::Schema, std::nullopt, "missing array field \"layers\"");
  }

  ModelIR model;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ModelError(Kind::Schema, std::nullopt, "name must be a string");
    model.name = doc.at("name").get<std::string>();
  }
  if (doc.contains("version")) {
    if (!doc.at("version").is_string()) {
      throw ModelError(Kind::Schema, std::nullopt, "version must be a string");
    }
    model.version = doc.at("version").get<std::string>();
  }

  const json& layers = doc.at("layers");
  if (layers.empty()) throw ModelError(Kind::Dimension, std::nullopt, "model has no layers");
  for (std::size_t k = 0; k < layers.size(); ++k) model.layers.push_back(read_layer(layers[k], k));

  if (doc.contains("input_dim")) {
    const json& d = doc.at("input_dim");
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw ModelError(Kind::Schema, std::nullopt, "input_dim must be a positive integer");
    }
    model.input_dim = d.get<std::size_t>();
  } else {
    model.input_dim = model.layers.front().in_dim();
  }

  for (std::size_t k = 0; k < model.layers.size(); ++k) {
    const LayerIR& layer = model.layers[k];
    const std::size_t expected = k == 0 ? model.input_dim : model.layers[k - 1].out_dim();
    if (layer.in_dim() != expected) {
      throw ModelError(Kind::Dimension, k,
                       "in_dim " + std::to_string(layer.in_dim()) + " does not match " +
                           (k == 0 ? std::string("input_dim ") : std::string("previous out_dim ")) +
                           std::to_string(expected));
    }
    if (layer.bias.size() != layer.out_dim()) {
      throw ModelError(Kind::Dimension, k,
                       "bias length " + std::to_string(layer.bias.size()) + " does not match out_dim " +
                           std::to_string(layer.out_dim()));
    }
    if (!linalg::all_finite(layer.weights.data()) || !linalg::all_finite(layer.bias)) {
      throw ModelError(Kind::Schema, k, "non-finite parameter");
    }
  }
  return model;
}

ModelIR parse_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelError(Kind::Parse, std::nullopt, e.what());
  }
  return model_from_json(doc);
}

ModelIR load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(Kind::Parse, std::nullopt, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

json to_json(const ModelIR& model) {
  json layers = json::array();
  for (const auto& layer : model.layers) {
    json rows = json::array();
    for (std::size_t r = 0; r < layer.weights.rows(); ++r) {
      const auto row = layer.weights.row(r);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    layers.push_back({{"weights", std::move(rows)},
                      {"bias", layer.bias},
                      {"activation", std::string(to_string(layer.activation))}});
  }
  json doc = {{"name", model.name}, {"input_dim", model.input_dim}, {"layers", std::move(layers)}};
  if (!model.version.empty()) doc["version"] = model.version;
  return doc;
}

std::string serialize_model(const ModelIR& model) { return to_json(model).dump(); }

void save_model(const ModelIR& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << serialize_model(model) << '\n';
}

std::vector<std::string> validate_dims(const ModelIR& model) {
  std::vector<std::string> issues;
  if (model.layers.empty()) issues.emplace_back("model has no layers");
  if (model.input_dim < 1) issues.emplace_back("input_dim must be at least 1");
  for (std::size_t k = 0; k < model.layers.size(); ++k) {
    const LayerIR& layer = model.layers[k];
    const std::string where = "layer " + std::to_string(k) + ": ";
    if (layer.out_dim() < 1 || layer.in_dim() < 1) issues.push_back(where + "empty weight matrix");
    if (layer.bias.size() != layer.out_dim()) {
      issues.push_back(where + "bias length " + std::to_string(layer.bias.size()) +
                       " does not match out_dim " + std::to_string(layer.out_dim()));
    }
    const std::size_t expected = k == 0 ? model.input_dim : model.layers[k - 1].out_dim();
    if (layer.in_dim() != expected) {
      issues.push_back(where + "in_dim " + std::to_string(layer.in_dim()) + " does not match " +
                       std::to_string(expected));
    }
    if (!linalg::all_finite(layer.weights.data())) issues.push_back(where + "non-finite weight");
    if (!linalg::all_finite(layer.bias)) issues.push_back(where + "non-finite bias");
  }
  return issues;
}

}  // namespace deepinfer
