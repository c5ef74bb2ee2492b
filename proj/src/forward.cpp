#include "deepinfer/forward.hpp"

#include <cmath>
#include <string>

#include "deepinfer/errors.hpp"

namespace deepinfer {

double apply_activation(Activation a, double t) {
  switch (a) {
    case Activation::Linear:
      return t;
    case Activation::Relu:
      return t > 0.0 ? t : 0.0;
    case Activation::Sigmoid:
      return 1.0 / (1.0 + std::exp(-t));
    case Activation::Tanh:
      return std::tanh(t);
  }
  return t;
}

linalg::Vector apply_layer(const LayerIR& layer, std::span<const double> x) {
  linalg::Vector z = linalg::matvec(layer.weights, x);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = apply_activation(layer.activation, z[i] + layer.bias[i]);
  return z;
}

linalg::Vector forward(const ModelIR& model, std::span<const double> x) {
  if (x.size() != model.input_dim) {
    throw DimensionError("forward: input has " + std::to_string(x.size()) + " features, model expects " +
                         std::to_string(model.input_dim));
  }
  linalg::Vector current(x.begin(), x.end());
  for (const auto& layer : model.layers) current = apply_layer(layer, current);
  return current;
}

int predict_label(std::span<const double> y, double threshold) {
  if (y.empty()) throw DimensionError("predict_label: empty output");
  return y[0] >= threshold ? 1 : 0;
}

Prediction predict(const ModelIR& model, std::span<const double> x, double threshold) {
  Prediction p;
  p.raw_output = forward(model, x);
  p.label = predict_label(p.raw_output, threshold);
  return p;
}

std::vector<Prediction> predict_batch(const ModelIR& model, const linalg::Matrix& rows, double threshold) {
  std::vector<Prediction> out;
  out.reserve(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) out.push_back(predict(model, rows.row(r), threshold));
  return out;
}

}  // namespace deepinfer
