#pragma once

// Reference forward inference: each layer computes activation(W * x + b).

#include <span>
#include <vector>

#include "deepinfer/linalg.hpp"
#include "deepinfer/model_ir.hpp"

namespace deepinfer {

inline constexpr double kDefaultLabelThreshold = 0.5;

double apply_activation(Activation a, double t);
linalg::Vector apply_layer(const LayerIR& layer, std::span<const double> x);

// Throws DimensionError when x.size() != model.input_dim.
linalg::Vector forward(const ModelIR& model, std::span<const double> x);

// 1 iff y[0] >= threshold.
int predict_label(std::span<const double> y, double threshold = kDefaultLabelThreshold);

struct Prediction {
  linalg::Vector raw_output;
  int label = 0;
};

Prediction predict(const ModelIR& model, std::span<const double> x,
                   double threshold = kDefaultLabelThreshold);

// One prediction per row of `rows`, in row order.
std::vector<Prediction> predict_batch(const ModelIR& model, const linalg::Matrix& rows,
                                      double threshold = kDefaultLabelThreshold);

}  // namespace deepinfer
