#include <doctest.h>

#include <cstring>
#include <random>

#include "deepinfer/errors.hpp"
#include "deepinfer/forward.hpp"
#include "oracles.hpp"

using namespace deepinfer;
using linalg::Matrix;

namespace {

ModelIR single(Matrix w, linalg::Vector b, Activation a) {
  ModelIR m;
  m.input_dim = w.cols();
  m.layers.push_back({std::move(w), std::move(b), a});
  return m;
}

}  // namespace

TEST_CASE("forward examples") {
  CHECK(forward(single(Matrix::identity(1), {0.0}, Activation::Linear), std::vector<double>{0.3})[0] == 0.3);
  CHECK(forward(single(Matrix::identity(1), {0.0}, Activation::Sigmoid), std::vector<double>{0.0})[0] == 0.5);
  // 2 * 0.25 - 1 = -0.5, clamped by relu.
  CHECK(forward(single(Matrix::from_rows({{2}}), {-1.0}, Activation::Relu), std::vector<double>{0.25})[0] == 0.0);
  CHECK(forward(single(Matrix::from_rows({{1}}), {0.0}, Activation::Tanh), std::vector<double>{1.0})[0] ==
        doctest::Approx(0.7615941559557649));
}

TEST_CASE("forward rejects a wrong input width") {
  CHECK_THROWS_AS(forward(single(Matrix::identity(2), {0, 0}, Activation::Linear), std::vector<double>{1.0}),
                  DimensionError);
}

TEST_CASE("predict_label threshold is inclusive") {
  CHECK(predict_label(std::vector<double>{0.7}) == 1);
  CHECK(predict_label(std::vector<double>{0.5}) == 1);
  CHECK(predict_label(std::vector<double>{0.2}) == 0);
  CHECK_THROWS_AS(predict_label(std::vector<double>{}), DimensionError);
}

TEST_CASE("8-12-8-1 linear/linear/sigmoid output stays in (0,1) and is deterministic") {
  std::mt19937_64 rng(8);
  ModelIR m;
  m.input_dim = 8;
  m.layers.push_back({oracle::random_matrix(rng, 12, 8, 0.4), linalg::Vector(12, 0.1), Activation::Linear});
  m.layers.push_back({oracle::random_matrix(rng, 8, 12, 0.4), linalg::Vector(8, -0.1), Activation::Linear});
  m.layers.push_back({oracle::random_matrix(rng, 1, 8, 0.4), linalg::Vector(1, 0.0), Activation::Sigmoid});
  std::normal_distribution<double> d(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(8);
    for (double& v : x) v = d(rng);
    const auto y1 = forward(m, x);
    const auto y2 = forward(m, x);
    REQUIRE(y1.size() == 1);
    CHECK(y1[0] > 0.0);
    CHECK(y1[0] < 1.0);
    CHECK(std::memcmp(y1.data(), y2.data(), sizeof(double)) == 0);

    // Independent route: naive long-double products layer by layer.
    std::vector<double> h = x;
    for (const auto& layer : m.layers) {
      h = oracle::naive_matvec(layer.weights, h);
      for (std::size_t i = 0; i < h.size(); ++i) h[i] = apply_activation(layer.activation, h[i] + layer.bias[i]);
    }
    CHECK(y1[0] == doctest::Approx(h[0]).epsilon(1e-12));
  }
}

TEST_CASE("predict_batch preserves row order") {
  const ModelIR m = single(Matrix::identity(1), {0.0}, Activation::Linear);
  const Matrix rows = Matrix::from_rows({{0.9}, {0.1}, {0.5}});
  const auto preds = predict_batch(m, rows);
  REQUIRE(preds.size() == 3);
  CHECK(preds[0].label == 1);
  CHECK(preds[1].label == 0);
  CHECK(preds[2].label == 1);
  CHECK(preds[1].raw_output[0] == 0.1);
}
