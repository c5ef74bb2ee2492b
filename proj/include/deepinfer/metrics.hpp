#pragma once

// Scoring verdicts against ground truth. The positive class is "the model's
// prediction can be trusted": a Correct verdict on a row the model got right is
// a true positive. Uncertain verdicts are scored as Incorrect.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "deepinfer/monitor.hpp"

namespace deepinfer::metrics {

struct GroundTruth {
  std::vector<bool> model_correct;
};

// model_correct[i] = predicted[i] == actual[i].
GroundTruth ground_truth(std::span<const int> predicted, std::span<const int> actual);

struct MetricsReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  // Empty when the denominator is zero; rendered as "-".
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> accuracy;
  std::optional<double> tpr;
  std::optional<double> fpr;
  std::optional<double> f1;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
};

MetricsReport confusion(std::span<const monitor::Outcome> outcomes, const GroundTruth& truth);
MetricsReport confusion(const std::vector<monitor::Verdict>& verdicts, const GroundTruth& truth);

// Sample Pearson correlation. Throws DegenerateInput for fewer than two points
// or zero variance, DimensionError for unequal lengths.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct Correlation {
  double r = 0.0;
  // Two-sided p-value of t = r * sqrt((n - 2) / (1 - r^2)) with n - 2 degrees of freedom.
  double p_value = 1.0;
  std::size_t n = 0;
};

Correlation pearson_test(std::span<const double> xs, std::span<const double> ys);

std::string format_ratio(const std::optional<double>& v, int digits = 2);

nlohmann::json to_json(const MetricsReport& report);
std::string format_table(const MetricsReport& report);

}  // namespace deepinfer::metrics
