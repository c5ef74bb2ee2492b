#include "deepinfer/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "deepinfer/errors.hpp"

namespace deepinfer::metrics {

using nlohmann::json;

GroundTruth ground_truth(std::span<const int> predicted, std::span<const int> actual) {
  if (predicted.size() != actual.size()) {
    throw DimensionError("ground truth: " + std::to_string(predicted.size()) + " predictions vs " +
                         std::to_string(actual.size()) + " labels");
  }
  GroundTruth g;
  g.model_correct.resize(predicted.size());
  for (std::size_t i = 0; i < predicted.size(); ++i) g.model_correct[i] = predicted[i] == actual[i];
  return g;
}

namespace {

std::optional<double> ratio(double num, double den) {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

}  // namespace

MetricsReport confusion(std::span<const monitor::Outcome> outcomes, const GroundTruth& truth) {
  if (outcomes.size() != truth.model_correct.size()) {
    throw DimensionError("confusion: " + std::to_string(outcomes.size()) + " verdicts vs " +
                         std::to_string(truth.model_correct.size()) + " ground-truth rows");
  }
  MetricsReport r;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const bool trusted = outcomes[i] == monitor::Outcome::Correct;
    const bool right = truth.model_correct[i];
    if (trusted && right) ++r.tp;
    if (trusted && !right) ++r.fp;
    if (!trusted && right) ++r.fn;
    if (!trusted && !right) ++r.tn;
  }
  const auto tp = static_cast<double>(r.tp);
  const auto fp = static_cast<double>(r.fp);
  const auto fn = static_cast<double>(r.fn);
  const auto tn = static_cast<double>(r.tn);
  r.precision = ratio(tp, tp + fp);
  r.recall = ratio(tp, tp + fn);
  r.tpr = r.recall;
  r.fpr = ratio(fp, fp + tn);
  r.accuracy = ratio(tp + tn, tp + fp + fn + tn);
  if (r.precision && r.recall && *r.precision + *r.recall > 0.0) {
    r.f1 = 2.0 * *r.precision * *r.recall / (*r.precision + *r.recall);
  }
  return r;
}

MetricsReport confusion(const std::vector<monitor::Verdict>& verdicts, const GroundTruth& truth) {
  std::vector<monitor::Outcome> outcomes;
  outcomes.reserve(verdicts.size());
  for (const auto& v : verdicts) outcomes.push_back(v.outcome);
  return confusion(outcomes, truth);
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw DimensionError("pearson: lengths " + std::to_string(xs.size()) + " and " + std::to_string(ys.size()));
  }
  if (xs.size() < 2) throw DegenerateInput("pearson needs at least two points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("pearson: zero variance");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::max(-1.0, std::min(1.0, r));
}

Correlation pearson_test(std::span<const double> xs, std::span<const double> ys) {
  Correlation c;
  c.r = pearson(xs, ys);
  c.n = xs.size();
  if (c.n <= 2 || std::abs(c.r) >= 1.0) {
    c.p_value = c.n <= 2 ? 1.0 : 0.0;
    return c;
  }
  const double dof = static_cast<double>(c.n - 2);
  const double t = c.r * std::sqrt(dof / (1.0 - c.r * c.r));
  const boost::math::students_t_distribution<double> dist(dof);
  c.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return c;
}

std::string format_ratio(const std::optional<double>& v, int digits) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, *v);
  return buf;
}

json to_json(const MetricsReport& report) {
  const auto value = [](const std::optional<double>& v) -> json {
    if (!v) return "-";
    return *v;
  };
  return {{"TP", report.tp},
          {"FP", report.fp},
          {"FN", report.fn},
          {"TN", report.tn},
          {"precision", value(report.precision)},
          {"recall", value(report.recall)},
          {"accuracy", value(report.accuracy)},
          {"TPR", value(report.tpr)},
          {"FPR", value(report.fpr)},
          {"F1", value(report.f1)}};
}

std::string format_table(const MetricsReport& report) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%6s %6s %6s %6s %9s %6s %8s %6s %6s %6s\n", "FP", "TP", "FN", "TN",
                "Precision", "Recall", "Accuracy", "TPR", "FPR", "F1");
  os << line;
  std::snprintf(line, sizeof line, "%6zu %6zu %6zu %6zu %9s %6s %8s %6s %6s %6s\n", report.fp, report.tp, report.fn,
                report.tn, format_ratio(report.precision).c_str(), format_ratio(report.recall).c_str(),
                format_ratio(report.accuracy).c_str(), format_ratio(report.tpr).c_str(),
                format_ratio(report.fpr).c_str(), format_ratio(report.f1).c_str());
  os << line;
  return os.str();
}

}  // namespace deepinfer::metrics
