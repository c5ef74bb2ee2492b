#pragma once

// Deployment-time monitor. Validation data fixes a per-feature violation
// threshold; each unseen row is then classified by how many of its features
// violate the inferred precondition relative to that threshold.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "deepinfer/dataset.hpp"
#include "deepinfer/model_ir.hpp"
#include "deepinfer/precondition.hpp"

namespace deepinfer::monitor {

struct ViolationProfile {
  std::vector<std::uint64_t> counts;
  std::size_t n_validation = 0;
  double threshold_V = 0.0;     // mean of counts
  double threshold_rate = 0.0;  // threshold_V / n_validation

  std::uint64_t total_violations() const;
  bool operator==(const ViolationProfile&) const = default;
};

ViolationProfile make_profile(std::vector<std::uint64_t> counts, std::size_t n_validation);

// counts[i] = rows whose feature i lies outside [lo[i], hi[i]]. An infeasible
// interval (lo > hi) counts every row.
std::vector<std::uint64_t> collect_feature_violations(const Dataset& data, const wp::DataPrecondition& pre);

struct ThresholdResult {
  ViolationProfile profile;
  wp::DataPrecondition precondition;
};

// Throws EmptyDataset on an empty validation set; wp errors propagate.
ThresholdResult compute_threshold(const ModelIR& model, const Dataset& validation, const wp::Postcondition& post,
                                  const wp::WpOptions& options = {});

// Profile from an already inferred precondition.
ViolationProfile compute_profile(const Dataset& validation, const wp::DataPrecondition& pre);

enum class Outcome { Correct, Incorrect, Uncertain };

std::string_view to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Correct;
  std::size_t M = 0;  // features whose indicator is at or below the threshold rate
  std::size_t L = 0;  // features above it
  std::vector<std::uint8_t> violated;

  bool operator==(const Verdict&) const = default;
};

// L == 0 -> Correct; L == M -> Uncertain; L < M -> Correct; otherwise Incorrect.
Outcome decision_tree(std::size_t M, std::size_t L);

Verdict check_prediction(std::span<const double> row, const ViolationProfile& profile,
                         const wp::DataPrecondition& pre);

std::vector<Verdict> check_batch(const Dataset& data, const ViolationProfile& profile,
                                 const wp::DataPrecondition& pre);

struct Tally {
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t uncertain = 0;
  std::uint64_t violations = 0;
  std::uint64_t satisfactions = 0;

  std::size_t total() const noexcept { return correct + incorrect + uncertain; }
};

Tally tally(const std::vector<Verdict>& verdicts);

// row_index,outcome,M,L,violated_features (indices joined by ';').
void write_verdicts_csv(std::ostream& out, const std::vector<Verdict>& verdicts);

nlohmann::json to_json(const ViolationProfile& profile);
ViolationProfile profile_from_json(const nlohmann::json& doc);
void save_profile(const ViolationProfile& profile, const std::filesystem::path& path);
ViolationProfile load_profile(const std::filesystem::path& path);

}  // namespace deepinfer::monitor
