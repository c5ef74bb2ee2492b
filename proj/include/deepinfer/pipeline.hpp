#pragma once

// File-based orchestration behind the `deepinfer` command line tool. Each
// cmd_* function returns the process exit code: 0 success, 1 usage error,
// 2 data or domain error.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "deepinfer/metrics.hpp"
#include "deepinfer/model_ir.hpp"
#include "deepinfer/monitor.hpp"
#include "deepinfer/precondition.hpp"

namespace deepinfer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::filesystem::path model_path;
  std::filesystem::path validation_path;
  std::filesystem::path unseen_path;
  std::filesystem::path output_dir = ".";
  double post_low = 0.95;
  double post_high = 0.99;
  wp::TransformMode mode = wp::TransformMode::Corrected;
  std::optional<std::string> label_column;
  double epsilon = wp::kDefaultEpsilon;
  double rcond = linalg::kDefaultRcond;
  // Reuse previously written artifacts instead of recomputing them.
  std::optional<std::filesystem::path> precondition_path;
  std::optional<std::filesystem::path> profile_path;

  wp::Postcondition postcondition() const { return {post_low, post_high}; }
  wp::WpOptions wp_options() const { return {mode, epsilon, rcond}; }
};

// Throws UsageError on missing paths or out-of-range numeric options.
void validate(const RunConfig& config, bool need_validation, bool need_unseen);

// Artifact file names inside RunConfig::output_dir.
inline constexpr const char* kPreconditionFile = "precondition.json";
inline constexpr const char* kProfileFile = "profile.json";
inline constexpr const char* kVerdictFile = "verdicts.csv";
inline constexpr const char* kMetricsJsonFile = "metrics.json";
inline constexpr const char* kMetricsTextFile = "metrics.txt";

struct StageTimings {
  double infer = 0.0;
  double threshold = 0.0;
  double check = 0.0;
  double eval = 0.0;
};

struct PipelineResult {
  wp::DataPrecondition precondition;
  std::optional<monitor::ViolationProfile> profile;
  std::vector<monitor::Verdict> verdicts;
  std::optional<metrics::MetricsReport> report;
  std::optional<metrics::Correlation> correlation;
  StageTimings timings;
};

// Stage functions throw; they write their artifacts and a short log to `log`.
wp::DataPrecondition stage_infer(const RunConfig& config, const ModelIR& model, std::ostream& log);
monitor::ViolationProfile stage_threshold(const RunConfig& config, const wp::DataPrecondition& pre,
                                          std::ostream& log);
std::vector<monitor::Verdict> stage_check(const RunConfig& config, const Dataset& unseen,
                                          const monitor::ViolationProfile& profile,
                                          const wp::DataPrecondition& pre, std::ostream& log);

// Runs infer -> threshold -> check, then eval when the unseen data carries labels.
PipelineResult run_pipeline(const RunConfig& config, std::ostream& log);

int cmd_infer(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_threshold(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace deepinfer::cli
