#include "deepinfer/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "deepinfer/errors.hpp"
#include "deepinfer/forward.hpp"

namespace deepinfer::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void ensure_output_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw DataError("cannot create output directory " + config.output_dir.string() + ": " + ec.message());
}

std::string format_bound(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Dataset load_checked(const fs::path& path, const RunConfig& config, std::size_t width) {
  Dataset d = load_csv(path, config.label_column);
  if (!d.empty() && d.width() != width) {
    throw DimensionError(path.string() + " has " + std::to_string(d.width()) + " feature columns, model expects " +
                         std::to_string(width));
  }
  return d;
}

wp::DataPrecondition obtain_precondition(const RunConfig& config, const ModelIR& model, std::ostream& log) {
  if (config.precondition_path) {
    wp::DataPrecondition pre = wp::load_precondition(*config.precondition_path);
    if (pre.size() != model.input_dim) {
      throw DimensionError("precondition has " + std::to_string(pre.size()) + " features, model expects " +
                           std::to_string(model.input_dim));
    }
    return pre;
  }
  return stage_infer(config, model, log);
}

monitor::ViolationProfile obtain_profile(const RunConfig& config, const wp::DataPrecondition& pre,
                                         std::ostream& log) {
  if (config.profile_path) {
    monitor::ViolationProfile p = monitor::load_profile(*config.profile_path);
    if (p.counts.size() != pre.size()) throw DimensionError("profile and precondition feature counts differ");
    return p;
  }
  return stage_threshold(config, pre, log);
}

struct EvalOutcome {
  metrics::MetricsReport report;
  std::optional<metrics::Correlation> correlation;
};

EvalOutcome stage_eval(const RunConfig& config, const ModelIR& model, const Dataset& unseen,
                       const std::vector<monitor::Verdict>& verdicts, double check_seconds, std::ostream& log) {
  if (!unseen.labels) {
    throw DataError("evaluation needs ground-truth labels: pass --label-column naming a column of " +
                    config.unseen_path.string());
  }
  const auto predictions = predict_batch(model, unseen.rows);
  std::vector<int> predicted;
  predicted.reserve(predictions.size());
  for (const auto& p : predictions) predicted.push_back(p.label);
  const metrics::GroundTruth truth = metrics::ground_truth(predicted, *unseen.labels);

  EvalOutcome out{metrics::confusion(verdicts, truth), std::nullopt};

  std::vector<double> violation_flag;
  std::vector<double> mispredicted;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    bool any = false;
    for (auto f : verdicts[i].violated) any = any || f;
    violation_flag.push_back(any ? 1.0 : 0.0);
    mispredicted.push_back(truth.model_correct[i] ? 0.0 : 1.0);
  }
  try {
    out.correlation = metrics::pearson_test(violation_flag, mispredicted);
  } catch (const DegenerateInput&) {
    out.correlation.reset();
  }

  const monitor::Tally t = monitor::tally(verdicts);
  std::size_t model_correct = 0;
  for (bool c : truth.model_correct) model_correct += c ? 1 : 0;

  json doc = {
      {"rows", verdicts.size()},
      {"ground_truth", {{"model_correct", model_correct}, {"model_incorrect", verdicts.size() - model_correct}}},
      {"verdicts", {{"correct", t.correct}, {"incorrect", t.incorrect}, {"uncertain", t.uncertain}}},
      {"violations", t.violations},
      {"satisfactions", t.satisfactions},
      {"metrics", metrics::to_json(out.report)},
      {"check_seconds", check_seconds},
  };
  if (out.correlation) {
    doc["pcc"] = {{"r", out.correlation->r}, {"p_value", out.correlation->p_value}, {"n", out.correlation->n}};
  } else {
    doc["pcc"] = "-";
  }

  ensure_output_dir(config);
  {
    std::ofstream f(config.output_dir / kMetricsJsonFile);
    if (!f) throw DataError("cannot write metrics.json");
    f << doc.dump(2) << '\n';
  }
  const std::string table = metrics::format_table(out.report);
  {
    std::ofstream f(config.output_dir / kMetricsTextFile);
    if (!f) throw DataError("cannot write metrics.txt");
    f << table;
    f << "pcc(violation, misprediction) = "
      << (out.correlation ? std::to_string(out.correlation->r) : std::string("-")) << '\n';
    f << "check phase seconds = " << check_seconds << '\n';
  }
  log << table;
  log << "pcc(violation, misprediction) = "
      << (out.correlation ? std::to_string(out.correlation->r) : std::string("-")) << '\n';
  log << "check phase: " << check_seconds << " s\n";
  return out;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    fn();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "DomainError: " << e.what() << '\n';
    return kExitData;
  } catch (const EmptyDataset& e) {
    err << "EmptyDataset: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace

void validate(const RunConfig& config, bool need_validation, bool need_unseen) {
  if (config.model_path.empty()) throw UsageError("--model is required");
  if (need_validation && config.validation_path.empty() && !config.profile_path) {
    throw UsageError("--validation is required");
  }
  if (need_unseen && config.unseen_path.empty()) throw UsageError("--unseen is required");
  if (!std::isfinite(config.post_low) || !std::isfinite(config.post_high) || !(config.post_low < config.post_high)) {
    throw UsageError("--post-low must be below --post-high");
  }
  if (!(config.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  if (!(config.rcond > 0.0)) throw UsageError("--rcond must be positive");
}

wp::DataPrecondition stage_infer(const RunConfig& config, const ModelIR& model, std::ostream& log) {
  wp::DataPrecondition pre = wp::infer_precondition(model, config.postcondition(), config.wp_options());
  ensure_output_dir(config);
  wp::save_precondition(pre, config.output_dir / kPreconditionFile);
  log << "precondition (" << wp::to_string(pre.mode) << ", post [" << pre.post.low << ", " << pre.post.high
      << "]):\n";
  for (std::size_t i = 0; i < pre.size(); ++i) {
    log << "  feature " << i << ": [" << format_bound(pre.lo[i]) << ", " << format_bound(pre.hi[i]) << "]"
        << (pre.feasible[i] ? "" : " infeasible") << '\n';
  }
  return pre;
}

monitor::ViolationProfile stage_threshold(const RunConfig& config, const wp::DataPrecondition& pre,
                                          std::ostream& log) {
  const Dataset validation = load_checked(config.validation_path, config, pre.size());
  monitor::ViolationProfile profile = monitor::compute_profile(validation, pre);
  ensure_output_dir(config);
  monitor::save_profile(profile, config.output_dir / kProfileFile);
  const std::uint64_t checks = static_cast<std::uint64_t>(validation.size()) * pre.size();
  log << "threshold: V=" << profile.threshold_V << " rate=" << profile.threshold_rate << " over "
      << profile.n_validation << " validation rows (violations=" << profile.total_violations()
      << ", satisfactions=" << checks - profile.total_violations() << ")\n";
  return profile;
}

std::vector<monitor::Verdict> stage_check(const RunConfig& config, const Dataset& unseen,
                                          const monitor::ViolationProfile& profile,
                                          const wp::DataPrecondition& pre, std::ostream& log) {
  std::vector<monitor::Verdict> verdicts = monitor::check_batch(unseen, profile, pre);
  ensure_output_dir(config);
  {
    std::ofstream f(config.output_dir / kVerdictFile);
    if (!f) throw DataError("cannot write verdicts.csv");
    monitor::write_verdicts_csv(f, verdicts);
  }
  const monitor::Tally t = monitor::tally(verdicts);
  log << "correct=" << t.correct << ", incorrect=" << t.incorrect << ", uncertain=" << t.uncertain << '\n';
  log << "violations=" << t.violations << ", satisfactions=" << t.satisfactions << '\n';
  return verdicts;
}

PipelineResult run_pipeline(const RunConfig& config, std::ostream& log) {
  validate(config, true, true);
  PipelineResult result;
  const ModelIR model = load_model(config.model_path);

  Stopwatch infer_clock;
  result.precondition = obtain_precondition(config, model, log);
  result.timings.infer = infer_clock.seconds();

  Stopwatch threshold_clock;
  result.profile = obtain_profile(config, result.precondition, log);
  result.timings.threshold = threshold_clock.seconds();

  Stopwatch check_clock;
  const Dataset unseen = load_checked(config.unseen_path, config, model.input_dim);
  result.verdicts = stage_check(config, unseen, *result.profile, result.precondition, log);
  result.timings.check = check_clock.seconds();

  if (unseen.labels) {
    Stopwatch eval_clock;
    EvalOutcome e = stage_eval(config, model, unseen, result.verdicts, result.timings.check, log);
    result.report = e.report;
    result.correlation = e.correlation;
    result.timings.eval = eval_clock.seconds();
  } else {
    log << "eval skipped: unseen data has no label column\n";
  }

  log << "timings: infer=" << result.timings.infer << "s threshold=" << result.timings.threshold
      << "s check=" << result.timings.check << "s eval=" << result.timings.eval << "s\n";
  return result;
}

int cmd_infer(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config, false, false);
    const ModelIR model = load_model(config.model_path);
    stage_infer(config, model, out);
  });
}

int cmd_threshold(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.validation_path.empty()) throw UsageError("--validation is required");
    validate(config, true, false);
    const ModelIR model = load_model(config.model_path);
    const wp::DataPrecondition pre = obtain_precondition(config, model, out);
    stage_threshold(config, pre, out);
  });
}

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config, true, true);
    const ModelIR model = load_model(config.model_path);
    const wp::DataPrecondition pre = obtain_precondition(config, model, out);
    const monitor::ViolationProfile profile = obtain_profile(config, pre, out);
    Stopwatch clock;
    const Dataset unseen = load_checked(config.unseen_path, config, model.input_dim);
    stage_check(config, unseen, profile, pre, out);
    out << "check phase: " << clock.seconds() << " s\n";
  });
}

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config, true, true);
    if (!config.label_column) throw UsageError("eval requires --label-column");
    const ModelIR model = load_model(config.model_path);
    const wp::DataPrecondition pre = obtain_precondition(config, model, out);
    const monitor::ViolationProfile profile = obtain_profile(config, pre, out);
    Stopwatch clock;
    const Dataset unseen = load_checked(config.unseen_path, config, model.input_dim);
    const auto verdicts = stage_check(config, unseen, profile, pre, out);
    const double check_seconds = clock.seconds();
    stage_eval(config, model, unseen, verdicts, check_seconds, out);
  });
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { run_pipeline(config, out); });
}

}  // namespace deepinfer::cli
