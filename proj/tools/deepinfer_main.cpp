// deepinfer: infer data preconditions from a dense model and monitor unseen data.
//
//   deepinfer infer     --model m.json [--post-low 0.95 --post-high 0.99] --out dir
//   deepinfer threshold --model m.json --validation val.csv --out dir
//   deepinfer check     --model m.json --validation val.csv --unseen test.csv --out dir
//   deepinfer eval      ... --label-column label
//   deepinfer run       ... (all of the above)

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "deepinfer/pipeline.hpp"
#include "deepinfer/simd/kernels.hpp"

namespace {

using deepinfer::cli::RunConfig;

void add_common(CLI::App& cmd, RunConfig& cfg, std::string& mode, std::string& label, std::string& pre_path,
                std::string& profile_path) {
  cmd.add_option("--model", cfg.model_path, "Model JSON file")->required();
  cmd.add_option("--validation", cfg.validation_path, "Validation CSV (header row)");
  cmd.add_option("--unseen", cfg.unseen_path, "Unseen CSV (header row)");
  cmd.add_option("--post-low", cfg.post_low, "Postcondition lower bound")->capture_default_str();
  cmd.add_option("--post-high", cfg.post_high, "Postcondition upper bound")->capture_default_str();
  cmd.add_option("--mode", mode, "Transform mode")
      ->check(CLI::IsMember({"corrected", "paper-literal"}))
      ->capture_default_str();
  cmd.add_option("--label-column", label, "Name of the ground-truth label column");
  cmd.add_option("--epsilon", cfg.epsilon, "Clamp margin for sigmoid/tanh bounds")->capture_default_str();
  cmd.add_option("--rcond", cfg.rcond, "Relative singular value cutoff for the pseudoinverse")
      ->capture_default_str();
  cmd.add_option("--out", cfg.output_dir, "Output directory")->capture_default_str();
  cmd.add_option("--precondition", pre_path, "Reuse a precondition JSON instead of inferring one");
  cmd.add_option("--profile", profile_path, "Reuse a profile JSON instead of recomputing it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data precondition inference and runtime monitoring for dense networks"};
  app.require_subcommand(1);
  bool show_isa = false;
  app.add_flag("--show-isa", show_isa, "Print the selected SIMD kernel set");

  RunConfig cfg;
  std::string mode = "corrected";
  std::string label;
  std::string pre_path;
  std::string profile_path;

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, std::ostream&, std::ostream&);
  };
  const Entry entries[] = {
      {"infer", "Infer per-feature data preconditions", deepinfer::cli::cmd_infer},
      {"threshold", "Compute the validation violation profile", deepinfer::cli::cmd_threshold},
      {"check", "Label unseen rows Correct / Incorrect / Uncertain", deepinfer::cli::cmd_check},
      {"eval", "Check and score against ground truth", deepinfer::cli::cmd_eval},
      {"run", "Run infer, threshold, check and eval", deepinfer::cli::cmd_run},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> commands;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(*sub, cfg, mode, label, pre_path, profile_path);
    commands.emplace_back(sub, &e);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return deepinfer::cli::kExitUsage;
  }

  if (show_isa) std::cerr << "simd: " << deepinfer::simd::active_kernels().name << '\n';

  cfg.mode = deepinfer::wp::parse_mode(mode);
  if (!label.empty()) cfg.label_column = label;
  if (!pre_path.empty()) cfg.precondition_path = pre_path;
  if (!profile_path.empty()) cfg.profile_path = profile_path;

  for (const auto& [sub, entry] : commands) {
    if (sub->parsed()) return entry->fn(cfg, std::cout, std::cerr);
  }
  return deepinfer::cli::kExitUsage;
}
