#include "deepinfer/monitor.hpp"

#include <fstream>
#include <numeric>
#include <ostream>
#include <string>

#include "deepinfer/errors.hpp"
#include "deepinfer/simd/kernels.hpp"

namespace deepinfer::monitor {

using nlohmann::json;

namespace {

void require_width(std::size_t width, const wp::DataPrecondition& pre) {
  if (width != pre.size()) {
    throw DimensionError("data has " + std::to_string(width) + " features, precondition has " +
                         std::to_string(pre.size()));
  }
}

}  // namespace

std::uint64_t ViolationProfile::total_violations() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

ViolationProfile make_profile(std::vector<std::uint64_t> counts, std::size_t n_validation) {
  if (n_validation == 0) throw EmptyDataset("violation profile needs at least one validation row");
  ViolationProfile p;
  p.counts = std::move(counts);
  p.n_validation = n_validation;
  const double total = static_cast<double>(p.total_violations());
  p.threshold_V = p.counts.empty() ? 0.0 : total / static_cast<double>(p.counts.size());
  p.threshold_rate = p.threshold_V / static_cast<double>(n_validation);
  return p;
}

std::vector<std::uint64_t> collect_feature_violations(const Dataset& data, const wp::DataPrecondition& pre) {
  require_width(data.width(), pre);
  const auto& k = simd::active_kernels();
  std::vector<std::uint64_t> counts(pre.size(), 0);
  for (std::size_t r = 0; r < data.size(); ++r) {
    k.accumulate_outside(data.rows.row(r).data(), pre.lo.data(), pre.hi.data(), pre.size(), counts.data());
  }
  return counts;
}

ViolationProfile compute_profile(const Dataset& validation, const wp::DataPrecondition& pre) {
  if (validation.empty()) throw EmptyDataset("validation set has no rows");
  return make_profile(collect_feature_violations(validation, pre), validation.size());
}

ThresholdResult compute_threshold(const ModelIR& model, const Dataset& validation, const wp::Postcondition& post,
                                  const wp::WpOptions& options) {
  if (validation.empty()) throw EmptyDataset("validation set has no rows");
  if (validation.width() != model.input_dim) {
    throw DimensionError("validation data has " + std::to_string(validation.width()) + " features, model expects " +
                         std::to_string(model.input_dim));
  }
  wp::DataPrecondition pre = wp::infer_precondition(model, post, options);
  ViolationProfile profile = compute_profile(validation, pre);
  return {std::move(profile), std::move(pre)};
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Correct:
      return "Correct";
    case Outcome::Incorrect:
      return "Incorrect";
    case Outcome::Uncertain:
      return "Uncertain";
  }
  return "Unknown";
}

Outcome decision_tree(std::size_t M, std::size_t L) {
  if (L == 0) return Outcome::Correct;
  if (L == M) return Outcome::Uncertain;
  if (L < M) return Outcome::Correct;
  return Outcome::Incorrect;
}

Verdict check_prediction(std::span<const double> row, const ViolationProfile& profile,
                         const wp::DataPrecondition& pre) {
  require_width(row.size(), pre);
  Verdict v;
  v.violated.resize(pre.size());
  simd::active_kernels().flag_outside(row.data(), pre.lo.data(), pre.hi.data(), pre.size(), v.violated.data());
  // The per-row indicator is 0 or 1, so it is compared against the validation
  // violation rate rather than the raw mean count.
  for (std::uint8_t flag : v.violated) {
    if (static_cast<double>(flag) <= profile.threshold_rate) {
      ++v.M;
    } else {
      ++v.L;
    }
  }
  v.outcome = decision_tree(v.M, v.L);
  return v;
}

std::vector<Verdict> check_batch(const Dataset& data, const ViolationProfile& profile,
                                 const wp::DataPrecondition& pre) {
  require_width(data.width(), pre);
  std::vector<Verdict> out;
  out.reserve(data.size());
  for (std::size_t r = 0; r < data.size(); ++r) out.push_back(check_prediction(data.rows.row(r), profile, pre));
  return out;
}

Tally tally(const std::vector<Verdict>& verdicts) {
  Tally t;
  for (const auto& v : verdicts) {
    switch (v.outcome) {
      case Outcome::Correct:
        ++t.correct;
        break;
      case Outcome::Incorrect:
        ++t.incorrect;
        break;
      case Outcome::Uncertain:
        ++t.uncertain;
        break;
    }
    const auto violated = static_cast<std::uint64_t>(std::accumulate(v.violated.begin(), v.violated.end(), 0u));
    t.violations += violated;
    t.satisfactions += v.violated.size() - violated;
  }
  return t;
}

void write_verdicts_csv(std::ostream& out, const std::vector<Verdict>& verdicts) {
  out << "row_index,outcome,M,L,violated_features\n";
  for (std::size_t r = 0; r < verdicts.size(); ++r) {
    const Verdict& v = verdicts[r];
    out << r << ',' << to_string(v.outcome) << ',' << v.M << ',' << v.L << ',';
    bool first = true;
    for (std::size_t i = 0; i < v.violated.size(); ++i) {
      if (!v.violated[i]) continue;
      out << (first ? "" : ";") << i;
      first = false;
    }
    out << '\n';
  }
}

json to_json(const ViolationProfile& profile) {
  return {{"counts", profile.counts},
          {"n_validation", profile.n_validation},
          {"threshold_V", profile.threshold_V},
          {"threshold_rate", profile.threshold_rate}};
}

ViolationProfile profile_from_json(const json& doc) {
  try {
    ViolationProfile p;
    p.counts = doc.at("counts").get<std::vector<std::uint64_t>>();
    p.n_validation = doc.at("n_validation").get<std::size_t>();
    p.threshold_V = doc.at("threshold_V").get<double>();
    p.threshold_rate = doc.at("threshold_rate").get<double>();
    for (auto c : p.counts) {
      if (c > p.n_validation) throw DataError("violation count exceeds n_validation");
    }
    return p;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed profile: ") + e.what());
  }
}

void save_profile(const ViolationProfile& profile, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << to_json(profile).dump(2) << '\n';
}

ViolationProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return profile_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed profile: ") + e.what());
  }
}

}  // namespace deepinfer::monitor
