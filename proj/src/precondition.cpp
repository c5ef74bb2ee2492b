#include "deepinfer/precondition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "deepinfer/errors.hpp"

namespace deepinfer::wp {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Box {
  linalg::Vector lo;
  linalg::Vector hi;
};

Box unbounded(std::size_t n) { return {linalg::Vector(n, -kInf), linalg::Vector(n, kInf)}; }

Box box_of(const Predicate& pred, std::size_t n) {
  switch (pred.kind()) {
    case Predicate::Kind::True:
      return unbounded(n);
    case Predicate::Kind::Atom: {
      const AtomicPredicate& a = pred.as_atom();
      if (a.arity() != n) {
        throw DimensionError("atom of arity " + std::to_string(a.arity()) + " does not constrain " +
                             std::to_string(n) + " input features");
      }
      Box b = unbounded(n);
      switch (a.cmp) {
        case Cmp::GE:
        case Cmp::GT:
          b.lo = a.bound;
          break;
        case Cmp::LE:
        case Cmp::LT:
          b.hi = a.bound;
          break;
        case Cmp::EQ:
        case Cmp::NE:
          throw UnsupportedPredicate("cannot consolidate a '" + std::string(to_string(a.cmp)) +
                                     "' atom into interval bounds");
      }
      return b;
    }
    case Predicate::Kind::And: {
      Box l = box_of(pred.lhs(), n);
      const Box r = box_of(pred.rhs(), n);
      for (std::size_t i = 0; i < n; ++i) {
        l.lo[i] = std::max(l.lo[i], r.lo[i]);
        l.hi[i] = std::min(l.hi[i], r.hi[i]);
      }
      return l;
    }
    case Predicate::Kind::Or: {
      Box l = box_of(pred.lhs(), n);
      const Box r = box_of(pred.rhs(), n);
      for (std::size_t i = 0; i < n; ++i) {
        const bool l_empty = l.lo[i] > l.hi[i];
        const bool r_empty = r.lo[i] > r.hi[i];
        if (l_empty && !r_empty) {
          l.lo[i] = r.lo[i];
          l.hi[i] = r.hi[i];
        } else if (!r_empty) {
          l.lo[i] = std::min(l.lo[i], r.lo[i]);
          l.hi[i] = std::max(l.hi[i], r.hi[i]);
        }
      }
      return l;
    }
  }
  throw Error("unhandled predicate kind");
}

json bound_to_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

double bound_from_json(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw DataError("precondition bound must be a number, \"inf\" or \"-inf\"");
}

}  // namespace

DataPrecondition consolidate(const Predicate& pred, std::size_t input_dim) {
  Box b = box_of(pred, input_dim);
  DataPrecondition pre;
  pre.feasible.resize(input_dim);
  for (std::size_t i = 0; i < input_dim; ++i) pre.feasible[i] = b.lo[i] <= b.hi[i];
  pre.lo = std::move(b.lo);
  pre.hi = std::move(b.hi);
  return pre;
}

DataPrecondition infer_precondition(const ModelIR& model, const Postcondition& post, const WpOptions& options) {
  DataPrecondition pre = consolidate(wp_network(model, post, options), model.input_dim);
  pre.mode = options.mode;
  pre.post = post;
  return pre;
}

json to_json(const DataPrecondition& pre) {
  json features = json::array();
  for (std::size_t i = 0; i < pre.size(); ++i) {
    features.push_back({{"index", i},
                        {"lo", bound_to_json(pre.lo[i])},
                        {"hi", bound_to_json(pre.hi[i])},
                        {"feasible", static_cast<bool>(pre.feasible[i])}});
  }
  return {{"mode", std::string(to_string(pre.mode))},
          {"post", {pre.post.low, pre.post.high}},
          {"features", std::move(features)}};
}

DataPrecondition precondition_from_json(const json& doc) {
  try {
    DataPrecondition pre;
    pre.mode = parse_mode(doc.at("mode").get<std::string>());
    const json& post = doc.at("post");
    if (!post.is_array() || post.size() != 2) throw DataError("\"post\" must be [n1, n2]");
    pre.post = {post[0].get<double>(), post[1].get<double>()};
    const json& features = doc.at("features");
    pre.lo.resize(features.size());
    pre.hi.resize(features.size());
    pre.feasible.resize(features.size());
    std::vector<bool> seen(features.size(), false);
    for (const json& f : features) {
      const auto index = f.at("index").get<std::size_t>();
      if (index >= features.size() || seen[index]) throw DataError("feature indices must be a permutation");
      seen[index] = true;
      pre.lo[index] = bound_from_json(f.at("lo"));
      pre.hi[index] = bound_from_json(f.at("hi"));
      pre.feasible[index] = pre.lo[index] <= pre.hi[index];
    }
    return pre;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed precondition: ") + e.what());
  }
}

void save_precondition(const DataPrecondition& pre, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << to_json(pre).dump(2) << '\n';
}

DataPrecondition load_precondition(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return precondition_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed precondition: ") + e.what());
  }
}

}  // namespace deepinfer::wp
