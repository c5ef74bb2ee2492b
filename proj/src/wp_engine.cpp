#include "deepinfer/wp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "deepinfer/errors.hpp"

namespace deepinfer::wp {

std::string_view to_string(TransformMode m) {
  return m == TransformMode::Corrected ? "corrected" : "paper-literal";
}

TransformMode parse_mode(std::string_view text) {
  if (text == "corrected") return TransformMode::Corrected;
  if (text == "paper-literal") return TransformMode::PaperLiteral;
  throw Error("unknown transform mode \"" + std::string(text) + "\" (expected corrected|paper-literal)");
}

void validate(const Postcondition& post) {
  if (!std::isfinite(post.low) || !std::isfinite(post.high)) {
    throw DomainError("postcondition bounds must be finite");
  }
  if (!(post.low < post.high)) {
    throw DomainError("postcondition requires low < high, got [" + std::to_string(post.low) + ", " +
                      std::to_string(post.high) + "]");
  }
}

Predicate postcondition_predicate(const Postcondition& post, std::size_t out_dim) {
  validate(post);
  return Predicate::conj(Predicate::atom(Cmp::GE, linalg::Vector(out_dim, post.low)),
                         Predicate::atom(Cmp::LE, linalg::Vector(out_dim, post.high)));
}

namespace {

// Clamps each component into the open range (lo, hi) shrunk by eps, rejecting
// components further than eps outside the closed range.
linalg::Vector clamp_to_range(const linalg::Vector& n, double lo, double hi, double eps,
                              std::string_view activation) {
  linalg::Vector out(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double v = n[i];
    if (!std::isfinite(v) || v < lo - eps || v > hi + eps) {
      throw DomainError("bound " + std::to_string(v) + " at component " + std::to_string(i) +
                        " lies outside the " + std::string(activation) + " range [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "]");
    }
    out[i] = std::min(std::max(v, lo + eps), hi - eps);
  }
  return out;
}

linalg::Vector align_bias(const linalg::Vector& bias, std::size_t len) {
  if (bias.size() == len) return bias;
  if (bias.size() == 1) return linalg::Vector(len, bias.front());
  if (bias.size() > len) return linalg::Vector(bias.begin(), bias.begin() + static_cast<std::ptrdiff_t>(len));
  // Subtracting zeros needs no alignment.
  if (std::all_of(bias.begin(), bias.end(), [](double v) { return v == 0.0; })) return linalg::Vector(len, 0.0);
  throw DimensionError("paper-literal mode cannot subtract a bias of length " + std::to_string(bias.size()) +
                       " from a bound of length " + std::to_string(len));
}

}  // namespace

LayerTransformer::LayerTransformer(const LayerIR& layer, const WpOptions& options)
    : layer_(&layer), options_(options), gamma_(linalg::pinv(layer.weights, options.rcond)) {}

void LayerTransformer::check_arity(const AtomicPredicate& atom) const {
  if (atom.arity() != layer_->out_dim()) {
    throw DimensionError("atom of arity " + std::to_string(atom.arity()) + " applied to a layer with out_dim " +
                         std::to_string(layer_->out_dim()));
  }
}

linalg::Vector LayerTransformer::back_transform(const linalg::Vector& n) const {
  if (options_.mode == TransformMode::Corrected) {
    return linalg::matvec(gamma_, linalg::subtract(n, layer_->bias));
  }
  const linalg::Vector pulled = linalg::matvec(gamma_, n);
  return linalg::subtract(pulled, align_bias(layer_->bias, pulled.size()));
}

Predicate LayerTransformer::beta_linear(const AtomicPredicate& atom) const {
  check_arity(atom);
  return Predicate::atom(atom.cmp, back_transform(atom.bound));
}

Predicate LayerTransformer::beta_relu(const AtomicPredicate& atom) const {
  check_arity(atom);
  Predicate first = Predicate::atom(atom.cmp, back_transform(atom.bound));
  Predicate second = Predicate::atom(atom.cmp, linalg::matvec(gamma_, linalg::negate(layer_->bias)));
  return Predicate::conj(std::move(first), std::move(second));
}

Predicate LayerTransformer::beta_sigmoid(const AtomicPredicate& atom) const {
  check_arity(atom);
  linalg::Vector n = clamp_to_range(atom.bound, 0.0, 1.0, options_.epsilon, "sigmoid");
  for (double& v : n) v = std::log(v / (1.0 - v));
  return Predicate::atom(atom.cmp, back_transform(n));
}

Predicate LayerTransformer::beta_tanh(const AtomicPredicate& atom) const {
  check_arity(atom);
  if (options_.mode == TransformMode::PaperLiteral) {
    throw DomainError(
        "paper-literal tanh rule 0.5*ln((n-1)/(n+1)) has no real value for n in (-1, 1); use corrected mode");
  }
  linalg::Vector n = clamp_to_range(atom.bound, -1.0, 1.0, options_.epsilon, "tanh");
  for (double& v : n) v = 0.5 * std::log((1.0 + v) / (1.0 - v));
  return Predicate::atom(atom.cmp, back_transform(n));
}

Predicate LayerTransformer::beta(const AtomicPredicate& atom) const {
  switch (layer_->activation) {
    case Activation::Linear:
      return beta_linear(atom);
    case Activation::Relu:
      return beta_relu(atom);
    case Activation::Sigmoid:
      return beta_sigmoid(atom);
    case Activation::Tanh:
      return beta_tanh(atom);
  }
  throw Error("unhandled activation");
}

Predicate LayerTransformer::alpha(const Predicate& delta) const {
  switch (delta.kind()) {
    case Predicate::Kind::True:
      return Predicate::truth();
    case Predicate::Kind::And:
      return Predicate::conj(alpha(delta.lhs()), alpha(delta.rhs()));
    case Predicate::Kind::Or:
      return Predicate::disj(alpha(delta.lhs()), alpha(delta.rhs()));
    case Predicate::Kind::Atom:
      return beta(delta.as_atom());
  }
  throw Error("unhandled predicate kind");
}

Predicate beta_linear(const LayerIR& layer, const AtomicPredicate& atom, const WpOptions& options) {
  return LayerTransformer(layer, options).beta_linear(atom);
}

Predicate beta_relu(const LayerIR& layer, const AtomicPredicate& atom, const WpOptions& options) {
  return LayerTransformer(layer, options).beta_relu(atom);
}

Predicate beta_sigmoid(const LayerIR& layer, const AtomicPredicate& atom, const WpOptions& options) {
  return LayerTransformer(layer, options).beta_sigmoid(atom);
}

Predicate beta_tanh(const LayerIR& layer, const AtomicPredicate& atom, const WpOptions& options) {
  return LayerTransformer(layer, options).beta_tanh(atom);
}

Predicate wp_layer(const LayerIR& layer, const Predicate& post, const WpOptions& options) {
  return LayerTransformer(layer, options).alpha(post);
}

Predicate wp_network(const ModelIR& model, const Predicate& post, const WpOptions& options) {
  Predicate delta = post;
  for (auto it = model.layers.rbegin(); it != model.layers.rend(); ++it) delta = wp_layer(*it, delta, options);
  return delta;
}

Predicate wp_network(const ModelIR& model, const Postcondition& post, const WpOptions& options) {
  return wp_network(model, postcondition_predicate(post, model.output_dim()), options);
}

}  // namespace deepinfer::wp
