#pragma once

// Weakest-precondition propagation of an output interval back through a dense
// network, one layer at a time from the last layer to the first.
//
//   wp(N0 . N1, post)      = wp(N0, wp(N1, post))
//   wp(a(f(x)), delta)     = alpha(delta, beta(a(f(x))))
//   alpha(true)            = true
//   alpha(d0 AND d1)       = alpha(d0) AND alpha(d1)
//   alpha(d0 OR d1)        = alpha(d0) OR alpha(d1)
//   alpha(z cmp n)         = beta(a(f(x)), z cmp n)
//
// beta pulls one atom back through a layer using gamma = pinv(W). The
// comparison operator is carried through unchanged, even where a mixed-sign
// gamma would not preserve it elementwise.

#include <string_view>

#include "deepinfer/linalg.hpp"
#include "deepinfer/model_ir.hpp"
#include "deepinfer/predicate.hpp"

namespace deepinfer::wp {

// Corrected: x cmp gamma * (n - b), the algebraic preimage of y = W x + b.
// PaperLiteral: x cmp (gamma * n) - b, with b broadcast when it has one entry,
// truncated when longer than gamma * n, and rejected when shorter unless all zero.
enum class TransformMode { Corrected, PaperLiteral };

std::string_view to_string(TransformMode m);
TransformMode parse_mode(std::string_view text);

inline constexpr double kDefaultEpsilon = 1e-6;

struct WpOptions {
  TransformMode mode = TransformMode::Corrected;
  // Sigmoid bounds are clamped to [eps, 1 - eps], tanh bounds to [-1 + eps, 1 - eps].
  double epsilon = kDefaultEpsilon;
  double rcond = linalg::kDefaultRcond;
};

// Interval [low, high] asserted on every component of the network output.
struct Postcondition {
  double low = 0.95;
  double high = 0.99;

  bool operator==(const Postcondition&) const = default;
};

void validate(const Postcondition& post);

// y >= low AND y <= high on an output of `out_dim` components.
Predicate postcondition_predicate(const Postcondition& post, std::size_t out_dim);

// A layer together with its pseudoinverse, computed once.
class LayerTransformer {
 public:
  LayerTransformer(const LayerIR& layer, const WpOptions& options);

  const LayerIR& layer() const noexcept { return *layer_; }
  const linalg::Matrix& gamma() const noexcept { return gamma_; }

  // beta for one atom, dispatched on the layer activation.
  Predicate beta(const AtomicPredicate& atom) const;
  // alpha: structural recursion over the predicate tree.
  Predicate alpha(const Predicate& delta) const;

  Predicate beta_linear(const AtomicPredicate& atom) const;
  Predicate beta_relu(const AtomicPredicate& atom) const;
  Predicate beta_sigmoid(const AtomicPredicate& atom) const;
  Predicate beta_tanh(const AtomicPredicate& atom) const;

 private:
  linalg::Vector back_transform(const linalg::Vector& n) const;
  void check_arity(const AtomicPredicate& atom) const;

  const LayerIR* layer_;
  WpOptions options_;
  linalg::Matrix gamma_;
};

Predicate beta_linear(const LayerIR& layer, const AtomicPredicate& atom, const WpOptions& options = {});
Predicate beta_relu(const LayerIR& layer, const AtomicPredicate& atom, const WpOptions& options = {});
Predicate beta_sigmoid(const LayerIR& layer, const AtomicPredicate& atom, const WpOptions& options = {});
Predicate beta_tanh(const LayerIR& layer, const AtomicPredicate& atom, const WpOptions& options = {});

Predicate wp_layer(const LayerIR& layer, const Predicate& post, const WpOptions& options = {});

// Folds from the last layer to the first; the result constrains the model input.
Predicate wp_network(const ModelIR& model, const Predicate& post, const WpOptions& options = {});
Predicate wp_network(const ModelIR& model, const Postcondition& post, const WpOptions& options = {});

}  // namespace deepinfer::wp
