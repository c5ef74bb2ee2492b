#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "deepinfer/errors.hpp"
#include "deepinfer/precondition.hpp"
#include "deepinfer/wp_engine.hpp"
#include "oracles.hpp"

using namespace deepinfer;
using namespace deepinfer::wp;
using linalg::Matrix;

namespace {

LayerIR layer(Matrix w, linalg::Vector b, Activation a) { return {std::move(w), std::move(b), a}; }

WpOptions literal() {
  WpOptions o;
  o.mode = TransformMode::PaperLiteral;
  return o;
}

AtomicPredicate atom_of(const Predicate& p) {
  REQUIRE(p.kind() == Predicate::Kind::Atom);
  return p.as_atom();
}

}  // namespace

TEST_CASE("beta_linear examples") {
  const LayerIR l = layer(Matrix::from_rows({{2, 0}, {0, 4}}), {1, -1}, Activation::Linear);
  const auto a = atom_of(beta_linear(l, {Cmp::LE, {5, 7}}));
  CHECK(a.cmp == Cmp::LE);
  CHECK(a.bound[0] == doctest::Approx(2.0));
  CHECK(a.bound[1] == doctest::Approx(2.0));

  const LayerIR id = layer(Matrix::identity(3), {0, 0, 0}, Activation::Linear);
  const AtomicPredicate in{Cmp::GT, {0.25, -3, 8}};
  CHECK(atom_of(beta_linear(id, in)) == in);

  const LayerIR two = layer(Matrix::from_rows({{2}}), {0}, Activation::Linear);
  CHECK(atom_of(beta_linear(two, {Cmp::LE, {4}})).bound[0] == doctest::Approx(2.0));
  CHECK(atom_of(beta_linear(two, {Cmp::LE, {4}}, literal())).bound[0] == doctest::Approx(2.0));

  CHECK_THROWS_AS(beta_linear(l, {Cmp::LE, {1}}), DimensionError);
}

TEST_CASE("beta_relu examples") {
  const LayerIR l = layer(Matrix::from_rows({{2}}), {-1}, Activation::Relu);
  const Predicate corrected = beta_relu(l, {Cmp::LE, {4}});
  REQUIRE(corrected.kind() == Predicate::Kind::And);
  CHECK(atom_of(corrected.lhs()).bound[0] == doctest::Approx(2.5));
  CHECK(atom_of(corrected.rhs()).bound[0] == doctest::Approx(0.5));
  CHECK(atom_of(corrected.rhs()).cmp == Cmp::LE);

  const Predicate lit = beta_relu(l, {Cmp::LE, {4}}, literal());
  REQUIRE(lit.kind() == Predicate::Kind::And);
  CHECK(atom_of(lit.lhs()).bound[0] == doctest::Approx(3.0));
  CHECK(atom_of(lit.rhs()).bound[0] == doctest::Approx(0.5));

  const LayerIR id = layer(Matrix::identity(2), {0, 0}, Activation::Relu);
  const AtomicPredicate in{Cmp::GE, {0.3, 0.7}};
  const Predicate p = beta_relu(id, in);
  CHECK(atom_of(p.lhs()) == in);
  CHECK(atom_of(p.rhs()) == AtomicPredicate{Cmp::GE, {0.0, 0.0}});
}

TEST_CASE("beta_sigmoid examples") {
  const LayerIR l = layer(Matrix::from_rows({{1}}), {0}, Activation::Sigmoid);
  CHECK(atom_of(beta_sigmoid(l, {Cmp::LE, {0.5}})).bound[0] == doctest::Approx(0.0));
  const double ln9 = atom_of(beta_sigmoid(l, {Cmp::LE, {0.9}})).bound[0];
  CHECK(ln9 == doctest::Approx(std::log(9.0)).epsilon(1e-12));
  CHECK(std::abs(ln9 - 2.1972245) < 1e-7);
  CHECK_THROWS_AS(beta_sigmoid(l, {Cmp::LE, {1.2}}), DomainError);
  CHECK_THROWS_AS(beta_sigmoid(l, {Cmp::GE, {-0.1}}), DomainError);
  // An endpoint of the range is clamped rather than rejected.
  const double top = atom_of(beta_sigmoid(l, {Cmp::LE, {1.0}})).bound[0];
  CHECK(top == doctest::Approx(oracle::logit(1.0 - kDefaultEpsilon)));
}

TEST_CASE("beta_tanh examples") {
  const LayerIR l = layer(Matrix::from_rows({{1}}), {0}, Activation::Tanh);
  CHECK(atom_of(beta_tanh(l, {Cmp::LE, {0.0}})).bound[0] == doctest::Approx(0.0));
  CHECK(std::abs(atom_of(beta_tanh(l, {Cmp::LE, {0.76159}})).bound[0] - 1.0) < 1e-4);
  CHECK_THROWS_AS(beta_tanh(l, {Cmp::LE, {-1.5}}), DomainError);
  CHECK_THROWS_AS(beta_tanh(l, {Cmp::LE, {0.5}}, literal()), DomainError);
}

TEST_CASE("wp_network examples") {
  SUBCASE("identity sigmoid, post [0.5, 0.9]") {
    ModelIR m;
    m.input_dim = 1;
    m.layers.push_back(layer(Matrix::identity(1), {0}, Activation::Sigmoid));
    const Predicate p = wp_network(m, Postcondition{0.5, 0.9});
    REQUIRE(p.kind() == Predicate::Kind::And);
    CHECK(atom_of(p.lhs()).cmp == Cmp::GE);
    CHECK(atom_of(p.lhs()).bound[0] == doctest::Approx(0.0));
    CHECK(atom_of(p.rhs()).cmp == Cmp::LE);
    CHECK(atom_of(p.rhs()).bound[0] == doctest::Approx(std::log(9.0)));
  }
  SUBCASE("identity linear, post [-1, 1]") {
    ModelIR m;
    m.input_dim = 1;
    m.layers.push_back(layer(Matrix::identity(1), {0}, Activation::Linear));
    const Predicate p = wp_network(m, Postcondition{-1, 1});
    CHECK(p == Predicate::conj(Predicate::atom(Cmp::GE, {-1}), Predicate::atom(Cmp::LE, {1})));
  }
  SUBCASE("linear then sigmoid, positive diagonal weights") {
    ModelIR m;
    m.input_dim = 2;
    m.layers.push_back(layer(Matrix::from_rows({{2, 0}, {0, 4}}), {1, -1}, Activation::Linear));
    m.layers.push_back(layer(Matrix::from_rows({{0.5, 0}, {0, 2}}), {0.2, -0.3}, Activation::Sigmoid));
    const DataPrecondition pre = consolidate(wp_network(m, Postcondition{0.6, 0.8}), 2);
    const double w1[] = {2, 4}, b1[] = {1, -1}, w2[] = {0.5, 2}, b2[] = {0.2, -0.3};
    for (int i = 0; i < 2; ++i) {
      const double lo = ((oracle::logit(0.6) - b2[i]) / w2[i] - b1[i]) / w1[i];
      const double hi = ((oracle::logit(0.8) - b2[i]) / w2[i] - b1[i]) / w1[i];
      CHECK(pre.lo[i] == doctest::Approx(lo).epsilon(1e-12));
      CHECK(pre.hi[i] == doctest::Approx(hi).epsilon(1e-12));
    }
  }
}

TEST_CASE("alpha distributes over And and Or; True stays True") {
  std::mt19937_64 rng(21);
  // Tall layer so the literal rule can truncate the bias.
  const LayerIR l = layer(oracle::random_matrix(rng, 4, 3), {0.5, -0.25, 1.0, 2.0}, Activation::Relu);
  const Predicate a = Predicate::atom(Cmp::LE, {1, 2, 3, 4});
  const Predicate b = Predicate::atom(Cmp::GE, {-1, 0, 0.5, 0});
  for (const auto& opts : {WpOptions{}, literal()}) {
    CHECK(wp_layer(l, Predicate::conj(a, b), opts) == Predicate::conj(wp_layer(l, a, opts), wp_layer(l, b, opts)));
    CHECK(wp_layer(l, Predicate::disj(a, b), opts) == Predicate::disj(wp_layer(l, a, opts), wp_layer(l, b, opts)));
    CHECK(wp_layer(l, Predicate::truth(), opts).is_true());
  }
  ModelIR m;
  m.input_dim = 3;
  m.layers.push_back(l);
  CHECK(wp_network(m, Predicate::truth()).is_true());
}

TEST_CASE("two-layer wp equals composed single-layer wp bitwise") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    ModelIR m;
    m.input_dim = 5;
    m.layers.push_back(layer(oracle::random_matrix(rng, 7, 5), linalg::Vector(7, 0.1 * trial), Activation::Relu));
    m.layers.push_back(layer(oracle::random_matrix(rng, 1, 7), {-0.3}, Activation::Sigmoid));
    const Predicate post = postcondition_predicate({0.7, 0.9}, 1);
    const Predicate composed = wp_layer(m.layers[0], wp_layer(m.layers[1], post));
    CHECK(wp_network(m, post) == composed);
  }
}

TEST_CASE("modes agree when every bias is zero") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    ModelIR m;
    m.input_dim = 6;
    m.layers.push_back(layer(oracle::random_matrix(rng, 9, 6), linalg::Vector(9), Activation::Relu));
    m.layers.push_back(layer(oracle::random_matrix(rng, 4, 9), linalg::Vector(4), Activation::Linear));
    m.layers.push_back(layer(oracle::random_matrix(rng, 1, 4), linalg::Vector(1), Activation::Sigmoid));
    const Postcondition post{0.55, 0.95};
    CHECK(infer_precondition(m, post).lo == infer_precondition(m, post, literal()).lo);
    CHECK(infer_precondition(m, post).hi == infer_precondition(m, post, literal()).hi);
  }
}

TEST_CASE("paper-literal bias alignment") {
  // gamma * n has 3 entries; a single bias broadcasts.
  const LayerIR wide1 = layer(Matrix::from_rows({{1, 1, 1}}), {0.5}, Activation::Linear);
  const auto a = atom_of(beta_linear(wide1, {Cmp::LE, {3}}, literal()));
  REQUIRE(a.arity() == 3);
  for (double v : a.bound) CHECK(v == doctest::Approx(1.0 - 0.5));

  // Bias longer than gamma * n is truncated.
  const LayerIR tall = layer(Matrix::from_rows({{1}, {1}}), {0.25, 7}, Activation::Linear);
  const auto t = atom_of(beta_linear(tall, {Cmp::LE, {2, 2}}, literal()));
  REQUIRE(t.arity() == 1);
  CHECK(t.bound[0] == doctest::Approx(2.0 - 0.25));

  // Shorter (but not length one) is an error.
  const LayerIR wide2 = layer(Matrix::from_rows({{1, 1, 1}, {1, -1, 0}}), {1, 2}, Activation::Linear);
  CHECK_THROWS_AS(beta_linear(wide2, {Cmp::LE, {1, 1}}, literal()), DimensionError);
}

TEST_CASE("postcondition validation") {
  CHECK_THROWS_AS(validate(Postcondition{0.9, 0.5}), DomainError);
  CHECK_THROWS_AS(validate(Postcondition{0.5, 0.5}), DomainError);
  CHECK_NOTHROW(validate(Postcondition{}));

  ModelIR m;
  m.input_dim = 1;
  m.layers.push_back(layer(Matrix::identity(1), {0}, Activation::Tanh));
  CHECK_THROWS_AS(wp_network(m, Postcondition{2, 3}), DomainError);
}

TEST_CASE("mode names round-trip") {
  CHECK(parse_mode(to_string(TransformMode::Corrected)) == TransformMode::Corrected);
  CHECK(parse_mode(to_string(TransformMode::PaperLiteral)) == TransformMode::PaperLiteral);
  CHECK_THROWS(parse_mode("literal"));
}

TEST_CASE("4-layer model just under 3000 neurons infers in under 5 s") {
  std::mt19937_64 rng(24);
  ModelIR m;
  m.input_dim = 64;
  const std::size_t widths[] = {1000, 1000, 999, 1};
  std::size_t in = m.input_dim;
  for (std::size_t k = 0; k < 4; ++k) {
    const Activation act = k == 3 ? Activation::Sigmoid : Activation::Relu;
    m.layers.push_back(layer(oracle::random_matrix(rng, widths[k], in, 1.0 / std::sqrt(double(in))),
                             linalg::Vector(widths[k], 0.01), act));
    in = widths[k];
  }
  REQUIRE(m.neuron_count() == 3000);
  const auto t0 = std::chrono::steady_clock::now();
  const DataPrecondition pre = infer_precondition(m, Postcondition{});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("wp on 64-1000-1000-999-1: " << secs << " s");
  CHECK(pre.size() == 64);
  CHECK(secs < 5.0);
}
