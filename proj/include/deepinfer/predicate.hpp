#pragma once

// Predicate grammar over a layer's input or output vector z:
//   delta ::= true | delta AND delta | delta OR delta | z cmp n

#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "deepinfer/linalg.hpp"

namespace deepinfer::wp {

enum class Cmp { GE, LE, GT, LT, EQ, NE };

std::string_view to_string(Cmp c);

struct AtomicPredicate {
  Cmp cmp = Cmp::LE;
  linalg::Vector bound;

  std::size_t arity() const noexcept { return bound.size(); }
  bool operator==(const AtomicPredicate&) const = default;
};

class Predicate {
 public:
  enum class Kind { True, And, Or, Atom };

  static Predicate truth();
  static Predicate conj(Predicate lhs, Predicate rhs);
  static Predicate disj(Predicate lhs, Predicate rhs);
  static Predicate atom(AtomicPredicate a);
  static Predicate atom(Cmp cmp, linalg::Vector bound);

  Kind kind() const noexcept;
  bool is_true() const noexcept { return kind() == Kind::True; }

  // Valid for And / Or nodes only.
  const Predicate& lhs() const;
  const Predicate& rhs() const;
  // Valid for Atom nodes only.
  const AtomicPredicate& as_atom() const;

  std::size_t atom_count() const;

  // Structural equality; bounds are compared exactly.
  friend bool operator==(const Predicate& a, const Predicate& b);

 private:
  struct TrueNode {};
  struct Binary {
    std::shared_ptr<const Predicate> lhs;
    std::shared_ptr<const Predicate> rhs;
  };
  struct AndNode : Binary {};
  struct OrNode : Binary {};

  using Node = std::variant<TrueNode, AndNode, OrNode, AtomicPredicate>;
  explicit Predicate(Node node) : node_(std::move(node)) {}

  Node node_;
};

std::string to_string(const Predicate& p);

}  // namespace deepinfer::wp
