#include "deepinfer/predicate.hpp"

#include <sstream>
#include <stdexcept>

namespace deepinfer::wp {

std::string_view to_string(Cmp c) {
  switch (c) {
    case Cmp::GE:
      return ">=";
    case Cmp::LE:
      return "<=";
    case Cmp::GT:
      return ">";
    case Cmp::LT:
      return "<";
    case Cmp::EQ:
      return "==";
    case Cmp::NE:
      return "!=";
  }
  return "?";
}

Predicate Predicate::truth() { return Predicate(TrueNode{}); }

Predicate Predicate::conj(Predicate lhs, Predicate rhs) {
  return Predicate(AndNode{{std::make_shared<const Predicate>(std::move(lhs)),
                            std::make_shared<const Predicate>(std::move(rhs))}});
}

Predicate Predicate::disj(Predicate lhs, Predicate rhs) {
  return Predicate(OrNode{{std::make_shared<const Predicate>(std::move(lhs)),
                           std::make_shared<const Predicate>(std::move(rhs))}});
}

Predicate Predicate::atom(AtomicPredicate a) { return Predicate(std::move(a)); }

Predicate Predicate::atom(Cmp cmp, linalg::Vector bound) {
  return Predicate(AtomicPredicate{cmp, std::move(bound)});
}

Predicate::Kind Predicate::kind() const noexcept {
  return static_cast<Kind>(node_.index());
}

const Predicate& Predicate::lhs() const {
  if (const auto* a = std::get_if<AndNode>(&node_)) return *a->lhs;
  if (const auto* o = std::get_if<OrNode>(&node_)) return *o->lhs;
  throw std::logic_error("Predicate::lhs on a leaf");
}

const Predicate& Predicate::rhs() const {
  if (const auto* a = std::get_if<AndNode>(&node_)) return *a->rhs;
  if (const auto* o = std::get_if<OrNode>(&node_)) return *o->rhs;
  throw std::logic_error("Predicate::rhs on a leaf");
}

const AtomicPredicate& Predicate::as_atom() const {
  if (const auto* a = std::get_if<AtomicPredicate>(&node_)) return *a;
  throw std::logic_error("Predicate::as_atom on a non-atom");
}

std::size_t Predicate::atom_count() const {
  switch (kind()) {
    case Kind::True:
      return 0;
    case Kind::Atom:
      return 1;
    case Kind::And:
    case Kind::Or:
      return lhs().atom_count() + rhs().atom_count();
  }
  return 0;
}

bool operator==(const Predicate& a, const Predicate& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Predicate::Kind::True:
      return true;
    case Predicate::Kind::Atom:
      return a.as_atom() == b.as_atom();
    case Predicate::Kind::And:
    case Predicate::Kind::Or:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

namespace {

void render(std::ostream& os, const Predicate& p) {
  switch (p.kind()) {
    case Predicate::Kind::True:
      os << "true";
      return;
    case Predicate::Kind::Atom: {
      const auto& a = p.as_atom();
      os << "z " << to_string(a.cmp) << " [";
      for (std::size_t i = 0; i < a.bound.size(); ++i) os << (i ? ", " : "") << a.bound[i];
      os << ']';
      return;
    }
    case Predicate::Kind::And:
    case Predicate::Kind::Or:
      os << '(';
      render(os, p.lhs());
      os << (p.kind() == Predicate::Kind::And ? " && " : " || ");
      render(os, p.rhs());
      os << ')';
      return;
  }
}

}  // namespace

std::string to_string(const Predicate& p) {
  std::ostringstream os;
  render(os, p);
  return os.str();
}

}  // namespace deepinfer::wp
