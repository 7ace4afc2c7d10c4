#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace plover {

enum class TermKind { Constant, Variable };

// Constants start lowercase, object variables uppercase; the two name
// spaces never collide.
struct ObjectTerm {
  TermKind kind;
  std::string name;

  friend bool operator==(const ObjectTerm&, const ObjectTerm&) = default;
  friend auto operator<=>(const ObjectTerm&, const ObjectTerm&) = default;
};

ObjectTerm constant(std::string name);
ObjectTerm variable(std::string name);

enum class FormulaKind { Bottom, Top, Atom, Not, And };

class ClassicalFormula;
using FormulaPtr = std::shared_ptr<const ClassicalFormula>;

// Immutable formula tree over {false, true, atoms, ~, &}. Disjunction and
// implication are desugared by the parser and never appear here. Nodes are
// shared and never mutated, so formulas are safe to pass between tasks.
class ClassicalFormula {
 public:
  static FormulaPtr bottom();
  static FormulaPtr top();
  static FormulaPtr atom(std::string predicate, std::vector<ObjectTerm> args = {});
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr conjunction(FormulaPtr lhs, FormulaPtr rhs);

  FormulaKind kind() const { return kind_; }
  const std::string& predicate() const { return predicate_; }
  const std::vector<ObjectTerm>& args() const { return args_; }
  const FormulaPtr& child() const { return lhs_; }  // Not
  const FormulaPtr& lhs() const { return lhs_; }    // And
  const FormulaPtr& rhs() const { return rhs_; }    // And

 private:
  ClassicalFormula() = default;

  FormulaKind kind_ = FormulaKind::Top;
  std::string predicate_;
  std::vector<ObjectTerm> args_;
  FormulaPtr lhs_;
  FormulaPtr rhs_;
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);
bool is_ground(const FormulaPtr& f);
std::string render(const FormulaPtr& f);

// A ground atom as it appears in a Herbrand base.
struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

std::string render(const GroundAtom& a);

void collect_ground_atoms(const FormulaPtr& f, std::set<GroundAtom>& out);
void collect_variables(const FormulaPtr& f, std::set<std::string>& out);
void collect_constants(const FormulaPtr& f, std::set<std::string>& out);

// predicate name -> arity; throws std::runtime_error on an arity clash
void collect_signatures(const FormulaPtr& f, std::map<std::string, std::size_t>& arity);

using Substitution = std::map<std::string, std::string>;  // object variable -> constant

FormulaPtr substitute(const FormulaPtr& f, const Substitution& theta);

}  // namespace plover
