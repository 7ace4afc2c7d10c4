#include "plover/formula.hpp"

#include <stdexcept>

namespace plover {

ObjectTerm constant(std::string name) { return {TermKind::Constant, std::move(name)}; }
ObjectTerm variable(std::string name) { return {TermKind::Variable, std::move(name)}; }

FormulaPtr ClassicalFormula::bottom() {
  static const FormulaPtr instance = [] {
    std::shared_ptr<ClassicalFormula> n(new ClassicalFormula());
    n->kind_ = FormulaKind::Bottom;
    return n;
  }();
  return instance;
}

FormulaPtr ClassicalFormula::top() {
  static const FormulaPtr instance = [] {
    std::shared_ptr<ClassicalFormula> n(new ClassicalFormula());
    n->kind_ = FormulaKind::Top;
    return n;
  }();
  return instance;
}

FormulaPtr ClassicalFormula::atom(std::string predicate, std::vector<ObjectTerm> args) {
  std::shared_ptr<ClassicalFormula> n(new ClassicalFormula());
  n->kind_ = FormulaKind::Atom;
  n->predicate_ = std::move(predicate);
  n->args_ = std::move(args);
  return n;
}

FormulaPtr ClassicalFormula::negation(FormulaPtr f) {
  std::shared_ptr<ClassicalFormula> n(new ClassicalFormula());
  n->kind_ = FormulaKind::Not;
  n->lhs_ = std::move(f);
  return n;
}

FormulaPtr ClassicalFormula::conjunction(FormulaPtr lhs, FormulaPtr rhs) {
  std::shared_ptr<ClassicalFormula> n(new ClassicalFormula());
  n->kind_ = FormulaKind::And;
  n->lhs_ = std::move(lhs);
  n->rhs_ = std::move(rhs);
  return n;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Top:
      return true;
    case FormulaKind::Atom:
      return a->predicate() == b->predicate() && a->args() == b->args();
    case FormulaKind::Not:
      return equal(a->child(), b->child());
    case FormulaKind::And:
      return equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs());
  }
  return false;
}

bool is_ground(const FormulaPtr& f) {
  switch (f->kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Top:
      return true;
    case FormulaKind::Atom:
      for (const auto& t : f->args())
        if (t.kind == TermKind::Variable) return false;
      return true;
    case FormulaKind::Not:
      return is_ground(f->child());
    case FormulaKind::And:
      return is_ground(f->lhs()) && is_ground(f->rhs());
  }
  return true;
}

namespace {

// The parser is left-associative for '&', so a right child that is itself a
// conjunction must keep its parentheses to round-trip structurally.
void render_rec(const FormulaPtr& f, std::string& out) {
  switch (f->kind()) {
    case FormulaKind::Bottom:
      out += "false";
      return;
    case FormulaKind::Top:
      out += "true";
      return;
    case FormulaKind::Atom: {
      out += f->predicate();
      if (!f->args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f->args().size(); ++i) {
          if (i) out += ',';
          out += f->args()[i].name;
        }
        out += ')';
      }
      return;
    }
    case FormulaKind::Not: {
      out += '~';
      const bool parens = f->child()->kind() == FormulaKind::And;
      if (parens) out += '(';
      render_rec(f->child(), out);
      if (parens) out += ')';
      return;
    }
    case FormulaKind::And: {
      render_rec(f->lhs(), out);
      out += " & ";
      const bool parens = f->rhs()->kind() == FormulaKind::And;
      if (parens) out += '(';
      render_rec(f->rhs(), out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string render(const FormulaPtr& f) {
  std::string out;
  render_rec(f, out);
  return out;
}

std::string render(const GroundAtom& a) {
  std::string out = a.predicate;
  if (!a.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ',';
      out += a.args[i];
    }
    out += ')';
  }
  return out;
}

void collect_ground_atoms(const FormulaPtr& f, std::set<GroundAtom>& out) {
  switch (f->kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Top:
      return;
    case FormulaKind::Atom: {
      GroundAtom a;
      a.predicate = f->predicate();
      for (const auto& t : f->args()) {
        if (t.kind == TermKind::Variable)
          throw std::runtime_error("collect_ground_atoms: formula is not ground");
        a.args.push_back(t.name);
      }
      out.insert(std::move(a));
      return;
    }
    case FormulaKind::Not:
      collect_ground_atoms(f->child(), out);
      return;
    case FormulaKind::And:
      collect_ground_atoms(f->lhs(), out);
      collect_ground_atoms(f->rhs(), out);
      return;
  }
}

void collect_variables(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Top:
      return;
    case FormulaKind::Atom:
      for (const auto& t : f->args())
        if (t.kind == TermKind::Variable) out.insert(t.name);
      return;
    case FormulaKind::Not:
      collect_variables(f->child(), out);
      return;
    case FormulaKind::And:
      collect_variables(f->lhs(), out);
      collect_variables(f->rhs(), out);
      return;
  }
}

void collect_constants(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Top:
      return;
    case FormulaKind::Atom:
      for (const auto& t : f->args())
        if (t.kind == TermKind::Constant) out.insert(t.name);
      return;
    case FormulaKind::Not:
      collect_constants(f->child(), out);
      return;
    case FormulaKind::And:
      collect_constants(f->lhs(), out);
      collect_constants(f->rhs(), out);
      return;
  }
}

void collect_signatures(const FormulaPtr& f, std::map<std::string, std::size_t>& arity) {
  switch (f->kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Top:
      return;
    case FormulaKind::Atom: {
      auto [it, inserted] = arity.emplace(f->predicate(), f->args().size());
      if (!inserted && it->second != f->args().size())
        throw std::runtime_error("arity mismatch for predicate '" + f->predicate() + "'");
      return;
    }
    case FormulaKind::Not:
      collect_signatures(f->child(), arity);
      return;
    case FormulaKind::And:
      collect_signatures(f->lhs(), arity);
      collect_signatures(f->rhs(), arity);
      return;
  }
}

FormulaPtr substitute(const FormulaPtr& f, const Substitution& theta) {
  switch (f->kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Top:
      return f;
    case FormulaKind::Atom: {
      bool changed = false;
      std::vector<ObjectTerm> args = f->args();
      for (auto& t : args) {
        if (t.kind != TermKind::Variable) continue;
        auto it = theta.find(t.name);
        if (it != theta.end()) {
          t = constant(it->second);
          changed = true;
        }
      }
      return changed ? ClassicalFormula::atom(f->predicate(), std::move(args)) : f;
    }
    case FormulaKind::Not: {
      FormulaPtr c = substitute(f->child(), theta);
      return c.get() == f->child().get() ? f : ClassicalFormula::negation(std::move(c));
    }
    case FormulaKind::And: {
      FormulaPtr l = substitute(f->lhs(), theta);
      FormulaPtr r = substitute(f->rhs(), theta);
      if (l.get() == f->lhs().get() && r.get() == f->rhs().get()) return f;
      return ClassicalFormula::conjunction(std::move(l), std::move(r));
    }
  }
  return f;
}

}  // namespace plover
