#include "plover/ground.hpp"

#include <algorithm>
#include <functional>

namespace plover {

std::size_t HerbrandBase::position(const GroundAtom& a) const {
  auto it = index.find(a);
  if (it == index.end()) throw GroundError("atom " + render(a) + " not in the Herbrand base");
  return it->second;
}

std::set<std::string> herbrand_universe(const Program& p, const Query* q) {
  std::set<std::string> constants, variables;
  for (const auto& c : p.constraints) {
    collect_constants(c.consequent, constants);
    collect_constants(c.antecedent, constants);
    collect_variables(c.consequent, variables);
    collect_variables(c.antecedent, variables);
  }
  if (q != nullptr) {
    collect_constants(q->consequent, constants);
    collect_constants(q->antecedent, constants);
    collect_variables(q->consequent, variables);
    collect_variables(q->antecedent, variables);
  }
  if (!variables.empty() && constants.empty())
    throw GroundError("object variable '" + *variables.begin() +
                      "' occurs but there is no constant to ground it with");
  return constants;
}

SignatureMap signatures(const Program& p, const Query* q) {
  SignatureMap sigs;
  try {
    for (const auto& c : p.constraints) {
      collect_signatures(c.consequent, sigs);
      collect_signatures(c.antecedent, sigs);
    }
    if (q != nullptr) {
      collect_signatures(q->consequent, sigs);
      collect_signatures(q->antecedent, sigs);
    }
  } catch (const std::runtime_error& e) {
    throw GroundError(e.what());
  }
  return sigs;
}

namespace {

// Enumerates total substitutions of `vars` over `universe` in lexicographic
// order of the (sorted) variable vector.
void for_each_substitution(const std::vector<std::string>& vars,
                           const std::vector<std::string>& universe,
                           const std::function<void(const Substitution&)>& fn) {
  Substitution theta;
  std::vector<std::size_t> pick(vars.size(), 0);
  if (vars.empty()) {
    fn(theta);
    return;
  }
  for (;;) {
    for (std::size_t i = 0; i < vars.size(); ++i) theta[vars[i]] = universe[pick[i]];
    fn(theta);
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++pick[i] < universe.size()) break;
      pick[i] = 0;
      if (i == 0) return;
    }
  }
}

}  // namespace

std::vector<ConditionalConstraint> ground_program(const Program& p,
                                                  const std::set<std::string>& universe) {
  const std::vector<std::string> consts(universe.begin(), universe.end());
  std::vector<ConditionalConstraint> out;
  std::set<std::string> seen;
  for (const auto& c : p.constraints) {
    std::set<std::string> vars;
    collect_variables(c.consequent, vars);
    collect_variables(c.antecedent, vars);
    if (vars.empty()) {
      if (seen.insert(render(c)).second) out.push_back(c);
      continue;
    }
    if (consts.empty())
      throw GroundError("cannot ground constraint " + render(c) + ": empty Herbrand universe");
    const std::vector<std::string> var_list(vars.begin(), vars.end());
    for_each_substitution(var_list, consts, [&](const Substitution& theta) {
      ConditionalConstraint inst = substitute(c, theta);
      if (seen.insert(render(inst)).second) out.push_back(std::move(inst));
    });
  }
  return out;
}

GroundTheory split_theory(const std::vector<ConditionalConstraint>& ground_constraints) {
  GroundTheory t;
  for (const auto& c : ground_constraints) {
    if (classify(c) == ConstraintKind::Classical)
      t.strict.push_back(c);
    else
      t.defaults.push_back(c);
  }
  return t;
}

std::vector<std::pair<Substitution, Query>> ground_query_instances(
    const Query& q, const std::set<std::string>& universe) {
  std::set<std::string> vars;
  collect_variables(q.consequent, vars);
  collect_variables(q.antecedent, vars);
  std::vector<std::pair<Substitution, Query>> out;
  if (vars.empty()) {
    out.emplace_back(Substitution{}, q);
    return out;
  }
  if (universe.empty())
    throw GroundError("cannot ground query " + render(q) + ": empty Herbrand universe");
  const std::vector<std::string> consts(universe.begin(), universe.end());
  const std::vector<std::string> var_list(vars.begin(), vars.end());
  for_each_substitution(var_list, consts, [&](const Substitution& theta) {
    Query inst{substitute(q.consequent, theta), substitute(q.antecedent, theta), q.bounds};
    out.emplace_back(theta, std::move(inst));
  });
  return out;
}

HerbrandBase herbrand_base(const SignatureMap& sigs, const std::set<std::string>& universe,
                           bool restrict_to_occurring,
                           const std::vector<ConditionalConstraint>& ground_constraints,
                           const std::vector<Query>& ground_queries, std::size_t atom_cap) {
  std::set<GroundAtom> atoms;
  if (restrict_to_occurring) {
    for (const auto& c : ground_constraints) {
      collect_ground_atoms(c.consequent, atoms);
      collect_ground_atoms(c.antecedent, atoms);
    }
    for (const auto& q : ground_queries) {
      collect_ground_atoms(q.consequent, atoms);
      collect_ground_atoms(q.antecedent, atoms);
    }
  } else {
    const std::vector<std::string> consts(universe.begin(), universe.end());
    for (const auto& [pred, arity] : sigs) {
      if (arity == 0) {
        atoms.insert(GroundAtom{pred, {}});
        continue;
      }
      if (consts.empty()) continue;  // no ground instance of a k-ary predicate
      std::vector<std::size_t> pick(arity, 0);
      for (;;) {
        GroundAtom a{pred, {}};
        for (std::size_t i = 0; i < arity; ++i) a.args.push_back(consts[pick[i]]);
        atoms.insert(std::move(a));
        std::size_t i = arity;
        bool done = true;
        while (i > 0) {
          --i;
          if (++pick[i] < consts.size()) {
            done = false;
            break;
          }
          pick[i] = 0;
        }
        if (done) break;
      }
    }
  }
  if (atoms.empty()) throw GroundError("empty Herbrand base: no ground atoms occur");
  if (atoms.size() > atom_cap)
    throw GroundError("Herbrand base has " + std::to_string(atoms.size()) +
                      " atoms, exceeding the cap of " + std::to_string(atom_cap) +
                      " (2^n worlds); raise --max-atoms if this is intended");
  HerbrandBase base;
  base.atoms.assign(atoms.begin(), atoms.end());  // std::set iterates sorted
  for (std::size_t i = 0; i < base.atoms.size(); ++i) base.index.emplace(base.atoms[i], i);
  return base;
}

}  // namespace plover
