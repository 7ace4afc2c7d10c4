#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plover/program.hpp"

namespace plover {

struct GroundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using SignatureMap = std::map<std::string, std::size_t>;  // predicate -> arity

// Ordered atom universe; positions index the bits of a world.
struct HerbrandBase {
  std::vector<GroundAtom> atoms;  // sorted by predicate, then argument tuple
  std::map<GroundAtom, std::size_t> index;

  std::size_t size() const { return atoms.size(); }
  std::size_t position(const GroundAtom& a) const;
};

// T(P) = (S(P), D(P)): classical vs purely probabilistic members of ground(P).
struct GroundTheory {
  std::vector<ConditionalConstraint> strict;
  std::vector<ConditionalConstraint> defaults;
};

// All constants occurring in p and q. Throws when an object variable occurs
// anywhere but no constant exists to ground it with.
std::set<std::string> herbrand_universe(const Program& p, const Query* q = nullptr);

// Arity per predicate across the program/query pair; throws on a clash.
SignatureMap signatures(const Program& p, const Query* q = nullptr);

// Every member instantiated by every total substitution of its object
// variables; structural duplicates dropped, first occurrence kept.
std::vector<ConditionalConstraint> ground_program(const Program& p,
                                                  const std::set<std::string>& universe);

GroundTheory split_theory(const std::vector<ConditionalConstraint>& ground_constraints);

// All total groundings of q's object variables, in deterministic order
// (variables sorted by name, constants in sorted order).
std::vector<std::pair<Substitution, Query>> ground_query_instances(
    const Query& q, const std::set<std::string>& universe);

// restrict_to_occurring on (the default): only atoms of the ground
// constraints and ground queries. Off: all atoms over signatures x universe.
// Throws on an empty base or when the atom count exceeds atom_cap.
HerbrandBase herbrand_base(const SignatureMap& sigs, const std::set<std::string>& universe,
                           bool restrict_to_occurring,
                           const std::vector<ConditionalConstraint>& ground_constraints,
                           const std::vector<Query>& ground_queries, std::size_t atom_cap);

}  // namespace plover
