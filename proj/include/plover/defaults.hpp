#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plover/logical.hpp"

namespace plover {

struct InconsistentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t max_atoms = 20;  // |HB| cap; 2^n worlds drive the LP size
  std::size_t oracle_cap = 12; // |D| cap for brute-force subset enumeration
  bool restrict_base = true;   // base = atoms occurring in ground(P) + query
};

enum class Semantics { Zero, One, Z, Lex };

std::string to_string(Semantics s);
std::optional<Semantics> semantics_from_string(const std::string& text);

// Ordered toleration levels D_0..D_k of the ground defaults. Levels hold
// indices into GroundTheory::defaults; rank[i] is the level of default i.
// The ranking z and the probability ranking kappa^z are implicit here.
struct ZPartition {
  std::vector<std::vector<std::size_t>> levels;
  std::vector<std::size_t> rank;

  std::size_t level_count() const { return levels.size(); }
  std::vector<std::vector<ConditionalConstraint>> materialize(const GroundTheory& t) const;
};

// One program's ground theory, world space, satisfying-set memoization and
// z-partition. Immutable after construction apart from the memo; build one
// context per query run and share it read-only.
struct TheoryContext {
  GroundTheory theory;
  worlds::WorldSpace space;
  worlds::SatCache cache;
  std::optional<ZPartition> partition;  // nullopt = inconsistent

  bool consistent() const { return partition.has_value(); }
  const ZPartition& partition_or_throw() const;
};

// Grounds p over the constants of p and the (already ground) queries,
// splits the theory, restricts the base, and computes the z-partition.
TheoryContext make_context(const Program& p, const std::vector<Query>& ground_queries,
                           const RunConfig& cfg = {});

// (alpha | true)[1, 1]
ConditionalConstraint evidence_constraint(FormulaPtr alpha);

// D tolerates c under S iff S + D has a model verifying c, i.e. one with
// Pr(antecedent of c) = 1 that satisfies every constraint including c.
bool tolerates(const ConditionalConstraint& c, std::span<const ConditionalConstraint> within,
               std::span<const ConditionalConstraint> strict, const worlds::WorldSpace& space,
               worlds::SatCache& cache);

// Iterated toleration: repeatedly extract the tolerated subset of the
// remainder. nullopt when a round extracts nothing (inconsistent theory);
// an empty D yields the empty partition.
std::optional<ZPartition> z_partition(const GroundTheory& theory, const worlds::WorldSpace& space,
                                      worlds::SatCache& cache);

bool is_consistent(const Program& p, const RunConfig& cfg = {});

// Staged z-computation: grow R = S + evidence by whole levels from the top
// while satisfiable, then take the tight bounds of Pr(beta) over R.
struct ZComputation {
  Interval interval = Interval::empty();
  bool evidence_satisfiable = false;
  std::size_t threshold = 0;  // j*: lowest level added; level_count() when none
  TightResult tight;          // endpoint witnesses when requested
};
ZComputation tight_z_consequence(TheoryContext& ctx, const FormulaPtr& beta,
                                 const FormulaPtr& alpha, bool want_witnesses = false);

// Staged lex-computation: per level keep every union of maximal cardinality
// that stays satisfiable with R, then aggregate tight bounds over the family.
struct LexComputation {
  Interval interval = Interval::empty();
  bool evidence_satisfiable = false;
  std::vector<std::size_t> counts;               // kept cardinality per level
  std::vector<std::vector<std::size_t>> family;  // default-index subsets, sorted
  TightResult tight;
};
LexComputation tight_lex_consequence(TheoryContext& ctx, const FormulaPtr& beta,
                                     const FormulaPtr& alpha, bool want_witnesses = false);

// Tight interval for ground (beta|alpha) under any of the four semantics.
Interval tight_ground(TheoryContext& ctx, const FormulaPtr& beta, const FormulaPtr& alpha,
                      Semantics s);
TightResult tight_ground_w(TheoryContext& ctx, const FormulaPtr& beta, const FormulaPtr& alpha,
                           Semantics s);

// Ground constraint c follows under s iff the tight interval is inside
// [c.lower, c.upper]; the empty interval counts as inside everything.
bool s_consequence_ground(TheoryContext& ctx, const ConditionalConstraint& c, Semantics s);

// Decides entailment of the negated classical constraint ~(eps'|eps)[1,1]
// (true in Pr iff Pr(eps) > 0 and Pr(eps'|eps) != 1). A minimal model fails
// it exactly when it gives eps & ~eps' probability zero, so this holds iff
// every minimal-model system is infeasible with that mass pinned to zero.
bool entails_negated_classical(TheoryContext& ctx, const FormulaPtr& eps,
                               const FormulaPtr& eps_prime, Semantics s);

// Tight bounds under evidence eps_1 v ... v eps_m: run the staged
// computation per branch, keep the branches whose preference value is
// globally best (minimal z threshold / lexicographically maximal counts),
// and aggregate their intervals. Branches with unsatisfiable R drop out;
// if all drop out the result is empty.
Interval tight_disjunctive_evidence(TheoryContext& ctx, std::span<const FormulaPtr> evidences,
                                    const FormulaPtr& beta, Semantics s);

// Program-level operations; non-ground inputs aggregate over all ground
// instances (conjunction for entailment, inf/sup for tight bounds, empty
// instances skipped unless every instance is empty).
bool s_consequence(const Program& p, const ConditionalConstraint& c, Semantics s,
                   const RunConfig& cfg = {});
Interval tight_s_consequence_nonground(const Program& p, const FormulaPtr& psi,
                                       const FormulaPtr& phi, Semantics s,
                                       const RunConfig& cfg = {});

struct AnswerRow {
  Substitution theta;
  Interval tight;
  bool holds = false;  // numeric form: containment verdict for this instance
  TightResult detail;  // endpoint witnesses when requested
};

struct Answer {
  bool numeric = false;
  bool yes = false;  // numeric form: some instance holds
  std::vector<AnswerRow> rows;

  std::vector<Substitution> yes_substitutions() const;
};

// Grounding plus evaluation context for one query; reusable across
// semantics, and the context's world space renders witness worlds.
struct PreparedQuery {
  Query query;
  std::vector<std::pair<Substitution, Query>> instances;
  TheoryContext context;
};

PreparedQuery prepare_query(const Program& p, const Query& q, const RunConfig& cfg = {});
Answer answer_prepared(PreparedQuery& pq, Semantics s, bool want_witnesses = false);

Answer answer_query(const Program& p, const Query& q, Semantics s, const RunConfig& cfg = {},
                    bool want_witnesses = false);

}  // namespace plover
