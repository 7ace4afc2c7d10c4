#pragma once

#include <cstdint>
#include <random>

#include "plover/defaults.hpp"

namespace plover::oracle {

struct OracleCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All s-minimal satisfiable default subsets for one piece of evidence,
// each with the distribution witnessing its satisfiability with R.
struct MinimalFamily {
  std::vector<std::vector<std::size_t>> sets;  // sorted default-index subsets
  std::vector<WitnessDistribution> witnesses;  // aligned with sets
};

// Caches satisfiability of R + H over subsets H of the ground defaults,
// where R = S + (alpha|true)[1,1]. Unsatisfiability propagates to supersets,
// so subsets are probed in increasing cardinality. Reusable across both
// semantics and any number of query consequents for the same evidence.
class SubsetSatTable {
 public:
  SubsetSatTable(TheoryContext& ctx, FormulaPtr alpha, std::size_t cap);

  bool evidence_satisfiable();
  bool sat(std::uint64_t mask);
  const WitnessDistribution& witness(std::uint64_t mask);  // pre: sat(mask)
  std::size_t default_count() const { return ctx_.theory.defaults.size(); }
  TheoryContext& context() { return ctx_; }
  const std::vector<ConditionalConstraint>& base_system() const { return base_system_; }

 private:
  TheoryContext& ctx_;
  std::vector<ConditionalConstraint> base_system_;  // S + evidence
  std::map<std::uint64_t, bool> memo_;
  std::map<std::uint64_t, WitnessDistribution> witnesses_;
  std::optional<bool> evidence_sat_;
};

// G z-preferable to H / G lex-preferable to H over default-index masks,
// judged against the z-partition levels.
bool z_preferable(std::uint64_t g, std::uint64_t h, const ZPartition& zp);
bool lex_preferable(std::uint64_t g, std::uint64_t h, const ZPartition& zp);

// Enumerates every subset of the defaults, keeps the satisfiable ones, and
// filters to the s-minimal members by pairwise preference comparison.
// Deliberately independent of the staged z/lex algorithms.
MinimalFamily minimal_sets_bruteforce(SubsetSatTable& table, Semantics s);
MinimalFamily minimal_sets_bruteforce(TheoryContext& ctx, const FormulaPtr& alpha, Semantics s,
                                      std::size_t cap);

// Empty interval when R is unsatisfiable; otherwise min lower / max upper of
// the tight bounds of Pr(beta) over R + H across the minimal family.
Interval tight_consequence_oracle(SubsetSatTable& table, const FormulaPtr& beta, Semantics s);
Interval tight_consequence_oracle(TheoryContext& ctx, const FormulaPtr& beta,
                                  const FormulaPtr& alpha, Semantics s, std::size_t cap);

struct RandomProgramParams {
  std::size_t atom_count = 3;      // 0-ary predicates a, b, c, ...
  std::size_t default_count = 3;
  std::size_t classical_count = 1;
  unsigned granularity = 4;        // bounds drawn from {0, 1/g, ..., 1}
};

// Deterministic per seed: same seed, same program. Callers pair this with
// is_consistent as a pre-filter.
Program random_program(std::uint64_t seed, const RandomProgramParams& params);

// Random ground formula over the same 0-ary atom pool (depth <= 2); used by
// the randomized query and postulate suites.
FormulaPtr random_ground_formula(std::mt19937_64& rng, std::size_t atom_count);

}  // namespace plover::oracle
