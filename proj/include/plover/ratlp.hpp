#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "plover/rational.hpp"

namespace plover::ratlp {

enum class Relation { Ge, Le, Eq };

struct LinRow {
  std::vector<std::pair<std::uint64_t, Rational>> coeffs;  // sparse, sorted by index
  Relation rel = Relation::Eq;
  Rational rhs;
};

// Rows over variables 0..var_count-1; every variable is implicitly >= 0.
struct LinearSystem {
  std::vector<LinRow> rows;
  std::uint64_t var_count = 0;
};

using SparseVec = std::vector<std::pair<std::uint64_t, Rational>>;
using Witness = std::map<std::uint64_t, Rational>;

enum class OutcomeKind { Infeasible, Feasible, Optimal };

struct Outcome {
  OutcomeKind kind = OutcomeKind::Infeasible;
  Rational value;   // Optimal only
  Witness witness;  // Feasible and Optimal; entries are >= 0, zeros omitted
};

// An unbounded objective signals a caller bug (objectives here are sub-sums
// of a normalized mass), so it is reported as a logic error, not an Outcome.
struct UnboundedError : std::logic_error {
  using std::logic_error::logic_error;
};

enum class Sense { Minimize, Maximize };

// Two-phase dense simplex with Bland's anti-cycling rule, exact rational
// arithmetic throughout, deterministic given row order. Duplicate columns
// (same coefficients in every row and in the objective) are merged before
// pivoting and the witness is reported on the lowest index of each class.
Outcome feasible(const LinearSystem& sys);
Outcome optimize(const LinearSystem& sys, const SparseVec& objective, Sense sense);

// Exact re-substitution of a witness into every row; missing entries are 0.
bool check_witness(const LinearSystem& sys, const Witness& w);

}  // namespace plover::ratlp
