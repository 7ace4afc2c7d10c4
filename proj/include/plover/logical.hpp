#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plover/program.hpp"
#include "plover/ratlp.hpp"
#include "plover/worlds.hpp"

namespace plover {

// Probability interval. The designated pair (1, 0) is the empty interval:
// the conventional answer when no relevant model exists. It counts as
// contained in every interval (vacuous quantification over no models).
struct Interval {
  Rational lower;
  Rational upper;

  static Interval empty() { return {1, 0}; }
  bool is_empty() const { return lower > upper; }

  // inner subseteq this
  bool contains(const Interval& inner) const {
    if (inner.is_empty()) return true;
    if (is_empty()) return false;
    return lower <= inner.lower && inner.upper <= upper;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& iv);  // "[19/20, 1]" / "(1, 0) empty"

// Probability function over worlds: entries >= 0 and sum to 1; zeros omitted.
using WitnessDistribution = std::map<worlds::WorldIndex, Rational>;

// Per constraint (psi|phi)[l,u], two homogeneous rows over world weights y:
//   sum_{I |= psi & phi} y_I - l * sum_{I |= phi} y_I >= 0
//   sum_{I |= psi & phi} y_I - u * sum_{I |= phi} y_I <= 0
// For nonnegative y these hold iff Pr(phi) = 0 or Pr(psi|phi) in [l,u].
std::vector<ratlp::LinRow> build_rows(std::span<const ConditionalConstraint> cs,
                                      const worlds::WorldSpace& space, worlds::SatCache& cache);

// A single equality row "sum over the set = rhs".
ratlp::LinRow sum_row(const worlds::WorldSet& set, const Rational& rhs);

struct SatResult {
  bool satisfiable = false;
  std::optional<WitnessDistribution> witness;
};

// Feasibility of build_rows(cs) + (sum of all weights = 1) + extra rows.
SatResult satisfiable(std::span<const ConditionalConstraint> cs, const worlds::WorldSpace& space,
                      worlds::SatCache& cache, std::span<const ratlp::LinRow> extra = {});

struct TightResult {
  Interval interval = Interval::empty();
  std::optional<WitnessDistribution> lower_witness;  // attains interval.lower
  std::optional<WitnessDistribution> upper_witness;  // attains interval.upper
};

// Tightest [l,u] with cs |= (beta|alpha)[l,u] under conditioning semantics:
// min/max of Pr(beta & alpha) over { build_rows(cs), sum_{I |= alpha} y = 1,
// y >= 0 }. The constraint rows are homogeneous, so normalizing on alpha
// instead of on the total mass is an exact change of scale; it turns the
// inf/sup over models with Pr(alpha) > 0 into a plain LP whose optimum is
// attained. Empty interval when no model gives alpha positive probability.
Interval tight_0_consequence(std::span<const ConditionalConstraint> cs, const FormulaPtr& beta,
                             const FormulaPtr& alpha, const worlds::WorldSpace& space,
                             worlds::SatCache& cache);
TightResult tight_0_consequence_w(std::span<const ConditionalConstraint> cs,
                                  const FormulaPtr& beta, const FormulaPtr& alpha,
                                  const worlds::WorldSpace& space, worlds::SatCache& cache);

// Tightest [l,u] for Pr(beta) over models of cs with Pr(alpha) = 1
// (constraining semantics). Empty interval when no such model exists.
Interval tight_1_consequence(std::span<const ConditionalConstraint> cs, const FormulaPtr& beta,
                             const FormulaPtr& alpha, const worlds::WorldSpace& space,
                             worlds::SatCache& cache);
TightResult tight_1_consequence_w(std::span<const ConditionalConstraint> cs,
                                  const FormulaPtr& beta, const FormulaPtr& alpha,
                                  const worlds::WorldSpace& space, worlds::SatCache& cache);

}  // namespace plover
