#include "plover/logical.hpp"

namespace plover {

std::string to_string(const Interval& iv) {
  if (iv.is_empty() && iv.lower == 1 && iv.upper == 0) return "(1, 0) empty";
  return "[" + to_string(iv.lower) + ", " + to_string(iv.upper) + "]";
}

std::vector<ratlp::LinRow> build_rows(std::span<const ConditionalConstraint> cs,
                                      const worlds::WorldSpace& space, worlds::SatCache& cache) {
  std::vector<ratlp::LinRow> rows;
  rows.reserve(cs.size() * 2);
  for (const auto& c : cs) {
    const worlds::WorldSet& phi = cache.sats(space, c.antecedent);
    const worlds::WorldSet both =
        cache.sats(space, c.consequent).intersect(phi);  // psi & phi worlds
    ratlp::LinRow lo, hi;
    lo.rel = ratlp::Relation::Ge;
    lo.rhs = 0;
    hi.rel = ratlp::Relation::Le;
    hi.rhs = 0;
    const Rational lo_in = 1 - c.lower, lo_out = -c.lower;
    const Rational hi_in = 1 - c.upper, hi_out = -c.upper;
    phi.for_each([&](worlds::WorldIndex w) {
      const bool in_both = both.test(w);
      const Rational& cl = in_both ? lo_in : lo_out;
      const Rational& cu = in_both ? hi_in : hi_out;
      if (cl != 0) lo.coeffs.emplace_back(w, cl);
      if (cu != 0) hi.coeffs.emplace_back(w, cu);
    });
    rows.push_back(std::move(lo));
    rows.push_back(std::move(hi));
  }
  return rows;
}

ratlp::LinRow sum_row(const worlds::WorldSet& set, const Rational& rhs) {
  ratlp::LinRow row;
  row.rel = ratlp::Relation::Eq;
  row.rhs = rhs;
  set.for_each([&](worlds::WorldIndex w) { row.coeffs.emplace_back(w, Rational(1)); });
  return row;
}

namespace {

WitnessDistribution normalized(const ratlp::Witness& w) {
  Rational total = 0;
  for (const auto& [idx, q] : w) total += q;
  WitnessDistribution dist;
  if (total == 0) return dist;
  for (const auto& [idx, q] : w)
    if (q != 0) dist[idx] = q / total;
  return dist;
}

}  // namespace

SatResult satisfiable(std::span<const ConditionalConstraint> cs, const worlds::WorldSpace& space,
                      worlds::SatCache& cache, std::span<const ratlp::LinRow> extra) {
  ratlp::LinearSystem sys;
  sys.var_count = space.world_count();
  sys.rows = build_rows(cs, space, cache);
  sys.rows.push_back(sum_row(worlds::WorldSet(space.world_count(), true), 1));
  sys.rows.insert(sys.rows.end(), extra.begin(), extra.end());
  ratlp::Outcome out = ratlp::feasible(sys);
  if (out.kind == ratlp::OutcomeKind::Infeasible) return {false, std::nullopt};
  return {true, WitnessDistribution(out.witness.begin(), out.witness.end())};
}

namespace {

TightResult tight_core(std::span<const ConditionalConstraint> cs, const worlds::WorldSet& norm_set,
                       const worlds::WorldSet& obj_set, const worlds::WorldSpace& space,
                       worlds::SatCache& cache, const std::vector<ratlp::LinRow>& extra,
                       bool want_witnesses) {
  ratlp::LinearSystem sys;
  sys.var_count = space.world_count();
  sys.rows = build_rows(cs, space, cache);
  sys.rows.push_back(sum_row(norm_set, 1));
  sys.rows.insert(sys.rows.end(), extra.begin(), extra.end());

  ratlp::SparseVec objective;
  obj_set.for_each([&](worlds::WorldIndex w) { objective.emplace_back(w, Rational(1)); });

  ratlp::Outcome lo = ratlp::optimize(sys, objective, ratlp::Sense::Minimize);
  if (lo.kind == ratlp::OutcomeKind::Infeasible) return {Interval::empty(), {}, {}};
  ratlp::Outcome hi = ratlp::optimize(sys, objective, ratlp::Sense::Maximize);

  TightResult res;
  res.interval = {lo.value, hi.value};
  if (want_witnesses) {
    res.lower_witness = normalized(lo.witness);
    res.upper_witness = normalized(hi.witness);
  }
  return res;
}

}  // namespace

TightResult tight_0_consequence_w(std::span<const ConditionalConstraint> cs,
                                  const FormulaPtr& beta, const FormulaPtr& alpha,
                                  const worlds::WorldSpace& space, worlds::SatCache& cache) {
  const worlds::WorldSet& alpha_set = cache.sats(space, alpha);
  const worlds::WorldSet obj = cache.sats(space, beta).intersect(alpha_set);
  return tight_core(cs, alpha_set, obj, space, cache, {}, true);
}

Interval tight_0_consequence(std::span<const ConditionalConstraint> cs, const FormulaPtr& beta,
                             const FormulaPtr& alpha, const worlds::WorldSpace& space,
                             worlds::SatCache& cache) {
  const worlds::WorldSet& alpha_set = cache.sats(space, alpha);
  const worlds::WorldSet obj = cache.sats(space, beta).intersect(alpha_set);
  return tight_core(cs, alpha_set, obj, space, cache, {}, false).interval;
}

TightResult tight_1_consequence_w(std::span<const ConditionalConstraint> cs,
                                  const FormulaPtr& beta, const FormulaPtr& alpha,
                                  const worlds::WorldSpace& space, worlds::SatCache& cache) {
  const worlds::WorldSet all(space.world_count(), true);
  const worlds::WorldSet& alpha_set = cache.sats(space, alpha);
  std::vector<ratlp::LinRow> extra;
  extra.push_back(sum_row(alpha_set.complement(), 0));  // Pr(alpha) = 1
  return tight_core(cs, all, cache.sats(space, beta), space, cache, extra, true);
}

Interval tight_1_consequence(std::span<const ConditionalConstraint> cs, const FormulaPtr& beta,
                             const FormulaPtr& alpha, const worlds::WorldSpace& space,
                             worlds::SatCache& cache) {
  const worlds::WorldSet all(space.world_count(), true);
  const worlds::WorldSet& alpha_set = cache.sats(space, alpha);
  std::vector<ratlp::LinRow> extra;
  extra.push_back(sum_row(alpha_set.complement(), 0));
  return tight_core(cs, all, cache.sats(space, beta), space, cache, extra, false).interval;
}

}  // namespace plover
