#include "plover/oracle.hpp"

#include <algorithm>
#include <bit>

namespace plover::oracle {

SubsetSatTable::SubsetSatTable(TheoryContext& ctx, FormulaPtr alpha, std::size_t cap)
    : ctx_(ctx) {
  if (ctx.theory.defaults.size() > cap)
    throw OracleCapError("theory has " + std::to_string(ctx.theory.defaults.size()) +
                         " defaults, exceeding the oracle cap of " + std::to_string(cap) +
                         " (2^|D| subsets would be enumerated)");
  if (ctx.theory.defaults.size() >= 63)
    throw OracleCapError("subset masks need |D| < 63");
  base_system_ = ctx.theory.strict;
  base_system_.push_back(evidence_constraint(std::move(alpha)));
}

bool SubsetSatTable::evidence_satisfiable() {
  if (!evidence_sat_)
    evidence_sat_ = satisfiable(base_system_, ctx_.space, ctx_.cache).satisfiable;
  return *evidence_sat_;
}

bool SubsetSatTable::sat(std::uint64_t mask) {
  auto it = memo_.find(mask);
  if (it != memo_.end()) return it->second;
  if (!evidence_satisfiable()) return memo_.emplace(mask, false).first->second;
  // a known-unsatisfiable subset makes every superset unsatisfiable
  for (std::size_t b = 0; b < default_count(); ++b) {
    if (!((mask >> b) & 1)) continue;
    auto sub = memo_.find(mask & ~(std::uint64_t{1} << b));
    if (sub != memo_.end() && !sub->second) return memo_.emplace(mask, false).first->second;
  }
  std::vector<ConditionalConstraint> cs = base_system_;
  for (std::size_t b = 0; b < default_count(); ++b)
    if ((mask >> b) & 1) cs.push_back(ctx_.theory.defaults[b]);
  SatResult r = satisfiable(cs, ctx_.space, ctx_.cache);
  if (r.satisfiable) witnesses_.emplace(mask, std::move(*r.witness));
  return memo_.emplace(mask, r.satisfiable).first->second;
}

const WitnessDistribution& SubsetSatTable::witness(std::uint64_t mask) {
  if (!sat(mask)) throw std::logic_error("no witness for an unsatisfiable subset");
  return witnesses_.at(mask);
}

namespace {

bool level_subset_of(std::uint64_t mask, const std::vector<std::size_t>& level) {
  for (std::size_t i : level)
    if (!((mask >> i) & 1)) return false;
  return true;
}

std::size_t level_overlap(std::uint64_t mask, const std::vector<std::size_t>& level) {
  std::size_t n = 0;
  for (std::size_t i : level)
    if ((mask >> i) & 1) ++n;
  return n;
}

}  // namespace

bool z_preferable(std::uint64_t g, std::uint64_t h, const ZPartition& zp) {
  bool above_full_in_both = true;
  for (std::size_t j = zp.level_count(); j-- > 0;) {
    const bool gf = level_subset_of(g, zp.levels[j]);
    const bool hf = level_subset_of(h, zp.levels[j]);
    if (above_full_in_both && gf && !hf) return true;
    above_full_in_both = above_full_in_both && gf && hf;
  }
  return false;
}

bool lex_preferable(std::uint64_t g, std::uint64_t h, const ZPartition& zp) {
  for (std::size_t j = zp.level_count(); j-- > 0;) {
    const std::size_t cg = level_overlap(g, zp.levels[j]);
    const std::size_t ch = level_overlap(h, zp.levels[j]);
    if (cg != ch) return cg > ch;
  }
  return false;
}

MinimalFamily minimal_sets_bruteforce(SubsetSatTable& table, Semantics s) {
  if (s != Semantics::Z && s != Semantics::Lex)
    throw std::logic_error("minimal sets are defined for z and lex only");
  MinimalFamily family;
  if (!table.evidence_satisfiable()) return family;
  const ZPartition& zp = table.context().partition_or_throw();
  const std::size_t n = table.default_count();
  const std::uint64_t total = std::uint64_t{1} << n;

  std::vector<std::uint64_t> satisfiable_masks;
  for (std::size_t card = 0; card <= n; ++card) {
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != card) continue;
      if (table.sat(mask)) satisfiable_masks.push_back(mask);
    }
  }

  auto preferable = s == Semantics::Z ? z_preferable : lex_preferable;
  for (std::uint64_t h : satisfiable_masks) {
    bool minimal = true;
    for (std::uint64_t g : satisfiable_masks) {
      if (g != h && preferable(g, h, zp)) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    std::vector<std::size_t> set;
    for (std::size_t b = 0; b < n; ++b)
      if ((h >> b) & 1) set.push_back(b);
    family.sets.push_back(std::move(set));
    family.witnesses.push_back(table.witness(h));
  }
  return family;
}

MinimalFamily minimal_sets_bruteforce(TheoryContext& ctx, const FormulaPtr& alpha, Semantics s,
                                      std::size_t cap) {
  SubsetSatTable table(ctx, alpha, cap);
  return minimal_sets_bruteforce(table, s);
}

Interval tight_consequence_oracle(SubsetSatTable& table, const FormulaPtr& beta, Semantics s) {
  if (!table.evidence_satisfiable()) return Interval::empty();
  MinimalFamily family = minimal_sets_bruteforce(table, s);
  TheoryContext& ctx = table.context();
  Interval acc = Interval::empty();
  for (const auto& set : family.sets) {
    // only ratlp and the logical layer are shared with the staged algorithms
    std::vector<ConditionalConstraint> cs = table.base_system();
    for (std::size_t i : set) cs.push_back(ctx.theory.defaults[i]);
    Interval iv = tight_0_consequence(cs, beta, ClassicalFormula::top(), ctx.space, ctx.cache);
    if (iv.is_empty()) continue;
    if (acc.is_empty())
      acc = iv;
    else
      acc = {std::min(acc.lower, iv.lower), std::max(acc.upper, iv.upper)};
  }
  return acc;
}

Interval tight_consequence_oracle(TheoryContext& ctx, const FormulaPtr& beta,
                                  const FormulaPtr& alpha, Semantics s, std::size_t cap) {
  SubsetSatTable table(ctx, alpha, cap);
  return tight_consequence_oracle(table, beta, s);
}

namespace {

std::size_t draw(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

FormulaPtr random_literal(std::mt19937_64& rng, std::size_t atom_count) {
  FormulaPtr a = ClassicalFormula::atom(std::string(1, static_cast<char>('a' + draw(rng, atom_count))));
  return draw(rng, 2) ? a : ClassicalFormula::negation(a);
}

}  // namespace

FormulaPtr random_ground_formula(std::mt19937_64& rng, std::size_t atom_count) {
  switch (draw(rng, 10)) {
    case 0:
    case 1:
    case 2:
    case 3:
    case 4:
      return random_literal(rng, atom_count);
    case 5:
    case 6:
    case 7:
      return ClassicalFormula::conjunction(random_literal(rng, atom_count),
                                           random_literal(rng, atom_count));
    case 8:
      return ClassicalFormula::negation(ClassicalFormula::conjunction(
          random_literal(rng, atom_count), random_literal(rng, atom_count)));
    default:
      return ClassicalFormula::top();
  }
}

Program random_program(std::uint64_t seed, const RandomProgramParams& params) {
  std::mt19937_64 rng(seed);
  Program p;
  std::set<std::string> seen;
  auto push = [&](ConditionalConstraint c) {
    if (seen.insert(render(c)).second) p.constraints.push_back(std::move(c));
  };

  for (std::size_t i = 0; i < params.classical_count; ++i) {
    // consequent keeps at least one atom so the base is never empty
    FormulaPtr psi = random_literal(rng, params.atom_count);
    FormulaPtr phi = random_ground_formula(rng, params.atom_count);
    const bool positive = draw(rng, 2) == 0;
    push({psi, phi, positive ? 1 : 0, positive ? 1 : 0});
  }
  for (std::size_t i = 0; i < params.default_count; ++i) {
    FormulaPtr psi = random_literal(rng, params.atom_count);
    FormulaPtr phi = random_ground_formula(rng, params.atom_count);
    const unsigned g = params.granularity;
    // purely probabilistic: l < 1 and u > 0 with l <= u (swap preserves both:
    // the pools are [0, 1) and (0, 1], and a swap only fires when l > u)
    Rational lower = make_rational(static_cast<long>(draw(rng, g)), g);
    Rational upper = make_rational(static_cast<long>(1 + draw(rng, g)), g);
    if (lower > upper) std::swap(lower, upper);
    push({psi, phi, std::move(lower), std::move(upper)});
  }
  return p;
}

}  // namespace plover::oracle
