#include "plover/defaults.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace plover {

std::string to_string(Semantics s) {
  switch (s) {
    case Semantics::Zero: return "0";
    case Semantics::One: return "1";
    case Semantics::Z: return "z";
    case Semantics::Lex: return "lex";
  }
  return "?";
}

std::optional<Semantics> semantics_from_string(const std::string& text) {
  if (text == "0") return Semantics::Zero;
  if (text == "1") return Semantics::One;
  if (text == "z") return Semantics::Z;
  if (text == "lex") return Semantics::Lex;
  return std::nullopt;
}

std::vector<std::vector<ConditionalConstraint>> ZPartition::materialize(
    const GroundTheory& t) const {
  std::vector<std::vector<ConditionalConstraint>> out;
  for (const auto& level : levels) {
    std::vector<ConditionalConstraint> cs;
    for (std::size_t i : level) cs.push_back(t.defaults[i]);
    out.push_back(std::move(cs));
  }
  return out;
}

const ZPartition& TheoryContext::partition_or_throw() const {
  if (!partition) throw InconsistentError("program is inconsistent (no z-partition exists)");
  return *partition;
}

ConditionalConstraint evidence_constraint(FormulaPtr alpha) {
  return {std::move(alpha), ClassicalFormula::top(), 1, 1};
}

bool tolerates(const ConditionalConstraint& c, std::span<const ConditionalConstraint> within,
               std::span<const ConditionalConstraint> strict, const worlds::WorldSpace& space,
               worlds::SatCache& cache) {
  std::vector<ConditionalConstraint> all(strict.begin(), strict.end());
  all.insert(all.end(), within.begin(), within.end());
  all.push_back(c);
  std::vector<ratlp::LinRow> extra;
  extra.push_back(sum_row(cache.sats(space, c.antecedent).complement(), 0));  // Pr(phi_c) = 1
  return satisfiable(all, space, cache, extra).satisfiable;
}

std::optional<ZPartition> z_partition(const GroundTheory& theory, const worlds::WorldSpace& space,
                                      worlds::SatCache& cache) {
  ZPartition zp;
  zp.rank.assign(theory.defaults.size(), 0);
  std::vector<std::size_t> remaining(theory.defaults.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

  while (!remaining.empty()) {
    std::vector<ConditionalConstraint> rest;
    for (std::size_t i : remaining) rest.push_back(theory.defaults[i]);
    std::vector<std::size_t> level;
    for (std::size_t i : remaining) {
      if (tolerates(theory.defaults[i], rest, theory.strict, space, cache)) level.push_back(i);
    }
    if (level.empty()) return std::nullopt;
    for (std::size_t i : level) zp.rank[i] = zp.levels.size();
    std::vector<std::size_t> next;
    std::set_difference(remaining.begin(), remaining.end(), level.begin(), level.end(),
                        std::back_inserter(next));
    zp.levels.push_back(std::move(level));
    remaining = std::move(next);
  }
  return zp;
}

namespace {

void collect_query_constants_variables(const Query& q, std::set<std::string>& constants,
                                       std::set<std::string>& variables) {
  collect_constants(q.consequent, constants);
  collect_constants(q.antecedent, constants);
  collect_variables(q.consequent, variables);
  collect_variables(q.antecedent, variables);
}

}  // namespace

TheoryContext make_context(const Program& p, const std::vector<Query>& ground_queries,
                           const RunConfig& cfg) {
  std::set<std::string> constants, variables;
  for (const auto& c : p.constraints) {
    collect_constants(c.consequent, constants);
    collect_constants(c.antecedent, constants);
    collect_variables(c.consequent, variables);
    collect_variables(c.antecedent, variables);
  }
  for (const auto& q : ground_queries) collect_query_constants_variables(q, constants, variables);
  if (!variables.empty() && constants.empty())
    throw GroundError("object variable '" + *variables.begin() +
                      "' occurs but there is no constant to ground it with");

  SignatureMap sigs = signatures(p);
  try {
    for (const auto& q : ground_queries) {
      collect_signatures(q.consequent, sigs);
      collect_signatures(q.antecedent, sigs);
    }
  } catch (const std::runtime_error& e) {
    throw GroundError(e.what());
  }

  std::vector<ConditionalConstraint> gp = ground_program(p, constants);
  HerbrandBase base =
      herbrand_base(sigs, constants, cfg.restrict_base, gp, ground_queries, cfg.max_atoms);

  TheoryContext ctx{split_theory(gp), worlds::WorldSpace::enumerate(std::move(base), cfg.max_atoms),
                    worlds::SatCache{}, std::nullopt};
  ctx.partition = z_partition(ctx.theory, ctx.space, ctx.cache);
  return ctx;
}

bool is_consistent(const Program& p, const RunConfig& cfg) {
  const std::set<std::string> universe = herbrand_universe(p);
  const GroundTheory theory = split_theory(ground_program(p, universe));
  if (theory.defaults.empty()) return true;  // empty partition, no LP needed
  TheoryContext ctx = make_context(p, {}, cfg);
  return ctx.consistent();
}

namespace {

std::vector<ConditionalConstraint> all_ground_constraints(const GroundTheory& t) {
  std::vector<ConditionalConstraint> all = t.strict;
  all.insert(all.end(), t.defaults.begin(), t.defaults.end());
  return all;
}

struct ZStage {
  bool evidence_satisfiable = false;
  std::size_t threshold = 0;
  std::vector<ConditionalConstraint> system;  // S + evidence + added levels
};

ZStage z_stage(TheoryContext& ctx, const FormulaPtr& alpha) {
  const ZPartition& zp = ctx.partition_or_throw();
  ZStage st;
  st.system = ctx.theory.strict;
  st.system.push_back(evidence_constraint(alpha));
  st.threshold = zp.level_count();
  if (!satisfiable(st.system, ctx.space, ctx.cache).satisfiable) return st;
  st.evidence_satisfiable = true;

  for (std::size_t j = zp.level_count(); j-- > 0;) {
    std::vector<ConditionalConstraint> trial = st.system;
    for (std::size_t i : zp.levels[j]) trial.push_back(ctx.theory.defaults[i]);
    if (!satisfiable(trial, ctx.space, ctx.cache).satisfiable) break;
    st.system = std::move(trial);
    st.threshold = j;
  }
  return st;
}

struct LexStage {
  bool evidence_satisfiable = false;
  std::vector<std::size_t> counts;
  std::vector<std::vector<std::size_t>> family;  // sorted index subsets
};

LexStage lex_stage(TheoryContext& ctx, const FormulaPtr& alpha) {
  const ZPartition& zp = ctx.partition_or_throw();
  LexStage st;
  std::vector<ConditionalConstraint> base_system = ctx.theory.strict;
  base_system.push_back(evidence_constraint(alpha));
  if (!satisfiable(base_system, ctx.space, ctx.cache).satisfiable) return st;
  st.evidence_satisfiable = true;
  st.counts.assign(zp.level_count(), 0);

  std::map<std::vector<std::size_t>, bool> sat_memo;
  auto sat_with = [&](const std::vector<std::size_t>& defaults_idx) {
    auto it = sat_memo.find(defaults_idx);
    if (it != sat_memo.end()) return it->second;
    std::vector<ConditionalConstraint> cs = base_system;
    for (std::size_t i : defaults_idx) cs.push_back(ctx.theory.defaults[i]);
    const bool ok = satisfiable(cs, ctx.space, ctx.cache).satisfiable;
    sat_memo.emplace(defaults_idx, ok);
    return ok;
  };

  std::set<std::vector<std::size_t>> family;
  family.insert(std::vector<std::size_t>{});
  for (std::size_t j = zp.level_count(); j-- > 0;) {
    const std::vector<std::size_t>& level = zp.levels[j];
    std::set<std::vector<std::size_t>> next;
    // Decreasing cardinality with early exit: only unions of maximal |G|
    // survive the level, so lower cardinalities never matter after a hit.
    for (std::size_t want = level.size() + 1; want-- > 0;) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << level.size()); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != want) continue;
        std::vector<std::size_t> g;
        for (std::size_t b = 0; b < level.size(); ++b)
          if ((mask >> b) & 1) g.push_back(level[b]);
        for (const auto& h : family) {
          std::vector<std::size_t> merged;
          std::merge(h.begin(), h.end(), g.begin(), g.end(), std::back_inserter(merged));
          if (sat_with(merged)) next.insert(std::move(merged));
        }
      }
      if (!next.empty()) {
        st.counts[j] = want;
        break;
      }
    }
    family = std::move(next);
  }
  st.family.assign(family.begin(), family.end());
  return st;
}

Interval aggregate(const Interval& acc, const Interval& next) {
  if (next.is_empty()) return acc;
  if (acc.is_empty()) return next;
  return {std::min(acc.lower, next.lower), std::max(acc.upper, next.upper)};
}

}  // namespace

ZComputation tight_z_consequence(TheoryContext& ctx, const FormulaPtr& beta,
                                 const FormulaPtr& alpha, bool want_witnesses) {
  ZStage st = z_stage(ctx, alpha);
  ZComputation out;
  out.evidence_satisfiable = st.evidence_satisfiable;
  out.threshold = st.threshold;
  if (!st.evidence_satisfiable) return out;
  if (want_witnesses) {
    out.tight = tight_0_consequence_w(st.system, beta, ClassicalFormula::top(), ctx.space,
                                      ctx.cache);
    out.interval = out.tight.interval;
  } else {
    out.interval =
        tight_0_consequence(st.system, beta, ClassicalFormula::top(), ctx.space, ctx.cache);
  }
  return out;
}

LexComputation tight_lex_consequence(TheoryContext& ctx, const FormulaPtr& beta,
                                     const FormulaPtr& alpha, bool want_witnesses) {
  LexStage st = lex_stage(ctx, alpha);
  LexComputation out;
  out.evidence_satisfiable = st.evidence_satisfiable;
  out.counts = st.counts;
  out.family = st.family;
  if (!st.evidence_satisfiable) return out;

  std::vector<ConditionalConstraint> base_system = ctx.theory.strict;
  base_system.push_back(evidence_constraint(alpha));
  Interval acc = Interval::empty();
  for (const auto& h : st.family) {
    std::vector<ConditionalConstraint> cs = base_system;
    for (std::size_t i : h) cs.push_back(ctx.theory.defaults[i]);
    TightResult r = want_witnesses
                        ? tight_0_consequence_w(cs, beta, ClassicalFormula::top(), ctx.space,
                                                ctx.cache)
                        : TightResult{tight_0_consequence(cs, beta, ClassicalFormula::top(),
                                                          ctx.space, ctx.cache),
                                      {},
                                      {}};
    if (want_witnesses && !r.interval.is_empty()) {
      if (acc.is_empty() || r.interval.lower < acc.lower) out.tight.lower_witness = r.lower_witness;
      if (acc.is_empty() || r.interval.upper > acc.upper) out.tight.upper_witness = r.upper_witness;
    }
    acc = aggregate(acc, r.interval);
  }
  out.interval = acc;
  out.tight.interval = acc;
  return out;
}

Interval tight_ground(TheoryContext& ctx, const FormulaPtr& beta, const FormulaPtr& alpha,
                      Semantics s) {
  switch (s) {
    case Semantics::Zero:
      return tight_0_consequence(all_ground_constraints(ctx.theory), beta, alpha, ctx.space,
                                 ctx.cache);
    case Semantics::One:
      return tight_1_consequence(all_ground_constraints(ctx.theory), beta, alpha, ctx.space,
                                 ctx.cache);
    case Semantics::Z:
      return tight_z_consequence(ctx, beta, alpha).interval;
    case Semantics::Lex:
      return tight_lex_consequence(ctx, beta, alpha).interval;
  }
  return Interval::empty();
}

TightResult tight_ground_w(TheoryContext& ctx, const FormulaPtr& beta, const FormulaPtr& alpha,
                           Semantics s) {
  switch (s) {
    case Semantics::Zero:
      return tight_0_consequence_w(all_ground_constraints(ctx.theory), beta, alpha, ctx.space,
                                   ctx.cache);
    case Semantics::One:
      return tight_1_consequence_w(all_ground_constraints(ctx.theory), beta, alpha, ctx.space,
                                   ctx.cache);
    case Semantics::Z:
      return tight_z_consequence(ctx, beta, alpha, true).tight;
    case Semantics::Lex:
      return tight_lex_consequence(ctx, beta, alpha, true).tight;
  }
  return {};
}

bool s_consequence_ground(TheoryContext& ctx, const ConditionalConstraint& c, Semantics s) {
  const Interval target{c.lower, c.upper};
  return target.contains(tight_ground(ctx, c.consequent, c.antecedent, s));
}

bool entails_negated_classical(TheoryContext& ctx, const FormulaPtr& eps,
                               const FormulaPtr& eps_prime, Semantics s) {
  if (s != Semantics::Z && s != Semantics::Lex)
    throw std::logic_error("entails_negated_classical is defined for z and lex only");
  const FormulaPtr violating =
      ClassicalFormula::conjunction(eps, ClassicalFormula::negation(eps_prime));
  std::vector<ratlp::LinRow> extra;
  extra.push_back(sum_row(ctx.cache.sats(ctx.space, violating), 0));  // Pr(eps & ~eps') = 0

  if (s == Semantics::Z) {
    ZStage st = z_stage(ctx, eps);
    if (!st.evidence_satisfiable) return true;  // no minimal models
    return !satisfiable(st.system, ctx.space, ctx.cache, extra).satisfiable;
  }
  LexStage st = lex_stage(ctx, eps);
  if (!st.evidence_satisfiable) return true;
  std::vector<ConditionalConstraint> base_system = ctx.theory.strict;
  base_system.push_back(evidence_constraint(eps));
  for (const auto& h : st.family) {
    std::vector<ConditionalConstraint> cs = base_system;
    for (std::size_t i : h) cs.push_back(ctx.theory.defaults[i]);
    if (satisfiable(cs, ctx.space, ctx.cache, extra).satisfiable) return false;
  }
  return true;
}

Interval tight_disjunctive_evidence(TheoryContext& ctx, std::span<const FormulaPtr> evidences,
                                    const FormulaPtr& beta, Semantics s) {
  if (s != Semantics::Z && s != Semantics::Lex)
    throw std::logic_error("disjunctive evidence is defined for z and lex only");
  if (evidences.empty()) throw std::logic_error("disjunctive evidence needs at least one branch");

  if (s == Semantics::Z) {
    // z-preference depends only on kappa^z, comparable across branches: keep
    // the branches reaching the globally minimal threshold.
    std::vector<ZStage> stages;
    std::size_t best = ctx.partition_or_throw().level_count() + 1;
    for (const auto& eps : evidences) {
      ZStage st = z_stage(ctx, eps);
      if (st.evidence_satisfiable) best = std::min(best, st.threshold);
      stages.push_back(std::move(st));
    }
    Interval acc = Interval::empty();
    for (const auto& st : stages) {
      if (!st.evidence_satisfiable || st.threshold != best) continue;
      acc = aggregate(acc, tight_0_consequence(st.system, beta, ClassicalFormula::top(), ctx.space,
                                               ctx.cache));
    }
    return acc;
  }

  // lex: keep branches whose per-level satisfied-count vector is
  // lexicographically maximal from the top level.
  std::vector<LexStage> stages;
  for (const auto& eps : evidences) stages.push_back(lex_stage(ctx, eps));
  const std::vector<std::size_t>* best = nullptr;
  auto lex_less = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    for (std::size_t j = a.size(); j-- > 0;) {
      if (a[j] != b[j]) return a[j] < b[j];
    }
    return false;
  };
  for (const auto& st : stages) {
    if (!st.evidence_satisfiable) continue;
    if (best == nullptr || lex_less(*best, st.counts)) best = &st.counts;
  }
  if (best == nullptr) return Interval::empty();
  Interval acc = Interval::empty();
  for (std::size_t b = 0; b < stages.size(); ++b) {
    const LexStage& st = stages[b];
    if (!st.evidence_satisfiable || lex_less(st.counts, *best) || lex_less(*best, st.counts))
      continue;
    std::vector<ConditionalConstraint> base_system = ctx.theory.strict;
    base_system.push_back(evidence_constraint(evidences[b]));
    for (const auto& h : st.family) {
      std::vector<ConditionalConstraint> cs = base_system;
      for (std::size_t i : h) cs.push_back(ctx.theory.defaults[i]);
      acc = aggregate(acc, tight_0_consequence(cs, beta, ClassicalFormula::top(), ctx.space,
                                               ctx.cache));
    }
  }
  return acc;
}

namespace {

Query pseudo_query(FormulaPtr beta, FormulaPtr alpha) {
  Query q;
  q.consequent = std::move(beta);
  q.antecedent = std::move(alpha);
  q.bounds.numeric = false;
  q.bounds.x = "X0";
  q.bounds.y = "Y0";
  return q;
}

void require_consistent_for(Semantics s, const TheoryContext& ctx) {
  if ((s == Semantics::Z || s == Semantics::Lex) && !ctx.consistent())
    throw InconsistentError("program is inconsistent; z- and lex-entailment are undefined");
}

}  // namespace

bool s_consequence(const Program& p, const ConditionalConstraint& c, Semantics s,
                   const RunConfig& cfg) {
  const Query pseudo = pseudo_query(c.consequent, c.antecedent);
  const std::set<std::string> universe = herbrand_universe(p, &pseudo);
  auto instances = ground_query_instances(pseudo, universe);
  std::vector<Query> qs;
  for (const auto& [theta, inst] : instances) qs.push_back(inst);
  TheoryContext ctx = make_context(p, qs, cfg);
  require_consistent_for(s, ctx);
  for (const auto& [theta, inst] : instances) {
    ConditionalConstraint ground_c{inst.consequent, inst.antecedent, c.lower, c.upper};
    if (!s_consequence_ground(ctx, ground_c, s)) return false;
  }
  return true;
}

Interval tight_s_consequence_nonground(const Program& p, const FormulaPtr& psi,
                                       const FormulaPtr& phi, Semantics s, const RunConfig& cfg) {
  const Query pseudo = pseudo_query(psi, phi);
  const std::set<std::string> universe = herbrand_universe(p, &pseudo);
  auto instances = ground_query_instances(pseudo, universe);
  std::vector<Query> qs;
  for (const auto& [theta, inst] : instances) qs.push_back(inst);
  TheoryContext ctx = make_context(p, qs, cfg);
  require_consistent_for(s, ctx);
  Interval acc = Interval::empty();
  for (const auto& [theta, inst] : instances)
    acc = aggregate(acc, tight_ground(ctx, inst.consequent, inst.antecedent, s));
  return acc;
}

std::vector<Substitution> Answer::yes_substitutions() const {
  std::vector<Substitution> out;
  for (const auto& row : rows)
    if (row.holds) out.push_back(row.theta);
  return out;
}

PreparedQuery prepare_query(const Program& p, const Query& q, const RunConfig& cfg) {
  const std::set<std::string> universe = herbrand_universe(p, &q);
  auto instances = ground_query_instances(q, universe);
  std::vector<Query> qs;
  for (const auto& [theta, inst] : instances) qs.push_back(inst);
  return {q, std::move(instances), make_context(p, qs, cfg)};
}

Answer answer_prepared(PreparedQuery& pq, Semantics s, bool want_witnesses) {
  require_consistent_for(s, pq.context);
  Answer ans;
  ans.numeric = pq.query.bounds.numeric;
  for (const auto& [theta, inst] : pq.instances) {
    AnswerRow row;
    row.theta = theta;
    if (want_witnesses) {
      row.detail = tight_ground_w(pq.context, inst.consequent, inst.antecedent, s);
      row.tight = row.detail.interval;
    } else {
      row.tight = tight_ground(pq.context, inst.consequent, inst.antecedent, s);
    }
    if (ans.numeric) {
      const Interval target{pq.query.bounds.lower, pq.query.bounds.upper};
      row.holds = target.contains(row.tight);
      if (row.holds) ans.yes = true;
    }
    ans.rows.push_back(std::move(row));
  }
  return ans;
}

Answer answer_query(const Program& p, const Query& q, Semantics s, const RunConfig& cfg,
                    bool want_witnesses) {
  PreparedQuery pq = prepare_query(p, q, cfg);
  return answer_prepared(pq, s, want_witnesses);
}

}  // namespace plover
