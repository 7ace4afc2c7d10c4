// Acceptance suite: one checked criterion per test case, one PASS/FAIL line
// each, exact rational comparisons throughout.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "plover/builtin_examples.hpp"
#include "plover/oracle.hpp"
#include "plover/parser.hpp"

using namespace plover;
using namespace plover::testing;

namespace {

struct Criterion {
  Criterion(int number, std::string name) : number_(number), name_(std::move(name)) {}

  void expect(bool cond, const std::string& detail) {
    if (!cond) {
      ok_ = false;
      std::cout << "  counterexample: " << detail << "\n";
    }
  }

  void note(const std::string& text) { std::cout << "  note: " << text << "\n"; }

  void finish() {
    std::cout << "[acceptance] criterion " << number_ << " (" << name_
              << "): " << (ok_ ? "PASS" : "FAIL") << std::endl;
    CHECK(ok_);
  }

  bool ok_ = true;
  int number_;
  std::string name_;
};

FormulaPtr atom1(const std::string& pred, const std::string& con) {
  return ClassicalFormula::atom(pred, {constant(con)});
}

// Every bundled-example run must also finish within the one-second budget.
Interval query_interval(const char* program, const char* query, Semantics s,
                        Criterion* c = nullptr) {
  const auto start = std::chrono::steady_clock::now();
  const Answer ans = answer_query(parse_program(program), parse_query(query), s);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  if (c != nullptr)
    c->expect(ms < 1000, std::string(query) + " under " + to_string(s) + " took " +
                             std::to_string(ms) + " ms (budget: 1000 ms)");
  return ans.rows.at(0).tight;
}

Query pseudo(FormulaPtr beta, FormulaPtr alpha) {
  return Query{std::move(beta), std::move(alpha), QueryBounds{false, 0, 0, "L", "U"}};
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return {std::min(a.lower, b.lower), std::max(a.upper, b.upper)};
}

// Deterministic stream of consistent random programs.
struct GeneratedCase {
  Program program;
  std::uint64_t seed;
  oracle::RandomProgramParams params;
};

std::vector<GeneratedCase> consistent_programs(std::size_t count, std::uint64_t first_seed,
                                               std::size_t max_atoms, std::size_t max_defaults) {
  std::vector<GeneratedCase> out;
  std::uint64_t seed = first_seed;
  while (out.size() < count) {
    oracle::RandomProgramParams params;
    params.atom_count = 2 + seed % (max_atoms - 1);
    params.default_count = 1 + (seed / 3) % max_defaults;
    params.classical_count = seed % 3;
    params.granularity = 4;
    Program p = oracle::random_program(seed, params);
    const std::uint64_t used = seed++;
    if (!is_consistent(p)) continue;
    out.push_back({std::move(p), used, params});
  }
  return out;
}

std::string interval_text(const Interval& iv) { return to_string(iv); }

}  // namespace

TEST_CASE("criterion 1: birds-legs tight answers under 0- and 1-entailment") {
  Criterion c(1, "birds-legs exact 0/1 answers");
  using namespace plover::builtin;
  c.expect(query_interval(kBirdsLegs, kLegsQuery, Semantics::Zero, &c) == Interval{0, 1},
           "0-entailment should be [0, 1]");
  c.expect(query_interval(kBirdsLegs, kLegsQuery, Semantics::One, &c) ==
               Interval{make_rational(19, 20), 1},
           "1-entailment should be [19/20, 1]");
  c.finish();
}

TEST_CASE("criterion 2: penguins tight answers under 0- and 1-entailment") {
  Criterion c(2, "penguins exact 0/1 answers incl. empty interval");
  using namespace plover::builtin;
  c.expect(query_interval(kPenguins, kLegsQuery, Semantics::Zero, &c) == Interval{0, 1},
           "0-entailment should be [0, 1]");
  c.expect(query_interval(kPenguins, kLegsQuery, Semantics::One, &c) == Interval::empty(),
           "1-entailment should be the empty interval (1, 0)");
  c.finish();
}

TEST_CASE("criterion 3: magpies tight answers under 0- and 1-entailment") {
  Criterion c(3, "magpies exact 0/1 answers");
  using namespace plover::builtin;
  c.expect(query_interval(kMagpies, kChirpsQuery, Semantics::Zero, &c) ==
               Interval{0, make_rational(99, 100)},
           "0-entailment should be [0, 99/100]");
  c.expect(query_interval(kMagpies, kChirpsQuery, Semantics::One, &c) ==
               Interval{make_rational(7, 10), make_rational(8, 10)},
           "1-entailment should be [7/10, 8/10]");
  c.finish();
}

TEST_CASE("criterion 4: z- and lex-entailment on birds-legs and magpies") {
  Criterion c(4, "inheritance answers under z and lex");
  using namespace plover::builtin;
  for (Semantics s : {Semantics::Z, Semantics::Lex}) {
    c.expect(query_interval(kBirdsLegs, kLegsQuery, s, &c) == Interval{make_rational(19, 20), 1},
             "birds-legs under " + to_string(s) + " should be [19/20, 1]");
    c.expect(query_interval(kMagpies, kChirpsQuery, s, &c) ==
                 Interval{make_rational(7, 10), make_rational(8, 10)},
             "magpies under " + to_string(s) + " should be [7/10, 8/10]");
  }
  c.finish();
}

TEST_CASE("criterion 5: penguins under lex exactly; z equals the brute-force oracle") {
  Criterion c(5, "penguins overriding: lex exact, z agrees with oracle");
  using namespace plover::builtin;
  c.expect(query_interval(kPenguins, kLegsQuery, Semantics::Lex, &c) ==
               Interval{make_rational(19, 20), 1},
           "lex-entailment should be [19/20, 1]");

  const Program p = parse_program(kPenguins);
  const Query q = parse_query(kLegsQuery);
  TheoryContext ctx = make_context(p, {q}, {});
  const Interval engine =
      tight_z_consequence(ctx, atom1("l", "tweety"), atom1("p", "tweety")).interval;
  const Interval orc = oracle::tight_consequence_oracle(ctx, atom1("l", "tweety"),
                                                        atom1("p", "tweety"), Semantics::Z, 12);
  c.expect(engine == orc, "z engine " + interval_text(engine) + " must equal oracle " +
                              interval_text(orc));
  c.note("z-entailment computes " + interval_text(engine) +
         " here (drowning: the evidence conflicts with level 0, so the leg default is not "
         "inherited); lex keeps [19/20, 1]");
  c.finish();
}

TEST_CASE("criterion 6: consistency machinery") {
  Criterion c(6, "penguins z-partition and the inconsistent clash");
  const Program p = parse_program(plover::builtin::kPenguins);
  TheoryContext ctx = make_context(p, {}, {});
  c.expect(ctx.consistent(), "penguins must be consistent");
  if (ctx.consistent()) {
    const auto levels = ctx.partition->materialize(ctx.theory);
    c.expect(levels.size() == 2, "expected two levels");
    if (levels.size() == 2) {
      c.expect(levels[0].size() == 2 &&
                   render(levels[0][0]) == "(l(tweety)|b(tweety))[19/20, 1]" &&
                   render(levels[0][1]) == "(f(tweety)|b(tweety))[9/10, 19/20]",
               "level 0 should hold the two bird defaults");
      c.expect(levels[1].size() == 1 &&
                   render(levels[1][0]) == "(f(tweety)|p(tweety))[0, 1/20]",
               "level 1 should hold the penguin default");
    }
  }
  c.expect(!is_consistent(parse_program(plover::builtin::kClashingDefaults)),
           "clashing defaults must be inconsistent");
  c.finish();
}

TEST_CASE("criterion 7: staged algorithms equal brute force on random programs") {
  Criterion c(7, "oracle equivalence on 500 random consistent programs");
  const auto cases = consistent_programs(500, 1, /*max_atoms=*/6, /*max_defaults=*/6);
  std::size_t checked_queries = 0;
  std::size_t nontrivial = 0;
  for (const auto& gc : cases) {
    std::mt19937_64 qrng(gc.seed * 0x9e3779b97f4a7c15ull + 1);
    std::vector<std::pair<FormulaPtr, FormulaPtr>> pairs;
    std::vector<Query> pseudos;
    for (int k = 0; k < 3; ++k) {
      FormulaPtr beta = oracle::random_ground_formula(qrng, gc.params.atom_count);
      FormulaPtr alpha = oracle::random_ground_formula(qrng, gc.params.atom_count);
      pseudos.push_back(pseudo(beta, alpha));
      pairs.emplace_back(std::move(beta), std::move(alpha));
    }
    TheoryContext ctx = make_context(gc.program, pseudos, {});
    if (!ctx.consistent()) {
      c.expect(false, "seed " + std::to_string(gc.seed) + ": context lost consistency");
      continue;
    }
    for (const auto& [beta, alpha] : pairs) {
      oracle::SubsetSatTable table(ctx, alpha, 12);
      const Interval ez = tight_z_consequence(ctx, beta, alpha).interval;
      const Interval oz = oracle::tight_consequence_oracle(table, beta, Semantics::Z);
      const Interval el = tight_lex_consequence(ctx, beta, alpha).interval;
      const Interval ol = oracle::tight_consequence_oracle(table, beta, Semantics::Lex);
      ++checked_queries;
      if (!ez.is_empty()) ++nontrivial;
      if (ez != oz || el != ol) {
        std::ostringstream detail;
        detail << "seed " << gc.seed << " program:\n" << render(gc.program) << "beta = "
               << render(beta) << ", alpha = " << render(alpha) << "\n  z: engine "
               << interval_text(ez) << " oracle " << interval_text(oz) << "\n  lex: engine "
               << interval_text(el) << " oracle " << interval_text(ol);
        c.expect(false, detail.str());
      }
    }
  }
  c.note(std::to_string(cases.size()) + " programs, " + std::to_string(checked_queries) +
         " queries per semantics, " + std::to_string(nontrivial) +
         " with satisfiable evidence");
  c.finish();
}

TEST_CASE("criterion 8: nonmonotonic postulates hold on random programs") {
  Criterion c(8, "postulate suite on 200 random consistent programs");
  const auto cases = consistent_programs(200, 100000, /*max_atoms=*/5, /*max_defaults=*/4);
  std::size_t applicable = 0;

  for (const auto& gc : cases) {
    // one context whose base covers every program atom plus two fresh ones
    FormulaPtr everything = A(std::string(1, 'a'));
    for (std::size_t i = 1; i < gc.params.atom_count; ++i)
      everything = conj(everything, A(std::string(1, static_cast<char>('a' + i))));
    TheoryContext ctx =
        make_context(gc.program, {pseudo(everything, conj(A("x1"), A("x2")))}, {});
    if (!ctx.consistent()) continue;

    std::mt19937_64 rng(gc.seed * 0x2545f4914f6cdd1dull + 3);
    for (int tuple = 0; tuple < 2; ++tuple) {
      const FormulaPtr eps = oracle::random_ground_formula(rng, gc.params.atom_count);
      const FormulaPtr eps2 = oracle::random_ground_formula(rng, gc.params.atom_count);
      const FormulaPtr phi = oracle::random_ground_formula(rng, gc.params.atom_count);
      const FormulaPtr psi = oracle::random_ground_formula(rng, gc.params.atom_count);
      const FormulaPtr fresh = rng() % 2 ? A("x1") : conj(A("x1"), neg(A("x2")));

      for (Semantics s : {Semantics::Z, Semantics::Lex}) {
        auto fail = [&](const char* postulate, const std::string& extra) {
          std::ostringstream detail;
          detail << postulate << " under " << to_string(s) << ", seed " << gc.seed
                 << "\nprogram:\n"
                 << render(gc.program) << "eps = " << render(eps) << ", eps' = " << render(eps2)
                 << ", phi = " << render(phi) << ", psi = " << render(psi) << "\n  " << extra;
          c.expect(false, detail.str());
        };

        // Ref: (eps|eps)[1,1] always follows
        ++applicable;
        if (!s_consequence_ground(ctx, {eps, eps, 1, 1}, s))
          fail("Ref", "reflexivity violated");

        // RW: a logically valid weakening of an entailed constraint follows
        {
          ++applicable;
          Interval premise = tight_ground(ctx, phi, eps, s);
          if (premise.is_empty()) premise = {0, 1};
          const std::vector<ConditionalConstraint> premise_only{
              {phi, top(), premise.lower, premise.upper}};
          const Interval conclusion =
              tight_0_consequence(premise_only, psi, top(), ctx.space, ctx.cache);
          if (!conclusion.is_empty() &&
              !s_consequence_ground(ctx, {psi, eps, conclusion.lower, conclusion.upper}, s))
            fail("RW", "derived weakening " + interval_text(conclusion) + " not entailed");
        }

        // LLE: logically equivalent evidence gives identical tight bounds
        {
          ++applicable;
          const FormulaPtr variant = tuple % 2 ? neg(neg(eps)) : conj(eps, top());
          const Interval a = tight_ground(ctx, phi, eps, s);
          const Interval b = tight_ground(ctx, phi, variant, s);
          if (!(a == b))
            fail("LLE", "tight " + interval_text(a) + " vs " + interval_text(b) +
                            " for equivalent evidence");
        }

        // Cut and CM need (eps|eps')[1,1] entailed
        if (s_consequence_ground(ctx, {eps, eps2, 1, 1}, s)) {
          ++applicable;
          const Interval conj_tight = tight_ground(ctx, phi, conj(eps, eps2), s);
          const Interval plain_tight = tight_ground(ctx, phi, eps2, s);
          if (!conj_tight.contains(plain_tight))
            fail("Cut", "tight(phi|eps') = " + interval_text(plain_tight) +
                            " outside tight(phi|eps&eps') = " + interval_text(conj_tight));
          ++applicable;
          if (!plain_tight.contains(conj_tight))
            fail("CM", "tight(phi|eps&eps') = " + interval_text(conj_tight) +
                           " outside tight(phi|eps') = " + interval_text(plain_tight));
        }

        // Or: common bounds survive disjunctive evidence
        {
          ++applicable;
          const Interval t1 = tight_ground(ctx, phi, eps, s);
          const Interval t2 = tight_ground(ctx, phi, eps2, s);
          const Interval both = hull(t1, t2);
          const std::vector<FormulaPtr> evs{eps, eps2};
          const Interval disj = tight_disjunctive_evidence(ctx, evs, phi, s);
          if (!both.contains(disj))
            fail("Or", "disjunctive tight " + interval_text(disj) + " outside the premise hull " +
                           interval_text(both));
        }

        // RM: rational monotony unless the negated constraint is entailed
        if (!entails_negated_classical(ctx, eps, eps2, s)) {
          ++applicable;
          const Interval t = tight_ground(ctx, psi, eps, s);
          const Interval tc = tight_ground(ctx, psi, conj(eps, eps2), s);
          if (!t.contains(tc))
            fail("RM", "tight(psi|eps&eps') = " + interval_text(tc) + " outside tight(psi|eps) = " +
                           interval_text(t));
        }

        // Irr: evidence over disjoint atoms cannot change the bounds
        {
          ++applicable;
          const Interval t = tight_ground(ctx, psi, eps, s);
          const Interval ti = tight_ground(ctx, psi, conj(eps, fresh), s);
          if (!t.contains(ti))
            fail("Irr", "tight with irrelevant conjunct " + interval_text(ti) + " outside " +
                            interval_text(t));
        }

        // DI: the program entails each of its own ground members
        {
          std::vector<ConditionalConstraint> all = ctx.theory.strict;
          all.insert(all.end(), ctx.theory.defaults.begin(), ctx.theory.defaults.end());
          if (!all.empty()) {
            ++applicable;
            const auto& member = all[rng() % all.size()];
            const FormulaPtr ev = tuple % 2 ? member.antecedent : neg(neg(member.antecedent));
            if (!s_consequence_ground(ctx, {member.consequent, ev, member.lower, member.upper}, s))
              fail("DI", "own member " + render(member) + " not entailed under equivalent evidence " +
                             render(ev));
          }
        }
      }
    }
  }
  c.note(std::to_string(cases.size()) + " programs, " + std::to_string(applicable) +
         " applicable postulate instances checked");
  c.finish();
}

TEST_CASE("criterion 9: LP exactness and vertex-enumeration certificate") {
  Criterion c(9, "exact witnesses; optimize equals vertex enumeration");
  std::mt19937_64 rng(424242);
  auto draw = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  std::size_t feasible_count = 0, infeasible_count = 0;
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = iter % 10 == 9 ? 10 + rng() % 3  // a few 10..12-var systems
                                         : 2 + rng() % 5;  // mostly 2..6
    ratlp::LinearSystem sys;
    sys.var_count = n;
    const std::size_t row_count = 1 + rng() % (n > 6 ? 2 : 3);
    for (std::size_t i = 0; i < row_count; ++i) {
      ratlp::LinRow r;
      for (std::size_t j = 0; j < n; ++j) {
        const long coeff = draw(-2, 2);
        if (coeff != 0)
          r.coeffs.emplace_back(j, make_rational(coeff, 1 + static_cast<long>(rng() % 2)));
      }
      r.rel = static_cast<ratlp::Relation>(rng() % 3);
      r.rhs = make_rational(draw(-2, 2), 1 + static_cast<long>(rng() % 2));
      sys.rows.push_back(std::move(r));
    }
    ratlp::LinRow cap;
    for (std::size_t j = 0; j < n; ++j) cap.coeffs.emplace_back(j, Rational(1));
    cap.rel = ratlp::Relation::Le;
    cap.rhs = 3;
    sys.rows.push_back(std::move(cap));

    const auto vertices = enumerate_vertices(sys);
    const ratlp::Outcome feas = ratlp::feasible(sys);
    c.expect((feas.kind == ratlp::OutcomeKind::Feasible) == !vertices.empty(),
             "feasibility disagrees with vertex existence at iteration " + std::to_string(iter));
    if (vertices.empty()) {
      ++infeasible_count;
      continue;
    }
    ++feasible_count;
    c.expect(ratlp::check_witness(sys, feas.witness),
             "feasibility witness fails exact re-substitution");

    ratlp::SparseVec objective;
    for (std::size_t j = 0; j < n; ++j) {
      const long coeff = draw(-2, 2);
      if (coeff != 0) objective.emplace_back(j, Rational(coeff));
    }
    Rational lo = dot(objective, vertices[0]), hi = lo;
    for (const auto& v : vertices) {
      const Rational val = dot(objective, v);
      if (val < lo) lo = val;
      if (val > hi) hi = val;
    }
    const ratlp::Outcome omin = ratlp::optimize(sys, objective, ratlp::Sense::Minimize);
    const ratlp::Outcome omax = ratlp::optimize(sys, objective, ratlp::Sense::Maximize);
    c.expect(omin.kind == ratlp::OutcomeKind::Optimal && omin.value == lo,
             "minimum " + to_string(omin.value) + " != vertex minimum " + to_string(lo));
    c.expect(omax.kind == ratlp::OutcomeKind::Optimal && omax.value == hi,
             "maximum " + to_string(omax.value) + " != vertex maximum " + to_string(hi));
    c.expect(ratlp::check_witness(sys, omin.witness) && ratlp::check_witness(sys, omax.witness),
             "optimality witnesses fail exact re-substitution");
  }
  c.note(std::to_string(feasible_count) + " feasible and " + std::to_string(infeasible_count) +
         " infeasible systems exercised");
  c.finish();
}

TEST_CASE("criterion 10: refinement and nesting invariants") {
  Criterion c(10, "lex inside z; 1-consequence inside 0-consequence");
  const auto cases = consistent_programs(500, 1, /*max_atoms=*/6, /*max_defaults=*/6);
  std::size_t checked = 0;
  for (const auto& gc : cases) {
    std::mt19937_64 qrng(gc.seed * 0x9e3779b97f4a7c15ull + 1);
    std::vector<std::pair<FormulaPtr, FormulaPtr>> pairs;
    std::vector<Query> pseudos;
    for (int k = 0; k < 3; ++k) {
      FormulaPtr beta = oracle::random_ground_formula(qrng, gc.params.atom_count);
      FormulaPtr alpha = oracle::random_ground_formula(qrng, gc.params.atom_count);
      pseudos.push_back(pseudo(beta, alpha));
      pairs.emplace_back(std::move(beta), std::move(alpha));
    }
    TheoryContext ctx = make_context(gc.program, pseudos, {});
    for (const auto& [beta, alpha] : pairs) {
      const Interval z = tight_z_consequence(ctx, beta, alpha).interval;
      const Interval lex = tight_lex_consequence(ctx, beta, alpha).interval;
      const Interval zero = tight_ground(ctx, beta, alpha, Semantics::Zero);
      const Interval one = tight_ground(ctx, beta, alpha, Semantics::One);
      ++checked;
      if (!z.contains(lex))
        c.expect(false, "seed " + std::to_string(gc.seed) + ": lex " + interval_text(lex) +
                            " outside z " + interval_text(z));
      if (!zero.contains(one))
        c.expect(false, "seed " + std::to_string(gc.seed) + ": 1-consequence " +
                            interval_text(one) + " outside 0-consequence " + interval_text(zero));
    }
  }
  c.note(std::to_string(checked) + " query instances checked");
  c.finish();
}

TEST_CASE("size guards and runtime growth (informational)") {
  // Complexity is represented by clean cap errors and a growth note only.
  Criterion c(0, "size guards reject over-cap inputs cleanly");
  RunConfig small;
  small.max_atoms = 3;
  bool threw = false;
  try {
    const Program p = parse_program(plover::builtin::kPenguins);
    make_context(p, {parse_query(plover::builtin::kLegsQuery)}, small);
  } catch (const GroundError&) {
    threw = true;
  } catch (const worlds::CapError&) {
    threw = true;
  }
  c.expect(threw, "a 4-atom base must be rejected under --max-atoms 3");

  std::cout << "  runtime growth (informational; one 0-entailment query per size):\n";
  for (std::size_t atoms = 3; atoms <= 7; ++atoms) {
    std::string text;
    for (std::size_t i = 0; i + 1 < atoms; ++i) {
      const std::string a(1, static_cast<char>('a' + i));
      const std::string b(1, static_cast<char>('a' + i + 1));
      text += "(" + b + "|" + a + ")[1/4,3/4].\n";
    }
    const Program p = parse_program(text);
    const Query q = parse_query("?(" + std::string(1, static_cast<char>('a' + atoms - 1)) +
                                "|a)[L,U].");
    const auto start = std::chrono::steady_clock::now();
    const Answer ans = answer_query(p, q, Semantics::Zero);
    const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cout << "    |HB| = " << atoms << " (" << (1u << atoms) << " worlds): " << us
              << " us, tight " << to_string(ans.rows.at(0).tight) << "\n";
  }
  c.finish();
}
