#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "plover/builtin_examples.hpp"
#include "plover/parser.hpp"
#include "plover/ratlp.hpp"

using namespace plover;
using namespace plover::testing;
using ratlp::LinearSystem;
using ratlp::LinRow;
using ratlp::Outcome;
using ratlp::OutcomeKind;
using ratlp::Relation;
using ratlp::Sense;

namespace {

LinRow row(std::vector<std::pair<std::uint64_t, Rational>> coeffs, Relation rel, Rational rhs) {
  return LinRow{std::move(coeffs), rel, std::move(rhs)};
}

}  // namespace

TEST_CASE("single-variable feasibility") {
  LinearSystem sys;
  sys.var_count = 1;
  sys.rows.push_back(row({{0, 1}}, Relation::Eq, 1));
  const Outcome out = ratlp::feasible(sys);
  REQUIRE(out.kind == OutcomeKind::Feasible);
  CHECK(out.witness.at(0) == 1);
  CHECK(ratlp::check_witness(sys, out.witness));
}

TEST_CASE("contradictory equalities are infeasible") {
  LinearSystem sys;
  sys.var_count = 1;
  sys.rows.push_back(row({{0, 1}}, Relation::Eq, 1));
  sys.rows.push_back(row({{0, 1}}, Relation::Eq, 0));
  CHECK(ratlp::feasible(sys).kind == OutcomeKind::Infeasible);
}

// The staged system of the penguins example after overriding: strict
// knowledge, evidence p(tweety), and the penguins-fly default. The stated
// mass split 19/20 on {p,b,l} and 1/20 on {p,b,f,l} satisfies every row.
TEST_CASE("penguins staged system is feasible with the documented witness") {
  const Program p = parse_program(builtin::kPenguins);
  const Query q = parse_query(builtin::kLegsQuery);
  const auto universe = herbrand_universe(p, &q);
  const auto gp = ground_program(p, universe);
  const auto space = worlds::WorldSpace::enumerate(
      herbrand_base(signatures(p, &q), universe, true, gp, {q}, 20), 20);
  worlds::SatCache cache;

  // base order: b=0, f=1, l=2, p=3
  const FormulaPtr p_t = ClassicalFormula::atom("p", {constant("tweety")});
  const FormulaPtr f_t = ClassicalFormula::atom("f", {constant("tweety")});
  std::vector<ConditionalConstraint> staged;
  staged.push_back(gp[0]);                                  // (b|p)[1,1]
  staged.push_back(ConditionalConstraint{p_t, top(), 1, 1});  // evidence
  staged.push_back(gp[3]);                                  // (f|p)[0,1/20]

  LinearSystem sys;
  sys.var_count = space.world_count();
  sys.rows = build_rows(staged, space, cache);
  sys.rows.push_back(sum_row(worlds::WorldSet(space.world_count(), true), 1));

  const Outcome out = ratlp::feasible(sys);
  REQUIRE(out.kind == OutcomeKind::Feasible);

  ratlp::Witness documented;
  documented[0b1101] = make_rational(19, 20);  // {b, l, p}
  documented[0b1111] = make_rational(1, 20);   // {b, f, l, p}
  CHECK(ratlp::check_witness(sys, documented));

  // and the tight maximum of Pr(f(tweety)) over this system is 1/20
  ratlp::SparseVec objective;
  cache.sats(space, f_t).for_each(
      [&](worlds::WorldIndex w) { objective.emplace_back(w, Rational(1)); });
  const Outcome best = ratlp::optimize(sys, objective, Sense::Maximize);
  REQUIRE(best.kind == OutcomeKind::Optimal);
  CHECK(best.value == make_rational(1, 20));
}

TEST_CASE("tiny optimizations") {
  LinearSystem sys;
  sys.var_count = 1;
  sys.rows.push_back(row({{0, 1}}, Relation::Le, make_rational(1, 2)));
  Outcome out = ratlp::optimize(sys, {{0, 1}}, Sense::Maximize);
  REQUIRE(out.kind == OutcomeKind::Optimal);
  CHECK(out.value == make_rational(1, 2));

  LinearSystem sys2;
  sys2.var_count = 2;
  sys2.rows.push_back(row({{0, 1}, {1, 1}}, Relation::Eq, 1));
  out = ratlp::optimize(sys2, {{0, 1}}, Sense::Minimize);
  REQUIRE(out.kind == OutcomeKind::Optimal);
  CHECK(out.value == 0);
}

TEST_CASE("unbounded objectives are reported as logic errors") {
  LinearSystem sys;
  sys.var_count = 2;
  sys.rows.push_back(row({{0, 1}}, Relation::Le, 1));
  CHECK_THROWS_AS(ratlp::optimize(sys, {{1, 1}}, Sense::Maximize), ratlp::UnboundedError);
}

TEST_CASE("identical inputs give identical witnesses") {
  LinearSystem sys;
  sys.var_count = 4;
  sys.rows.push_back(row({{0, 1}, {1, 2}, {2, 1}}, Relation::Eq, 2));
  sys.rows.push_back(row({{1, 1}, {3, -1}}, Relation::Ge, 0));
  sys.rows.push_back(row({{0, 1}, {3, 1}}, Relation::Le, 3));
  const Outcome a = ratlp::optimize(sys, {{0, 1}, {3, 2}}, Sense::Maximize);
  const Outcome b = ratlp::optimize(sys, {{0, 1}, {3, 2}}, Sense::Maximize);
  REQUIRE(a.kind == OutcomeKind::Optimal);
  CHECK(a.value == b.value);
  CHECK(a.witness == b.witness);
}

// Randomized certificate: on small systems the simplex must agree exactly
// with brute-force vertex enumeration, for feasibility and for both senses.
TEST_CASE("optimize matches basic-feasible-solution enumeration") {
  std::mt19937_64 rng(20240811);
  auto draw = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  int feasible_seen = 0, infeasible_seen = 0;
  for (int iter = 0; iter < 120; ++iter) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 4);  // 2..5 vars
    LinearSystem sys;
    sys.var_count = n;
    const std::size_t row_count = 1 + static_cast<std::size_t>(rng() % 3);
    for (std::size_t i = 0; i < row_count; ++i) {
      LinRow r;
      for (std::size_t j = 0; j < n; ++j) {
        const long c = draw(-2, 2);
        if (c != 0) r.coeffs.emplace_back(j, make_rational(c, 1 + static_cast<long>(rng() % 2)));
      }
      r.rel = static_cast<Relation>(rng() % 3);
      r.rhs = make_rational(draw(-2, 2), 1 + static_cast<long>(rng() % 2));
      sys.rows.push_back(std::move(r));
    }
    {
      // keep the region bounded so every optimum sits on a vertex
      LinRow cap;
      for (std::size_t j = 0; j < n; ++j) cap.coeffs.emplace_back(j, Rational(1));
      cap.rel = Relation::Le;
      cap.rhs = 3;
      sys.rows.push_back(std::move(cap));
    }

    const auto vertices = enumerate_vertices(sys);
    const Outcome feas = ratlp::feasible(sys);
    CHECK((feas.kind == OutcomeKind::Feasible) == !vertices.empty());
    if (vertices.empty()) {
      ++infeasible_seen;
      continue;
    }
    ++feasible_seen;
    CHECK(ratlp::check_witness(sys, feas.witness));

    ratlp::SparseVec objective;
    for (std::size_t j = 0; j < n; ++j) {
      const long c = draw(-2, 2);
      if (c != 0) objective.emplace_back(j, Rational(c));
    }
    Rational lo = dot(objective, vertices[0]), hi = lo;
    for (const auto& v : vertices) {
      const Rational val = dot(objective, v);
      if (val < lo) lo = val;
      if (val > hi) hi = val;
    }
    const Outcome omin = ratlp::optimize(sys, objective, Sense::Minimize);
    const Outcome omax = ratlp::optimize(sys, objective, Sense::Maximize);
    REQUIRE(omin.kind == OutcomeKind::Optimal);
    REQUIRE(omax.kind == OutcomeKind::Optimal);
    CHECK(omin.value == lo);
    CHECK(omax.value == hi);
    CHECK(ratlp::check_witness(sys, omin.witness));
    CHECK(ratlp::check_witness(sys, omax.witness));
  }
  CHECK(feasible_seen > 20);
  CHECK(infeasible_seen > 5);
}
