#pragma once

// Shared test utilities: formula shorthands and an exact vertex enumerator
// used as an independent optimization oracle (Gaussian elimination only; no
// simplex code path).

#include <optional>
#include <set>
#include <vector>

#include "plover/defaults.hpp"
#include "plover/logical.hpp"
#include "plover/parser.hpp"
#include "plover/ratlp.hpp"

namespace plover::testing {

inline FormulaPtr A(const std::string& name) { return ClassicalFormula::atom(name); }
inline FormulaPtr neg(FormulaPtr f) { return ClassicalFormula::negation(std::move(f)); }
inline FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  return ClassicalFormula::conjunction(std::move(a), std::move(b));
}
inline FormulaPtr top() { return ClassicalFormula::top(); }
inline FormulaPtr bottom() { return ClassicalFormula::bottom(); }

inline ConditionalConstraint cc(FormulaPtr psi, FormulaPtr phi, long ln, long ld, long un,
                                long ud) {
  return {std::move(psi), std::move(phi), make_rational(ln, ld), make_rational(un, ud)};
}

// Solves M y = rhs exactly; nullopt when M is singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> M,
                                                         std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || M[i][col] == 0) continue;
      const Rational f = M[i][col] / M[col][col];
      for (std::size_t j = col; j < n; ++j) M[i][j] -= f * M[col][j];
      rhs[i] -= f * rhs[col];
    }
  }
  std::vector<Rational> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = rhs[i] / M[i][i];
  return y;
}

// All vertices of { y >= 0 } intersected with the rows, found by solving
// every n-subset of the defining hyperplanes and keeping feasible solutions.
inline std::vector<std::vector<Rational>> enumerate_vertices(const ratlp::LinearSystem& sys) {
  const std::size_t n = static_cast<std::size_t>(sys.var_count);
  struct Plane {
    std::vector<Rational> a;
    Rational b;
  };
  std::vector<Plane> planes;
  for (const auto& row : sys.rows) {
    Plane pl;
    pl.a.assign(n, Rational(0));
    pl.b = row.rhs;
    for (const auto& [j, q] : row.coeffs) pl.a[j] += q;
    planes.push_back(std::move(pl));
  }
  for (std::size_t j = 0; j < n; ++j) {
    Plane pl;
    pl.a.assign(n, Rational(0));
    pl.a[j] = 1;
    pl.b = 0;
    planes.push_back(std::move(pl));
  }

  std::set<std::vector<Rational>> found;
  const std::size_t total = planes.size();
  if (total < n) return {};
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n));
    std::vector<Rational> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      M[i] = planes[pick[i]].a;
      rhs[i] = planes[pick[i]].b;
    }
    if (auto y = solve_square(std::move(M), std::move(rhs))) {
      bool ok = true;
      for (const auto& v : *y)
        if (v < 0) ok = false;
      if (ok) {
        ratlp::Witness w;
        for (std::size_t j = 0; j < n; ++j)
          if ((*y)[j] != 0) w[j] = (*y)[j];
        if (ratlp::check_witness(sys, w)) found.insert(*y);
      }
    }
    // next combination
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (pick[i] + (n - i) < total) {
        ++pick[i];
        for (std::size_t k = i + 1; k < n; ++k) pick[k] = pick[k - 1] + 1;
        break;
      }
      if (i == 0) return {found.begin(), found.end()};
    }
  }
}

inline Rational dot(const ratlp::SparseVec& c, const std::vector<Rational>& y) {
  Rational v = 0;
  for (const auto& [j, q] : c) v += q * y[j];
  return v;
}

// Independent tight-bound oracle for Pr(beta|alpha): the polytope
// {sum y = 1, constraint rows} is compact and 0 <= Pr(beta & alpha) <=
// Pr(alpha) pointwise, so the conditional bounds are attained among the
// vertices with Pr(alpha) > 0.
inline Interval vertex_tight0(std::span<const ConditionalConstraint> cs, const FormulaPtr& beta,
                              const FormulaPtr& alpha, const worlds::WorldSpace& space,
                              worlds::SatCache& cache) {
  ratlp::LinearSystem sys;
  sys.var_count = space.world_count();
  sys.rows = build_rows(cs, space, cache);
  sys.rows.push_back(sum_row(worlds::WorldSet(space.world_count(), true), 1));

  const worlds::WorldSet& alpha_set = cache.sats(space, alpha);
  const worlds::WorldSet both = cache.sats(space, beta).intersect(alpha_set);

  Interval out = Interval::empty();
  for (const auto& v : enumerate_vertices(sys)) {
    Rational pa = 0, pba = 0;
    alpha_set.for_each([&](worlds::WorldIndex w) { pa += v[w]; });
    both.for_each([&](worlds::WorldIndex w) { pba += v[w]; });
    if (pa == 0) continue;
    const Rational ratio = pba / pa;
    if (out.is_empty())
      out = {ratio, ratio};
    else {
      if (ratio < out.lower) out.lower = ratio;
      if (ratio > out.upper) out.upper = ratio;
    }
  }
  return out;
}

}  // namespace plover::testing
