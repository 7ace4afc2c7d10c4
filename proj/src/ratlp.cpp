#include "plover/ratlp.hpp"

#include <algorithm>
#include <limits>

namespace plover::ratlp {

bool check_witness(const LinearSystem& sys, const Witness& w) {
  for (const auto& [idx, val] : w)
    if (idx >= sys.var_count || val < 0) return false;
  for (const auto& row : sys.rows) {
    Rational lhs = 0;
    for (const auto& [idx, coeff] : row.coeffs) {
      auto it = w.find(idx);
      if (it != w.end()) lhs += coeff * it->second;
    }
    switch (row.rel) {
      case Relation::Ge:
        if (lhs < row.rhs) return false;
        break;
      case Relation::Le:
        if (lhs > row.rhs) return false;
        break;
      case Relation::Eq:
        if (lhs != row.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct PreparedRow {
  std::vector<std::pair<std::uint64_t, Rational>> coeffs;
  Relation rel;
  Rational rhs;
};

class Simplex {
 public:
  Simplex(const LinearSystem& sys, const SparseVec* objective, Sense sense) {
    build(sys, objective, sense);
  }

  bool trivially_infeasible() const { return trivially_infeasible_; }

  // Phase 1: minimize the sum of artificials. False = original infeasible.
  bool phase1() {
    for (;;) {
      const std::size_t s = entering(cost1_, total_);
      if (s == kNone) break;
      const std::size_t r = leaving(s);
      if (r == kNone)
        throw std::logic_error("phase-1 objective unbounded (internal error)");
      pivot(r, s);
    }
    if (zval1_ != 0) return false;
    drive_out_artificials();
    return true;
  }

  // Phase 2 over the real objective (internally a minimization).
  Rational phase2() {
    for (;;) {
      const std::size_t s = entering(cost2_, art_begin_);
      if (s == kNone) break;
      const std::size_t r = leaving(s);
      if (r == kNone) throw UnboundedError("objective is unbounded over the feasible region");
      pivot(r, s);
    }
    return zval2_;
  }

  bool maximize() const { return maximize_; }

  Witness extract() const {
    Witness w;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < ncls_ && b_[i] != 0) w[class_rep_[basis_[i]]] = b_[i];
    }
    return w;
  }

 private:
  std::size_t entering(const std::vector<Rational>& cost, std::size_t limit) const {
    for (std::size_t j = 0; j < limit; ++j)
      if (cost[j] < 0) return j;  // Bland: smallest index
    return kNone;
  }

  std::size_t leaving(std::size_t s) const {
    std::size_t best = kNone;
    Rational best_ratio;
    for (std::size_t i = 0; i < m_; ++i) {
      if (A_[i][s] <= 0) continue;
      Rational ratio = b_[i] / A_[i][s];
      if (best == kNone || ratio < best_ratio ||
          (ratio == best_ratio && basis_[i] < basis_[best])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t s) {
    const Rational pv = A_[r][s];
    for (std::size_t j = 0; j < total_; ++j)
      if (A_[r][j] != 0) A_[r][j] /= pv;
    b_[r] /= pv;
    A_[r][s] = 1;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || A_[i][s] == 0) continue;
      const Rational f = A_[i][s];
      for (std::size_t j = 0; j < total_; ++j)
        if (A_[r][j] != 0) A_[i][j] -= f * A_[r][j];
      b_[i] -= f * b_[r];
      A_[i][s] = 0;
    }
    apply_to_cost(cost1_, zval1_, r, s);
    apply_to_cost(cost2_, zval2_, r, s);
    basis_[r] = s;
  }

  void apply_to_cost(std::vector<Rational>& cost, Rational& zval, std::size_t r, std::size_t s) {
    const Rational f = cost[s];
    if (f == 0) return;
    zval += f * b_[r];
    for (std::size_t j = 0; j < total_; ++j)
      if (A_[r][j] != 0) cost[j] -= f * A_[r][j];
    cost[s] = 0;
  }

  // Pivot basic artificials (all at value 0 after a successful phase 1) onto
  // structural or slack columns. Rows with no such nonzero entry are
  // redundant; their artificial stays basic at 0 and the row is inert.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (A_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  void build(const LinearSystem& sys, const SparseVec* objective, Sense sense) {
    maximize_ = sense == Sense::Maximize;

    std::vector<PreparedRow> rows;
    for (const auto& row : sys.rows) {
      PreparedRow pr;
      pr.rel = row.rel;
      pr.rhs = row.rhs;
      for (const auto& [idx, q] : row.coeffs) {
        if (idx >= sys.var_count)
          throw std::logic_error("row references variable beyond var_count");
        if (q != 0) pr.coeffs.emplace_back(idx, q);
      }
      if (pr.coeffs.empty()) {
        const Rational zero = 0;
        const bool holds = pr.rel == Relation::Ge   ? zero >= pr.rhs
                           : pr.rel == Relation::Le ? zero <= pr.rhs
                                                    : zero == pr.rhs;
        if (!holds) {
          trivially_infeasible_ = true;
          return;
        }
        continue;
      }
      rows.push_back(std::move(pr));
    }

    std::map<std::uint64_t, Rational> obj;
    if (objective != nullptr) {
      for (const auto& [idx, q] : *objective) {
        if (idx >= sys.var_count)
          throw std::logic_error("objective references variable beyond var_count");
        if (q != 0) obj[idx] += q;
      }
    }

    // Column signatures: (row id, coefficient) pairs plus an objective slot
    // keyed past the last row. Equal signatures collapse into one column.
    using Signature = std::vector<std::pair<std::size_t, Rational>>;
    std::map<std::uint64_t, Signature> per_column;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& [idx, q] : rows[i].coeffs) per_column[idx].emplace_back(i, q);
    for (const auto& [idx, q] : obj) per_column[idx].emplace_back(rows.size(), q);

    std::map<Signature, std::size_t> classes;           // signature -> class id
    std::map<std::uint64_t, std::size_t> rep_to_class;  // representative -> class id
    for (const auto& [idx, sig] : per_column) {
      auto [it, inserted] = classes.emplace(sig, class_rep_.size());
      if (inserted) {
        rep_to_class[idx] = class_rep_.size();
        class_rep_.push_back(idx);  // per_column iterates by increasing index
      }
      (void)it;
    }
    ncls_ = class_rep_.size();

    m_ = rows.size();
    std::size_t slack_count = 0;
    for (const auto& r : rows)
      if (r.rel != Relation::Eq) ++slack_count;

    // Columns: classes, then slacks, then artificials (allocated as needed).
    std::vector<std::vector<Rational>> dense(m_, std::vector<Rational>(ncls_));
    std::vector<Relation> rel(m_);
    b_.assign(m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      rel[i] = rows[i].rel;
      b_[i] = rows[i].rhs;
    }
    for (const auto& [idx, klass] : rep_to_class) {
      for (const auto& [row_id, q] : per_column.at(idx))
        if (row_id < m_) dense[row_id][klass] = q;
    }

    // Normalize signs so every rhs is nonnegative.
    for (std::size_t i = 0; i < m_; ++i) {
      if (b_[i] < 0) {
        for (auto& q : dense[i]) q = -q;
        b_[i] = -b_[i];
        if (rel[i] == Relation::Ge)
          rel[i] = Relation::Le;
        else if (rel[i] == Relation::Le)
          rel[i] = Relation::Ge;
      }
    }

    std::size_t art_count = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (rel[i] != Relation::Le) ++art_count;

    art_begin_ = ncls_ + slack_count;
    total_ = art_begin_ + art_count;

    A_.assign(m_, std::vector<Rational>(total_));
    basis_.assign(m_, kNone);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < ncls_; ++j) A_[i][j] = dense[i][j];

    std::size_t next_slack = ncls_;
    std::size_t next_art = art_begin_;
    for (std::size_t i = 0; i < m_; ++i) {
      switch (rel[i]) {
        case Relation::Le:
          A_[i][next_slack] = 1;
          basis_[i] = next_slack++;
          break;
        case Relation::Ge:
          A_[i][next_slack] = -1;
          ++next_slack;
          A_[i][next_art] = 1;
          basis_[i] = next_art++;
          break;
        case Relation::Eq:
          A_[i][next_art] = 1;
          basis_[i] = next_art++;
          break;
      }
    }

    // Phase-1 reduced costs: 1 on artificials minus the basic artificial rows.
    cost1_.assign(total_, Rational(0));
    zval1_ = 0;
    for (std::size_t j = art_begin_; j < total_; ++j) cost1_[j] = 1;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= art_begin_) {
        for (std::size_t j = 0; j < total_; ++j) cost1_[j] -= A_[i][j];
        zval1_ += b_[i];
      }
    }

    // Phase-2 reduced costs start as the raw objective (initial basics cost 0).
    cost2_.assign(total_, Rational(0));
    zval2_ = 0;
    for (const auto& [idx, q] : obj) {
      auto it = rep_to_class.find(idx);
      if (it != rep_to_class.end()) cost2_[it->second] = maximize_ ? Rational(-q) : q;
    }
  }

  bool trivially_infeasible_ = false;
  bool maximize_ = false;
  std::size_t m_ = 0;
  std::size_t ncls_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t total_ = 0;
  std::vector<std::vector<Rational>> A_;
  std::vector<Rational> b_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost1_, cost2_;
  Rational zval1_, zval2_;
  std::vector<std::uint64_t> class_rep_;
};

}  // namespace

Outcome feasible(const LinearSystem& sys) {
  Simplex sx(sys, nullptr, Sense::Minimize);
  if (sx.trivially_infeasible() || !sx.phase1()) return {OutcomeKind::Infeasible, 0, {}};
  Outcome out{OutcomeKind::Feasible, 0, sx.extract()};
  if (!check_witness(sys, out.witness))
    throw std::logic_error("simplex produced an invalid feasibility witness");
  return out;
}

Outcome optimize(const LinearSystem& sys, const SparseVec& objective, Sense sense) {
  Simplex sx(sys, &objective, sense);
  if (sx.trivially_infeasible() || !sx.phase1()) return {OutcomeKind::Infeasible, 0, {}};
  Rational value = sx.phase2();
  if (sense == Sense::Maximize) value = -value;
  Outcome out{OutcomeKind::Optimal, value, sx.extract()};
  if (!check_witness(sys, out.witness))
    throw std::logic_error("simplex produced an invalid optimality witness");
  Rational attained = 0;
  for (const auto& [idx, q] : objective) {
    auto it = out.witness.find(idx);
    if (it != out.witness.end()) attained += q * it->second;
  }
  if (attained != value) throw std::logic_error("witness does not attain the reported optimum");
  return out;
}

}  // namespace plover::ratlp
