#pragma once

#include <string>
#include <vector>

#include "plover/formula.hpp"
#include "plover/rational.hpp"

namespace plover {

// (consequent | antecedent)[lower, upper]. Program members always satisfy
// lower <= upper; query-side constraints may carry any bounds in [0,1].
struct ConditionalConstraint {
  FormulaPtr consequent;
  FormulaPtr antecedent;
  Rational lower;
  Rational upper;
};

bool operator==(const ConditionalConstraint& a, const ConditionalConstraint& b);
std::string render(const ConditionalConstraint& c);  // "(psi|phi)[l, u]"

// Classical constraints ([1,1] or [0,0]) are strict knowledge; everything
// else (l < 1 and u > 0 given l <= u) is a default.
enum class ConstraintKind { Classical, Default };
ConstraintKind classify(const ConditionalConstraint& c);

bool is_ground(const ConditionalConstraint& c);
ConditionalConstraint substitute(const ConditionalConstraint& c, const Substitution& theta);

struct Program {
  std::vector<ConditionalConstraint> constraints;  // deduplicated, source order
};

std::string render(const Program& p);

struct QueryBounds {
  bool numeric = true;
  Rational lower, upper;  // numeric form
  std::string x, y;       // bound-variable form, x != y
};

struct Query {
  FormulaPtr consequent;  // beta
  FormulaPtr antecedent;  // alpha
  QueryBounds bounds;
};

bool object_ground(const Query& q);
std::string render(const Query& q);  // "?(beta|alpha)[l, u]." / "?(beta|alpha)[X, Y]."
bool operator==(const Query& a, const Query& b);

}  // namespace plover
