#include "plover/program.hpp"

namespace plover {

bool operator==(const ConditionalConstraint& a, const ConditionalConstraint& b) {
  return a.lower == b.lower && a.upper == b.upper && equal(a.consequent, b.consequent) &&
         equal(a.antecedent, b.antecedent);
}

std::string render(const ConditionalConstraint& c) {
  return "(" + render(c.consequent) + "|" + render(c.antecedent) + ")[" + to_string(c.lower) +
         ", " + to_string(c.upper) + "]";
}

ConstraintKind classify(const ConditionalConstraint& c) {
  const bool all_true = c.lower == 1 && c.upper == 1;
  const bool all_false = c.lower == 0 && c.upper == 0;
  return (all_true || all_false) ? ConstraintKind::Classical : ConstraintKind::Default;
}

bool is_ground(const ConditionalConstraint& c) {
  return is_ground(c.consequent) && is_ground(c.antecedent);
}

ConditionalConstraint substitute(const ConditionalConstraint& c, const Substitution& theta) {
  return {substitute(c.consequent, theta), substitute(c.antecedent, theta), c.lower, c.upper};
}

std::string render(const Program& p) {
  std::string out;
  for (const auto& c : p.constraints) {
    out += render(c);
    out += ".\n";
  }
  return out;
}

bool object_ground(const Query& q) {
  return is_ground(q.consequent) && is_ground(q.antecedent);
}

std::string render(const Query& q) {
  std::string out = "?(" + render(q.consequent) + "|" + render(q.antecedent) + ")[";
  if (q.bounds.numeric)
    out += to_string(q.bounds.lower) + ", " + to_string(q.bounds.upper);
  else
    out += q.bounds.x + ", " + q.bounds.y;
  out += "].";
  return out;
}

bool operator==(const Query& a, const Query& b) {
  if (!equal(a.consequent, b.consequent) || !equal(a.antecedent, b.antecedent)) return false;
  if (a.bounds.numeric != b.bounds.numeric) return false;
  if (a.bounds.numeric)
    return a.bounds.lower == b.bounds.lower && a.bounds.upper == b.bounds.upper;
  return a.bounds.x == b.bounds.x && a.bounds.y == b.bounds.y;
}

}  // namespace plover
