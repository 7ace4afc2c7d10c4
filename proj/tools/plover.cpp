// Command-line front end: consistency checking, partition display, query
// answering under a chosen semantics, oracle cross-checks and a self-test
// over the bundled example programs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "plover/builtin_examples.hpp"
#include "plover/defaults.hpp"
#include "plover/oracle.hpp"
#include "plover/parser.hpp"

namespace {

using nlohmann::json;
using namespace plover;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string decimal_note(const Interval& iv) {
  if (iv.is_empty()) return "empty interval: no relevant model";
  return "~ [" + to_decimal_string(iv.lower) + ", " + to_decimal_string(iv.upper) + "]";
}

std::string theta_string(const Substitution& theta, const Query& q, const Interval* tight) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, con] : theta) {
    if (!first) out += ", ";
    out += var + "/" + con;
    first = false;
  }
  if (!q.bounds.numeric && tight != nullptr) {
    if (!first) out += ", ";
    out += q.bounds.x + "/" + to_string(tight->lower) + ", " + q.bounds.y + "/" +
           to_string(tight->upper);
  }
  out += "}";
  return out;
}

json rational_json(const Rational& q) {
  return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

json witness_json(const WitnessDistribution& dist, const worlds::WorldSpace& space) {
  json arr = json::array();
  for (const auto& [w, mass] : dist) {
    json atoms = json::array();
    for (std::size_t j = 0; j < space.base().size(); ++j)
      if (space.world_contains(w, j)) atoms.push_back(render(space.base().atoms[j]));
    arr.push_back(json{{"world", atoms}, {"mass", rational_json(mass)}});
  }
  return arr;
}

void print_witness(std::ostream& os, const char* label, const WitnessDistribution& dist,
                   const worlds::WorldSpace& space) {
  os << "  witness (" << label << "):\n";
  for (const auto& [w, mass] : dist)
    os << "    " << space.render_world(w) << " : " << to_string(mass) << "\n";
}

struct GlobalOptions {
  std::size_t max_atoms = 20;
  std::size_t oracle_cap = 12;

  RunConfig config() const { return RunConfig{max_atoms, oracle_cap, true}; }
};

int run_check(const std::string& file, bool as_json, const GlobalOptions& opts) {
  const Program p = parse_program(read_file(file));
  const bool ok = is_consistent(p, opts.config());
  if (as_json)
    std::cout << json{{"consistent", ok}}.dump(2) << "\n";
  else
    std::cout << (ok ? "consistent" : "inconsistent") << "\n";
  return ok ? kExitOk : kExitNegative;
}

int run_partition(const std::string& file, const GlobalOptions& opts) {
  const Program p = parse_program(read_file(file));
  const std::set<std::string> universe = herbrand_universe(p);
  const GroundTheory theory = split_theory(ground_program(p, universe));
  if (theory.defaults.empty()) {
    std::cout << "no defaults; empty partition\n";
    return kExitOk;
  }
  TheoryContext ctx = make_context(p, {}, opts.config());
  if (!ctx.consistent()) {
    std::cout << "nil (program is inconsistent; no toleration ordering exists)\n";
    return kExitNegative;
  }
  const auto levels = ctx.partition->materialize(ctx.theory);
  for (std::size_t j = 0; j < levels.size(); ++j) {
    std::cout << "D_" << j << ":\n";
    for (const auto& c : levels[j]) std::cout << "  " << render(c) << ".\n";
  }
  return kExitOk;
}

int run_query(const std::string& file, const std::string& query_text, const std::string& sem_text,
              bool witness, bool as_json, const GlobalOptions& opts) {
  const Program p = parse_program(read_file(file));
  const Query q = parse_query(query_text);
  const auto sem = semantics_from_string(sem_text);
  if (!sem) throw std::runtime_error("unknown semantics '" + sem_text + "' (use 0, 1, z, lex)");

  PreparedQuery pq = prepare_query(p, q, opts.config());
  const bool consistent = pq.context.consistent();
  const Answer ans = answer_prepared(pq, *sem, witness);
  const worlds::WorldSpace& space = pq.context.space;

  if (as_json) {
    json out;
    out["query"] = render(q);
    out["semantics"] = to_string(*sem);
    out["consistent"] = consistent;
    json subs = json::array();
    for (const auto& row : ans.rows) {
      json r;
      json theta = json::object();
      for (const auto& [var, con] : row.theta) theta[var] = con;
      r["theta"] = theta;
      r["lower"] = rational_json(row.tight.lower);
      r["upper"] = rational_json(row.tight.upper);
      if (ans.numeric) r["holds"] = row.holds;
      subs.push_back(std::move(r));
    }
    out["substitutions"] = subs;
    if (ans.numeric) out["answer"] = ans.yes ? "yes" : "no";
    if (witness) {
      json warr = json::array();
      for (const auto& row : ans.rows) {
        json w;
        if (row.detail.lower_witness) w["lower"] = witness_json(*row.detail.lower_witness, space);
        if (row.detail.upper_witness) w["upper"] = witness_json(*row.detail.upper_witness, space);
        warr.push_back(std::move(w));
      }
      out["witness"] = warr;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& row : ans.rows) {
      std::cout << theta_string(row.theta, q, &row.tight) << "  tight "
                << to_string(row.tight) << "  % " << decimal_note(row.tight);
      if (ans.numeric)
        std::cout << "  in [" << to_string(q.bounds.lower) << ", " << to_string(q.bounds.upper)
                  << "]: " << (row.holds ? "yes" : "no");
      std::cout << "\n";
      if (witness) {
        if (row.detail.lower_witness) print_witness(std::cout, "lower", *row.detail.lower_witness, space);
        if (row.detail.upper_witness) print_witness(std::cout, "upper", *row.detail.upper_witness, space);
      }
    }
    if (ans.numeric) std::cout << "answer: " << (ans.yes ? "Yes" : "No") << "\n";
  }
  if (ans.numeric && !ans.yes) return kExitNegative;
  return kExitOk;
}

int run_oracle(const std::string& file, const std::string& query_text, const std::string& sem_text,
               const GlobalOptions& opts) {
  const Program p = parse_program(read_file(file));
  const Query q = parse_query(query_text);
  const auto sem = semantics_from_string(sem_text);
  if (!sem || (*sem != Semantics::Z && *sem != Semantics::Lex))
    throw std::runtime_error("oracle cross-checks need --semantics z or lex");

  const std::set<std::string> universe = herbrand_universe(p, &q);
  auto instances = ground_query_instances(q, universe);
  std::vector<Query> qs;
  for (const auto& [theta, inst] : instances) qs.push_back(inst);
  TheoryContext ctx = make_context(p, qs, opts.config());
  if (!ctx.consistent())
    throw InconsistentError("program is inconsistent; z- and lex-entailment are undefined");

  bool all_agree = true;
  for (const auto& [theta, inst] : instances) {
    const Interval engine = tight_ground(ctx, inst.consequent, inst.antecedent, *sem);
    const Interval orc = oracle::tight_consequence_oracle(ctx, inst.consequent, inst.antecedent,
                                                          *sem, opts.oracle_cap);
    const bool agree = engine == orc;
    all_agree = all_agree && agree;
    std::cout << theta_string(theta, q, &engine) << "  engine " << to_string(engine) << "  oracle "
              << to_string(orc) << "  " << (agree ? "AGREE" : "DISAGREE") << "\n";
  }
  std::cout << (all_agree ? "AGREE" : "DISAGREE") << "\n";
  return all_agree ? kExitOk : kExitNegative;
}

struct SelfTestRow {
  const char* name;
  const char* program;
  const char* query;
  Semantics semantics;
  const char* expected;  // rendered interval; nullptr = informational row
};

int run_selftest(const GlobalOptions& opts) {
  using namespace plover::builtin;
  const SelfTestRow rows[] = {
      {"birds-legs", kBirdsLegs, kLegsQuery, Semantics::Zero, "[0, 1]"},
      {"birds-legs", kBirdsLegs, kLegsQuery, Semantics::One, "[19/20, 1]"},
      {"birds-legs", kBirdsLegs, kLegsQuery, Semantics::Z, "[19/20, 1]"},
      {"birds-legs", kBirdsLegs, kLegsQuery, Semantics::Lex, "[19/20, 1]"},
      {"penguins", kPenguins, kLegsQuery, Semantics::Zero, "[0, 1]"},
      {"penguins", kPenguins, kLegsQuery, Semantics::One, "(1, 0) empty"},
      {"penguins", kPenguins, kLegsQuery, Semantics::Z, nullptr},
      {"penguins", kPenguins, kLegsQuery, Semantics::Lex, "[19/20, 1]"},
      {"penguins", kPenguins, kFliesQuery, Semantics::Z, "[0, 1/20]"},
      {"penguins", kPenguins, kFliesQuery, Semantics::Lex, "[0, 1/20]"},
      {"magpies", kMagpies, kChirpsQuery, Semantics::Zero, "[0, 99/100]"},
      {"magpies", kMagpies, kChirpsQuery, Semantics::One, "[7/10, 4/5]"},
      {"magpies", kMagpies, kChirpsQuery, Semantics::Z, "[7/10, 4/5]"},
      {"magpies", kMagpies, kChirpsQuery, Semantics::Lex, "[7/10, 4/5]"},
  };

  int failures = 0;
  std::cout << "self-test: bundled examples across all four semantics\n\n";
  for (const auto& row : rows) {
    const Program p = parse_program(row.program);
    const Query q = parse_query(row.query);
    const Answer ans = answer_query(p, q, row.semantics, opts.config());
    const Interval got = ans.rows.at(0).tight;
    const std::string got_text = to_string(got);
    std::ostringstream line;
    line << row.name << "  " << to_string(row.semantics) << "-entailment  " << row.query << "  ";
    if (row.expected == nullptr) {
      // The specificity machinery drowns unrelated level-0 knowledge when the
      // evidence conflicts with that level, so the inheritance answer
      // [19/20, 1] survives under lex but not under z. Reported, not judged;
      // the brute-force oracle is consulted as the authority instead.
      const std::set<std::string> universe = herbrand_universe(p, &q);
      auto instances = ground_query_instances(q, universe);
      std::vector<Query> qs;
      for (const auto& [theta, inst] : instances) qs.push_back(inst);
      TheoryContext ctx = make_context(p, qs, opts.config());
      const Interval orc = oracle::tight_consequence_oracle(
          ctx, instances[0].second.consequent, instances[0].second.antecedent, row.semantics,
          opts.oracle_cap);
      line << "computed " << got_text << "  oracle " << to_string(orc) << "  "
           << (got == orc ? "INFO" : "FAIL");
      std::cout << line.str() << "\n";
      std::cout << "    note: z-entailment drowns the level-0 leg default here (the evidence\n"
                   "    conflicts with level 0 as a whole); lex-entailment keeps [19/20, 1].\n";
      if (got != orc) ++failures;
      continue;
    }
    const bool pass = got_text == row.expected;
    if (!pass) ++failures;
    line << "expected " << row.expected << "  computed " << got_text << "  "
         << (pass ? "PASS" : "FAIL");
    std::cout << line.str() << "\n";
  }

  // partition and consistency checks
  {
    const Program p = parse_program(kPenguins);
    TheoryContext ctx = make_context(p, {parse_query(kLegsQuery)}, opts.config());
    bool pass = ctx.consistent();
    std::string got = "nil";
    if (pass) {
      const auto levels = ctx.partition->materialize(ctx.theory);
      std::ostringstream ss;
      for (std::size_t j = 0; j < levels.size(); ++j) {
        ss << (j ? " | " : "") << "D_" << j << " =";
        for (const auto& c : levels[j]) ss << " " << render(c);
      }
      got = ss.str();
      pass = levels.size() == 2 && levels[0].size() == 2 && levels[1].size() == 1;
    }
    if (!pass) ++failures;
    std::cout << "penguins  z-partition  " << got << "  " << (pass ? "PASS" : "FAIL") << "\n";
  }
  {
    const Program p = parse_program(kClashingDefaults);
    const bool pass = !is_consistent(p, opts.config());
    if (!pass) ++failures;
    std::cout << "clashing-defaults  consistency  expected inconsistent  computed "
              << (pass ? "inconsistent  PASS" : "consistent  FAIL") << "\n";
  }

  std::cout << "\n" << (failures == 0 ? "self-test passed" : "self-test FAILED") << "\n";
  return failures == 0 ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plover: a reasoner for probabilistic logic programs with inheritance and overriding"};
  app.require_subcommand(1);

  GlobalOptions opts;
  if (const char* env = std::getenv("PLOVER_MAX_ATOMS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) opts.max_atoms = static_cast<std::size_t>(v);
  }
  app.add_option("--max-atoms", opts.max_atoms, "Herbrand base size cap (2^n worlds)")
      ->capture_default_str();
  app.add_option("--oracle-cap", opts.oracle_cap, "default-count cap for oracle enumeration")
      ->capture_default_str();

  std::string file, query_text, sem_text;
  bool witness = false, as_json = false;

  auto* check = app.add_subcommand("check", "decide whether a program is consistent");
  check->add_option("file", file, "program file")->required();
  check->add_flag("--json", as_json, "machine-readable output");

  auto* partition = app.add_subcommand("partition", "print the z-partition of the defaults");
  partition->add_option("file", file, "program file")->required();

  auto* query = app.add_subcommand("query", "answer a query under a chosen semantics");
  query->add_option("file", file, "program file")->required();
  query->add_option("query", query_text, "query text, e.g. \"?(l(tweety)|p(tweety))[L, U].\"")
      ->required();
  query->add_option("--semantics", sem_text, "0 | 1 | z | lex")->required();
  query->add_flag("--witness", witness, "print endpoint witness distributions");
  query->add_flag("--json", as_json, "machine-readable output");

  auto* orc = app.add_subcommand("oracle", "cross-check the engine against brute force");
  orc->add_option("file", file, "program file")->required();
  orc->add_option("query", query_text, "query text")->required();
  orc->add_option("--semantics", sem_text, "z | lex")->required();

  auto* selftest = app.add_subcommand("selftest", "run the bundled example suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (check->parsed()) return run_check(file, as_json, opts);
    if (partition->parsed()) return run_partition(file, opts);
    if (query->parsed()) return run_query(file, query_text, sem_text, witness, as_json, opts);
    if (orc->parsed()) return run_oracle(file, query_text, sem_text, opts);
    if (selftest->parsed()) return run_selftest(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
