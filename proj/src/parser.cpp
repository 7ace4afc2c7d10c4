#include "plover/parser.hpp"

#include <cctype>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace plover {

namespace {

enum class Tok {
  LParen,
  RParen,
  LBracket,
  RBracket,
  Pipe,
  Amp,
  Semi,
  Tilde,
  Arrow,
  Dot,
  Comma,
  Question,
  Slash,
  Number,  // "19", "0.95", ".95"
  LIdent,
  UIdent,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    const int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, col};
    const char c = text_[pos_];
    switch (c) {
      case '(': advance(); return {Tok::LParen, "(", line, col};
      case ')': advance(); return {Tok::RParen, ")", line, col};
      case '[': advance(); return {Tok::LBracket, "[", line, col};
      case ']': advance(); return {Tok::RBracket, "]", line, col};
      case '|': advance(); return {Tok::Pipe, "|", line, col};
      case '&': advance(); return {Tok::Amp, "&", line, col};
      case ';': advance(); return {Tok::Semi, ";", line, col};
      case '~': advance(); return {Tok::Tilde, "~", line, col};
      case ',': advance(); return {Tok::Comma, ",", line, col};
      case '?': advance(); return {Tok::Question, "?", line, col};
      case '/': advance(); return {Tok::Slash, "/", line, col};
      case '-':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          advance();
          return {Tok::Arrow, "->", line, col};
        }
        throw ParseError(line, col, "unexpected '-' (did you mean '->'?)");
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      // '.' is both the statement terminator and the decimal point; it only
      // starts a number when a digit follows.
      if (c == '.' && !(pos_ + 1 < text_.size() &&
                        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        advance();
        return {Tok::Dot, ".", line, col};
      }
      std::string num;
      bool seen_dot = false;
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          num += d;
          advance();
        } else if (d == '.' && !seen_dot && pos_ + 1 < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
          seen_dot = true;
          num += d;
          advance();
        } else {
          break;
        }
      }
      return {Tok::Number, num, line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ident += text_[pos_];
        advance();
      }
      const bool upper = std::isupper(static_cast<unsigned char>(ident[0]));
      return {upper ? Tok::UIdent : Tok::LIdent, ident, line, col};
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { shift(); }

  Program program() {
    Program p;
    std::set<std::string> seen;
    while (cur_.kind != Tok::End) {
      ConditionalConstraint c = constraint_statement();
      const std::string key = render(c);
      if (seen.insert(key).second) p.constraints.push_back(std::move(c));
    }
    return p;
  }

  Query query() {
    expect(Tok::Question, "expected '?'");
    expect(Tok::LParen, "expected '('");
    FormulaPtr beta = formula();
    expect(Tok::Pipe, "expected '|'");
    FormulaPtr alpha = formula();
    expect(Tok::RParen, "expected ')'");
    expect(Tok::LBracket, "expected '['");
    QueryBounds bounds = query_bounds();
    expect(Tok::RBracket, "expected ']'");
    expect(Tok::Dot, "expected '.'");
    if (cur_.kind != Tok::End) fail("trailing input after query");
    return {std::move(beta), std::move(alpha), std::move(bounds)};
  }

 private:
  ConditionalConstraint constraint_statement() {
    expect(Tok::LParen, "expected '('");
    FormulaPtr psi = formula();
    expect(Tok::Pipe, "expected '|'");
    FormulaPtr phi = formula();
    expect(Tok::RParen, "expected ')'");
    expect(Tok::LBracket, "expected '['");
    const Token lt = cur_;
    Rational lower = bound();
    expect(Tok::Comma, "expected ','");
    Rational upper = bound();
    expect(Tok::RBracket, "expected ']'");
    expect(Tok::Dot, "expected '.' after constraint");
    if (lower > upper)
      throw ParseError(lt.line, lt.column, "lower bound exceeds upper bound");
    return {std::move(psi), std::move(phi), std::move(lower), std::move(upper)};
  }

  // formula := disjunction [ "->" formula ]     (a -> b  ==  ~(a & ~b))
  FormulaPtr formula() {
    FormulaPtr lhs = disjunction();
    if (cur_.kind == Tok::Arrow) {
      shift();
      FormulaPtr rhs = formula();
      return ClassicalFormula::negation(
          ClassicalFormula::conjunction(std::move(lhs), ClassicalFormula::negation(rhs)));
    }
    return lhs;
  }

  // disjunction := conjunction { ";" conjunction }   (a ; b  ==  ~(~a & ~b))
  FormulaPtr disjunction() {
    FormulaPtr acc = conjunction();
    while (cur_.kind == Tok::Semi) {
      shift();
      FormulaPtr rhs = conjunction();
      acc = ClassicalFormula::negation(ClassicalFormula::conjunction(
          ClassicalFormula::negation(std::move(acc)), ClassicalFormula::negation(rhs)));
    }
    return acc;
  }

  FormulaPtr conjunction() {
    FormulaPtr acc = unary();
    while (cur_.kind == Tok::Amp) {
      shift();
      acc = ClassicalFormula::conjunction(std::move(acc), unary());
    }
    return acc;
  }

  FormulaPtr unary() {
    if (cur_.kind == Tok::Tilde) {
      shift();
      return ClassicalFormula::negation(unary());
    }
    return primary();
  }

  FormulaPtr primary() {
    if (cur_.kind == Tok::LParen) {
      shift();
      FormulaPtr f = formula();
      expect(Tok::RParen, "expected ')'");
      return f;
    }
    if (cur_.kind == Tok::LIdent) {
      if (cur_.text == "true") {
        shift();
        return ClassicalFormula::top();
      }
      if (cur_.text == "false") {
        shift();
        return ClassicalFormula::bottom();
      }
      return atom();
    }
    fail("expected formula");
  }

  FormulaPtr atom() {
    const Token name = cur_;
    shift();
    std::vector<ObjectTerm> args;
    if (cur_.kind == Tok::LParen) {
      shift();
      args.push_back(term());
      while (cur_.kind == Tok::Comma) {
        shift();
        args.push_back(term());
      }
      expect(Tok::RParen, "expected ')'");
    }
    auto [it, inserted] = arity_.emplace(name.text, args.size());
    if (!inserted && it->second != args.size())
      throw ParseError(name.line, name.column,
                       "arity mismatch: predicate '" + name.text + "' used with " +
                           std::to_string(args.size()) + " argument(s), previously " +
                           std::to_string(it->second));
    return ClassicalFormula::atom(name.text, std::move(args));
  }

  ObjectTerm term() {
    if (cur_.kind == Tok::LIdent) {
      if (cur_.text == "true" || cur_.text == "false")
        fail("reserved word '" + cur_.text + "' cannot be a constant");
      ObjectTerm t = constant(cur_.text);
      shift();
      return t;
    }
    if (cur_.kind == Tok::UIdent) {
      ObjectTerm t = variable(cur_.text);
      shift();
      return t;
    }
    fail("expected term");
  }

  Rational bound() {
    const Token tok = cur_;
    if (tok.kind != Tok::Number) fail("expected probability bound");
    shift();
    std::string text = tok.text;
    if (cur_.kind == Tok::Slash) {
      shift();
      if (cur_.kind != Tok::Number) fail("expected denominator");
      text += "/" + cur_.text;
      shift();
    }
    Rational q;
    try {
      q = parse_rational(text);
    } catch (const RationalError& e) {
      throw ParseError(tok.line, tok.column, e.what());
    }
    if (!in_unit_interval(q))
      throw ParseError(tok.line, tok.column, "bound " + to_string(q) + " out of range [0, 1]");
    return q;
  }

  QueryBounds query_bounds() {
    QueryBounds b;
    const Token first = cur_;
    if (cur_.kind == Tok::UIdent) {
      b.numeric = false;
      b.x = cur_.text;
      shift();
      expect(Tok::Comma, "expected ','");
      if (cur_.kind != Tok::UIdent)
        fail("bounds must both be numbers or both be bound variables");
      b.y = cur_.text;
      shift();
      if (b.x == b.y)
        throw ParseError(first.line, first.column, "bound variables must be distinct");
      return b;
    }
    b.numeric = true;
    b.lower = bound();
    expect(Tok::Comma, "expected ','");
    if (cur_.kind == Tok::UIdent) fail("bounds must both be numbers or both be bound variables");
    b.upper = bound();
    return b;
  }

  void shift() { cur_ = lexer_.next(); }

  void expect(Tok kind, const std::string& message) {
    if (cur_.kind != kind) fail(message);
    shift();
  }

  [[noreturn]] void fail(const std::string& message) {
    const std::string got = cur_.kind == Tok::End ? "end of input" : "'" + cur_.text + "'";
    throw ParseError(cur_.line, cur_.column, message + ", got " + got);
  }

  Lexer lexer_;
  Token cur_{};
  std::map<std::string, std::size_t> arity_;
};

}  // namespace

Program parse_program(const std::string& text) { return Parser(text).program(); }

Query parse_query(const std::string& text) { return Parser(text).query(); }

}  // namespace plover
