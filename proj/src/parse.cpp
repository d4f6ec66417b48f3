#include "bddts/parse.hpp"

#include <algorithm>
#include <cctype>

#include "bddts/error.hpp"

namespace bddts {

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == s_.size()) break;
      std::size_t start = pos_;
      char c = s_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        out.push_back({Tok::Ident, std::string(s_.substr(start, pos_ - start)), start + 1});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        out.push_back({Tok::Int, std::string(s_.substr(start, pos_ - start)), start + 1});
      } else {
        static const char* two[] = {"&&", "||", "=>", "==", "!=", "<=", ">=", "::"};
        std::string sym(1, c);
        for (const char* t : two) {
          if (s_.substr(pos_, 2) == t) sym = t;
        }
        if (sym.size() == 1 && std::string_view("!<>+-()[],@").find(c) == std::string_view::npos) {
          throw Error(ErrorCode::ParseError,
                      "column " + std::to_string(start + 1) + ": unexpected character '" + sym + "'");
        }
        pos_ += sym.size();
        out.push_back({Tok::Sym, sym, start + 1});
      }
    }
    out.push_back({Tok::End, "", s_.size() + 1});
    return out;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, const SortTable& vars, const DomainSpec& d)
      : toks_(Lexer(text).run()), vars_(vars), d_(d) {}

  Term run() {
    Term t = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool at(const char* sym) const { return peek().kind == Tok::Sym && peek().text == sym; }
  bool accept(const char* sym) {
    if (!at(sym)) return false;
    ++i_;
    return true;
  }
  void want(const char* sym) {
    if (!accept(sym)) fail(std::string("expected '") + sym + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, "column " + std::to_string(peek().col) + ": " + msg);
  }

  Term implication() {
    Term lhs = disjunction();
    if (accept("=>")) return Term::apply(Op::Implies, {lhs, implication()});
    return lhs;
  }

  Term disjunction() {
    std::vector<Term> xs{conjunction()};
    while (accept("||")) xs.push_back(conjunction());
    return xs.size() == 1 ? xs[0] : Term::apply(Op::Or, std::move(xs));
  }

  Term conjunction() {
    std::vector<Term> xs{negation()};
    while (accept("&&")) xs.push_back(negation());
    return xs.size() == 1 ? xs[0] : Term::apply(Op::And, std::move(xs));
  }

  Term negation() {
    if (accept("!")) return Term::apply(Op::Not, {negation()});
    return comparison();
  }

  Term comparison() {
    Term lhs = sum();
    static const std::pair<const char*, Op> ops[] = {{"==", Op::Eq}, {"!=", Op::Ne}, {"<=", Op::Le},
                                                     {">=", Op::Ge}, {"<", Op::Lt},   {">", Op::Gt}};
    for (const auto& [sym, op] : ops) {
      if (accept(sym)) return Term::apply(op, {lhs, sum()});
    }
    return lhs;
  }

  Term sum() {
    Term t = primary();
    while (true) {
      if (accept("+")) {
        t = Term::apply(Op::Add, {t, primary()});
      } else if (accept("-")) {
        t = Term::apply(Op::Sub, {t, primary()});
      } else {
        return t;
      }
    }
  }

  std::int64_t number(bool negative) {
    if (peek().kind != Tok::Int) fail("expected integer");
    std::int64_t v;
    try {
      v = std::stoll(peek().text);
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
    ++i_;
    return negative ? -v : v;
  }

  Term primary() {
    if (accept("(")) {
      Term t = implication();
      want(")");
      return t;
    }
    if (accept("-")) return Term::integer(number(true));
    if (peek().kind == Tok::Int) return Term::integer(number(false));
    if (accept("[")) {
      std::vector<Term> xs;
      if (!accept("]")) {
        do {
          xs.push_back(implication());
        } while (accept(","));
        want("]");
      }
      Term lit = Term::apply(Op::ListLit, xs);
      bool ground = true;
      std::vector<Value> vals;
      for (const auto& x : xs) {
        ground = ground && x.op() == Op::Const;
        if (ground) vals.push_back(x.value());
      }
      return ground ? Term::constant(Value::list(std::move(vals)), lit.type()) : lit;
    }
    if (peek().kind != Tok::Ident) fail(peek().kind == Tok::End ? "unexpected end of term" : "unexpected '" + peek().text + "'");
    std::size_t col = peek().col;
    std::string name = peek().text;
    ++i_;
    if (name == "true") return Term::boolean(true);
    if (name == "false") return Term::boolean(false);
    if (name == "contains" && at("(")) {
      want("(");
      Term list = implication();
      want(",");
      Term elem = implication();
      want(")");
      return Term::apply(Op::Contains, {list, elem});
    }
    if (accept("::")) {
      if (peek().kind != Tok::Ident) fail("expected enumeration literal");
      std::string lit = peek().text;
      ++i_;
      if (!d_.has(name) || d_.sort(name).kind != Sort::Kind::Enum) {
        throw Error(ErrorCode::UnknownGateOrVariable,
                    "column " + std::to_string(col) + ": unknown enumeration sort " + name);
      }
      const auto& lits = d_.sort(name).literals;
      if (std::find(lits.begin(), lits.end(), lit) == lits.end()) {
        throw Error(ErrorCode::UnknownGateOrVariable,
                    "column " + std::to_string(col) + ": " + name + " has no literal " + lit);
      }
      return Term::constant(Value::enumeration(name, lit), Type::enumeration(name));
    }
    int time = 0;
    if (accept("@")) time = static_cast<int>(number(false));
    auto it = vars_.find(name);
    if (it == vars_.end()) {
      throw Error(ErrorCode::UnknownGateOrVariable,
                  "column " + std::to_string(col) + ": unknown variable " + name);
    }
    return Term::variable({name, time}, it->second, d_.typeOf(it->second));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const SortTable& vars_;
  const DomainSpec& d_;
};

bool fits(const Value& v, const std::string& sort, const DomainSpec& d) {
  for (const auto& u : d.universe(sort)) {
    if (u == v) return true;
  }
  return false;
}

}  // namespace

Term parseTerm(std::string_view text, const SortTable& vars, const DomainSpec& d) {
  return Parser(text, vars, d).run();
}

Value parseValue(std::string_view text, const std::string& sort, const DomainSpec& d) {
  Term t = parseTerm(text, {}, d);
  if (!t.isGround()) throw Error(ErrorCode::ParseError, "not a constant: " + std::string(text));
  Value v = evaluate(t, {});
  if (!fits(v, sort, d)) {
    throw Error(ErrorCode::SortMismatch, v.str() + " is not a value of sort " + sort);
  }
  return v;
}

}  // namespace bddts
