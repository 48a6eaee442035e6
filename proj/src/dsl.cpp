#include "conequant/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace conequant {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::invalid_argument(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
public:
  Parser(const std::string& text, std::size_t n) : s_(text), n_(n) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

private:
  const std::string& s_;
  std::size_t n_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
    if (s_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  static ExprPtr node(Expr::Kind kind, std::size_t pos, std::vector<ExprPtr> children) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->position = pos;
    e->children = std::move(children);
    return e;
  }

  ExprPtr expr() {
    ExprPtr left = term();
    for (;;) {
      skip();
      const std::size_t at = pos_;
      if (accept('+')) {
        left = node(Expr::Kind::add, at, {left, term()});
      } else if (accept('-')) {
        left = node(Expr::Kind::subtract, at, {left, term()});
      } else {
        return left;
      }
    }
  }

  ExprPtr term() {
    ExprPtr left = unary();
    for (;;) {
      skip();
      const std::size_t at = pos_;
      if (accept('*')) {
        left = node(Expr::Kind::multiply, at, {left, unary()});
      } else if (accept('/')) {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          throw ParseError("division is only by a number literal", pos_);
        ExprPtr divisor = number();
        if (divisor->value.is_zero()) throw ParseError("division by zero", divisor->position);
        left = node(Expr::Kind::divide, at, {left, divisor});
      } else {
        return left;
      }
    }
  }

  ExprPtr unary() {
    skip();
    const std::size_t at = pos_;
    if (accept('-')) return node(Expr::Kind::negate, at, {unary()});
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    skip();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("exponent must be a nonnegative integer", pos_);
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ - start > 4) throw ParseError("exponent too large", start);
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::power;
    e->position = at;
    e->exponent = std::stoi(s_.substr(start, pos_ - start));
    e->children = {base};
    return e;
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    mpz_class num(s_.substr(start, pos_ - start));
    mpz_class den = 1;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      const std::size_t frac = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == frac) throw ParseError("digits expected after decimal point", pos_);
      for (std::size_t k = frac; k < pos_; ++k) {
        num = num * 10 + (s_[k] - '0');
        den *= 10;
      }
    }
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::number;
    e->position = start;
    mpq_class q(num, den);
    q.canonicalize();
    e->value = Scalar(q);
    return e;
  }

  ExprPtr variable(Expr::Kind kind) {
    const std::size_t start = pos_;
    ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) throw ParseError("variable index expected", pos_);
    if (pos_ - digits > 6) throw ParseError("variable index out of range", start);
    const long k = std::stol(s_.substr(digits, pos_ - digits));
    if (k < 1 || static_cast<std::size_t>(k) > n_)
      throw ParseError("variable index " + std::to_string(k) + " out of range 1.." + std::to_string(n_), start);
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->position = start;
    e->index = static_cast<std::size_t>(k - 1);
    return e;
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    const std::size_t at = pos_;
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (c == 'z') return variable(Expr::Kind::coordinate);
    if (c == 'd') return variable(Expr::Kind::derivative);
    if (c == 'i') {
      ++pos_;
      if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("unknown symbol", at);
      return node(Expr::Kind::imaginary_unit, at, {});
    }
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expr();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      ExprPtr a = expr();
      expect(',');
      ExprPtr b = expr();
      expect(']');
      return node(Expr::Kind::bracket, at, {a, b});
    }
    if (std::isalpha(static_cast<unsigned char>(c))) throw ParseError("unknown symbol", at);
    throw ParseError("unexpected '" + std::string(1, c) + "'", at);
  }
};

}  // namespace

ExprPtr parse_expr(const std::string& text, std::size_t n) {
  if (n < 1) throw std::invalid_argument("parse_expr: dimension must be at least 1");
  return Parser(text, n).parse();
}

WeylElement elaborate(const Expr& e, std::size_t n) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::number: return WeylElement::constant(n, e.value);
    case K::imaginary_unit: return WeylElement::constant(n, Scalar::i());
    case K::coordinate: return WeylElement::z(n, e.index);
    case K::derivative: return WeylElement::d(n, e.index);
    case K::negate: return -elaborate(*e.children[0], n);
    case K::add: return elaborate(*e.children[0], n) + elaborate(*e.children[1], n);
    case K::subtract: return elaborate(*e.children[0], n) - elaborate(*e.children[1], n);
    case K::multiply: return normal_mul(elaborate(*e.children[0], n), elaborate(*e.children[1], n));
    case K::divide: return elaborate(*e.children[0], n) * e.children[1]->value.inverse();
    case K::power: {
      const WeylElement base = elaborate(*e.children[0], n);
      WeylElement out = WeylElement::constant(n, Scalar(1));
      for (int k = 0; k < e.exponent; ++k) out = normal_mul(out, base);
      return out;
    }
    case K::bracket: return commutator(elaborate(*e.children[0], n), elaborate(*e.children[1], n));
  }
  throw std::logic_error("elaborate: unknown node");
}

WeylElement parse_operator(const std::string& text, std::size_t n) { return elaborate(*parse_expr(text, n), n); }

namespace {

// Returns the sign-stripped coefficient text and whether it is negative.
std::pair<std::string, bool> coefficient_text(const Scalar& c) {
  const int sr = sgn(c.re());
  const int si = sgn(c.im());
  if (si == 0) {
    const mpq_class a = abs(c.re());
    return {a.get_str(), sr < 0};
  }
  if (sr == 0) {
    const mpq_class b = abs(c.im());
    return {b == 1 ? std::string("i") : b.get_str() + "*i", si < 0};
  }
  const mpq_class b = abs(c.im());
  const std::string imag = b == 1 ? std::string("i") : b.get_str() + "*i";
  return {"(" + c.re().get_str() + (si < 0 ? " - " : " + ") + imag + ")", false};
}

std::string monomial_text(const MultiIndex& exps, char symbol) {
  std::string s;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (exps[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += symbol + std::to_string(k + 1);
    if (exps[k] > 1) s += "^" + std::to_string(exps[k]);
  }
  return s;
}

}  // namespace

std::string format_expr(const WeylElement& e) {
  struct Term {
    int degree;
    MultiIndex z;
    MultiIndex d;
    Scalar c;
  };
  std::vector<Term> terms;
  for (const auto& [alpha, p] : e.terms())
    for (const auto& [beta, c] : p.terms()) terms.push_back({total_degree(beta) + total_degree(alpha), beta, alpha, c});
  if (terms.empty()) return "0";
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return std::tie(a.degree, a.z, a.d) > std::tie(b.degree, b.z, b.d);
  });
  std::string out;
  for (const auto& t : terms) {
    std::string mono = monomial_text(t.z, 'z');
    const std::string dpart = monomial_text(t.d, 'd');
    if (!dpart.empty()) mono += (mono.empty() ? "" : "*") + dpart;
    auto [coef, negative] = coefficient_text(t.c);
    std::string body;
    if (mono.empty()) {
      body = coef;
    } else if (coef == "1") {
      body = mono;
    } else {
      body = coef + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace conequant
