#pragma once

// Text grammar for rings, polynomials, differential forms, and generalized
// fraction literals.
//
//   ring      :=  ["ring"] ("Q" | "F"<prime>) "[" ident ("," ident)* "]"
//   poly      :=  sum of products of: integer, integer "/" integer, ident,
//                 ident "^" n, "(" poly ")" ["^" n], unary minus
//   form      :=  poly products may also contain wedge factors d<var>;
//                 "∧" and "*" both act as the wedge/product symbol
//   fraction  :=  "[" form "/" "(" poly ["^" n] ("," poly ["^" n])* ")"
//                 ("*" poly "^-" n)* "]"
//
// Inside a polynomial, "/" denotes scalar division and is only accepted when
// followed by an integer; the fraction literal's separating "/" is instead
// followed by "(".

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "residua/errors.hpp"
#include "residua/forms.hpp"
#include "residua/polynomial.hpp"

namespace residua {

namespace detail {

struct Token {
  enum Kind { Int, Ident, Sym, End } kind;
  std::string text;
  mpz_class ival;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(normalize(s)) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }
  bool at_sym(const std::string& s) const {
    return tok_.kind == Token::Sym && tok_.text == s;
  }
  bool accept_sym(const std::string& s) {
    if (!at_sym(s)) return false;
    advance();
    return true;
  }
  void expect_sym(const std::string& s) {
    if (!accept_sym(s))
      throw parse_error("expected '" + s + "' near '" + tok_.text + "'");
  }
  // Lookahead at the first non-space character after the current token's end.
  char next_char() const {
    std::size_t i = pos_;
    while (i < s_.size() && std::isspace(static_cast<unsigned char>(s_[i]))) ++i;
    return i < s_.size() ? s_[i] : '\0';
  }

 private:
  static std::string normalize(const std::string& in) {
    std::string out;
    for (std::size_t i = 0; i < in.size(); ++i) {
      // Map the wedge symbol (U+2227) to '*'.
      if (i + 2 < in.size() && static_cast<unsigned char>(in[i]) == 0xE2 &&
          static_cast<unsigned char>(in[i + 1]) == 0x88 &&
          static_cast<unsigned char>(in[i + 2]) == 0xA7) {
        out += '*';
        i += 2;
      } else {
        out += in[i];
      }
    }
    return out;
  }

  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ >= s_.size()) {
      tok_ = {Token::End, "", 0};
      return;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = pos_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      std::string digits = s_.substr(pos_, j - pos_);
      tok_ = {Token::Int, digits, mpz_class(digits)};
      pos_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = pos_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) ||
                               s_[j] == '_' || s_[j] == '\''))
        ++j;
      tok_ = {Token::Ident, s_.substr(pos_, j - pos_), 0};
      pos_ = j;
      return;
    }
    static const std::string syms = "+-*/^()[],";
    if (syms.find(c) != std::string::npos) {
      tok_ = {Token::Sym, std::string(1, c), 0};
      ++pos_;
      return;
    }
    throw parse_error(std::string("unexpected character '") + c + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
  Token tok_{Token::End, "", 0};
};

}  // namespace detail

// Parses "Q" / "F7" into a field descriptor.
inline FieldDesc parse_field(const std::string& name) {
  if (name == "Q") return FieldDesc::rationals();
  if (name.size() >= 2 && name[0] == 'F') {
    unsigned long p = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i])))
        throw parse_error("bad field name '" + name + "'");
      p = p * 10 + (name[i] - '0');
      if (p >= (1ul << 31)) throw parse_error("prime modulus must be < 2^31");
    }
    if (!is_prime_u32(static_cast<std::uint32_t>(p)))
      throw parse_error("modulus " + std::to_string(p) + " is not prime");
    return FieldDesc::prime(static_cast<std::uint32_t>(p));
  }
  throw parse_error("unknown field '" + name + "' (expected Q or F<p>)");
}

// Parses `ring Q[x,y]` (the leading `ring` keyword is optional).
inline RingPtr parse_ring(const std::string& text) {
  detail::Lexer lx(text);
  auto t = lx.take();
  if (t.kind == detail::Token::Ident && t.text == "ring") t = lx.take();
  if (t.kind != detail::Token::Ident)
    throw parse_error("expected field name in ring literal");
  FieldDesc f = parse_field(t.text);
  lx.expect_sym("[");
  std::vector<std::string> vars;
  while (true) {
    auto v = lx.take();
    if (v.kind != detail::Token::Ident)
      throw parse_error("expected variable name in ring literal");
    vars.push_back(v.text);
    if (lx.accept_sym("]")) break;
    lx.expect_sym(",");
  }
  if (lx.peek().kind != detail::Token::End)
    throw parse_error("trailing characters after ring literal");
  return make_ring(std::move(vars), f);
}

namespace detail {

// Recursive-descent parser over a fixed ring.  Parses forms (0-forms are
// plain polynomials); callers that expect a polynomial reject wedge factors.
template <class K>
class FormParser {
 public:
  FormParser(Lexer& lx, RingPtr ring) : lx_(lx), ring_(std::move(ring)) {}

  Form<K> parse_expr() {
    bool neg = false;
    while (lx_.at_sym("+") || lx_.at_sym("-")) neg ^= lx_.take().text == "-";
    Form<K> acc = parse_term();
    if (neg) acc = acc.negate();
    while (lx_.at_sym("+") || lx_.at_sym("-")) {
      bool minus = lx_.take().text == "-";
      Form<K> rhs = parse_term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

 private:
  Form<K> parse_term() {
    Form<K> acc = parse_factor();
    while (true) {
      if (lx_.at_sym("*")) {
        lx_.take();
        acc = acc.wedge(parse_factor());
      } else if (lx_.at_sym("/")) {
        // Scalar division only; the fraction separator '/' is followed by '('.
        if (lx_.next_char() == '(') break;
        lx_.take();
        auto t = lx_.take();
        if (t.kind != Token::Int)
          throw parse_error("'/' in a polynomial must be followed by an integer");
        mpq_class q(1, t.ival);
        if (t.ival == 0) throw parse_error("division by zero literal");
        acc = acc.scale(FieldOps<K>::from_mpq(q, ring_->field));
      } else if (lx_.peek().kind == Token::Int ||
                 lx_.peek().kind == Token::Ident || lx_.at_sym("(")) {
        // implicit product by juxtaposition: 2x y, (x+1)(x-1)
        acc = acc.wedge(parse_factor());
      } else {
        break;
      }
    }
    return acc;
  }

  Form<K> parse_factor() {
    if (lx_.accept_sym("-")) return parse_factor().negate();
    auto t = lx_.take();
    if (t.kind == Token::Int) {
      mpq_class q(t.ival);
      if (lx_.at_sym("/") && lx_.next_char() != '(') {
        lx_.take();
        auto d = lx_.take();
        if (d.kind != Token::Int || d.ival == 0)
          throw parse_error("bad rational literal");
        q = mpq_class(t.ival, d.ival);
        q.canonicalize();
      }
      return maybe_pow(
          Form<K>::scalar(ring_, FieldOps<K>::from_mpq(q, ring_->field)));
    }
    if (t.kind == Token::Ident) {
      int vi = ring_->index_of(t.text);
      if (vi >= 0)
        return maybe_pow(Form<K>::scalar(ring_, Polynomial<K>::var(ring_, vi)));
      // d<var> is a wedge factor.
      if (t.text.size() > 1 && t.text[0] == 'd') {
        int di = ring_->index_of(t.text.substr(1));
        if (di >= 0) return Form<K>::differential(ring_, di);
      }
      throw parse_error("unknown identifier '" + t.text + "' in ring " +
                        ring_->name());
    }
    if (t.kind == Token::Sym && t.text == "(") {
      Form<K> inner = parse_expr();
      lx_.expect_sym(")");
      return maybe_pow(std::move(inner));
    }
    throw parse_error("unexpected token '" + t.text + "'");
  }

  Form<K> maybe_pow(Form<K> base) {
    if (!lx_.accept_sym("^")) return base;
    auto e = lx_.take();
    if (e.kind != Token::Int)
      throw parse_error("expected nonnegative integer exponent");
    if (!base.is_scalar())
      throw parse_error("cannot raise a differential form to a power");
    return Form<K>::scalar(ring_,
                           base.scalar_part().pow(e.ival.get_ui()));
  }

  Lexer& lx_;
  RingPtr ring_;
};

}  // namespace detail

template <class K>
Form<K> parse_form(const RingPtr& ring, const std::string& text) {
  detail::Lexer lx(text);
  detail::FormParser<K> p(lx, ring);
  Form<K> f = p.parse_expr();
  if (lx.peek().kind != detail::Token::End)
    throw parse_error("trailing characters after expression: '" +
                      lx.peek().text + "'");
  return f;
}

template <class K>
Polynomial<K> parse_poly(const RingPtr& ring, const std::string& text) {
  Form<K> f = parse_form<K>(ring, text);
  if (!f.is_scalar())
    throw parse_error("expected a polynomial, found differential factors");
  return f.scalar_part();
}

}  // namespace residua
