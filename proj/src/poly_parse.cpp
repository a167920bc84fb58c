#include <cctype>
#include <limits>

#include "subbundle/errors.hpp"
#include "subbundle/poly.hpp"

namespace subbundle {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class PolyParser {
 public:
  PolyParser(std::string_view text, const ContextPtr& ctx, const FieldSpec& field, MonomialOrder order)
      : text_(text), ctx_(ctx), field_(field), order_(std::move(order)) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("expected a polynomial");
    Polynomial p = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(1, pos_ + 1, message); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  Polynomial expr() {
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_space();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= factor();
      } else if (ident_start(c) || digit(c) || c == '(') {
        acc *= factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const auto e = integer("expected an exponent after '^'");
      if (e > std::numeric_limits<Monomial::Exponent>::max()) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class integer(const char* message) {
    const auto start = pos_;
    while (!at_end() && digit(text_[pos_])) ++pos_;
    if (start == pos_) fail(message);
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (digit(c)) {
      const auto start = pos_;
      mpz_class num = integer("expected a number");
      mpz_class den = 1;
      if (peek() == '/') {
        ++pos_;
        den = integer("expected a denominator after '/'");
        if (den == 0) {
          pos_ = start;
          fail("zero denominator");
        }
      }
      FieldElement value = FieldElement::from_integer(num, field_);
      const FieldElement d = FieldElement::from_integer(den, field_);
      if (d.is_zero()) {
        pos_ = start;
        fail("denominator vanishes in the coefficient field");
      }
      value = value / d;
      return Polynomial::constant(ctx_, value, order_);
    }
    if (ident_start(c)) {
      const auto start = pos_;
      while (!at_end() && ident_char(text_[pos_])) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (!ctx_->find(name)) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ctx_, field_, name, order_);
    }
    if (at_end()) fail("unexpected end of polynomial");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const ContextPtr& ctx_;
  FieldSpec field_;
  MonomialOrder order_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const ContextPtr& ctx, const FieldSpec& field,
                            MonomialOrder order) {
  return PolyParser(text, ctx, field, std::move(order)).parse();
}

std::vector<std::string> polynomial_identifiers(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (ident_start(text[i])) {
      const auto start = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      std::string name(text.substr(start, i - start));
      bool seen = false;
      for (const auto& n : out) seen = seen || n == name;
      if (!seen) out.push_back(std::move(name));
    } else if (digit(text[i])) {
      while (i < text.size() && digit(text[i])) ++i;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace subbundle
