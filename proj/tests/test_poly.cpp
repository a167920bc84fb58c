#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "subbundle/errors.hpp"

using namespace testing;

namespace {

ContextPtr xyzw() { return VariableContext::make({"x", "y", "z", "w"}, 2); }

Polynomial random_poly(std::mt19937& rng, const ContextPtr& ctx, const FieldSpec& f, int terms, unsigned maxdeg) {
  std::uniform_int_distribution<long long> coeff(-5, 5);
  std::uniform_int_distribution<unsigned> exp(0, maxdeg);
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    std::vector<Monomial::Exponent> e(ctx->size());
    for (auto& x : e) x = exp(rng);
    ts.push_back({Monomial(e), q(coeff(rng), f)});
  }
  return Polynomial::from_terms(ctx, f, ts);
}

std::vector<FieldElement> random_point(std::mt19937& rng, std::size_t n, const FieldSpec& f) {
  std::uniform_int_distribution<long long> d(-7, 7);
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(q(d(rng), f));
  return out;
}

}  // namespace

TEST_CASE("variable contexts") {
  const auto ctx = xyzw();
  CHECK(ctx->base_count() == 2);
  CHECK(ctx->fiber_count() == 2);
  CHECK(ctx->index("w") == 3);
  CHECK_FALSE(ctx->find("t"));
  CHECK_THROWS_AS(ctx->index("t"), UnknownVariable);
  CHECK(ctx->base_context()->names() == std::vector<std::string>{"x", "y"});
  CHECK(ctx->fiber_context()->names() == std::vector<std::string>{"z", "w"});
  CHECK_THROWS_AS(VariableContext::make({"x", "x"}), ValidationError);
  CHECK_THROWS_AS(VariableContext::make({"x"})->base_count(), NoBlockSplit);
  CHECK(same_context(xyzw(), ctx));
}

TEST_CASE("monomial orders") {
  const Monomial a({2, 0, 0}), b({1, 1, 1}), c({0, 3, 0});
  CHECK(MonomialOrder::lex().compare(a, b) == std::strong_ordering::greater);
  CHECK(MonomialOrder::grevlex().compare(b, a) == std::strong_ordering::greater);
  CHECK(MonomialOrder::grevlex().compare(c, b) == std::strong_ordering::greater);
  // x*z < y^2 in grevlex of degree two
  CHECK(MonomialOrder::grevlex().compare(Monomial({1, 0, 1}), Monomial({0, 2, 0})) == std::strong_ordering::less);
  const auto elim = MonomialOrder::block_elim({false, false, true});
  CHECK(elim.compare(Monomial({0, 0, 1}), Monomial({5, 5, 0})) == std::strong_ordering::greater);
  CHECK(Monomial({1, 2}).lcm(Monomial({2, 1})) == Monomial({2, 2}));
  CHECK(Monomial({1, 0}).coprime_with(Monomial({0, 3})));
  CHECK(Monomial({1, 1}).divides(Monomial({2, 1})));
  CHECK_THROWS_AS(Monomial(std::vector<Monomial::Exponent>{0xFFFFFFFFu}) * Monomial(std::vector<Monomial::Exponent>{1}), ExponentOverflow);
}

TEST_CASE("parsing and printing") {
  const auto ctx = xyzw();
  const auto f = P("w^2 - x*z^2", ctx);
  CHECK(f.to_string() == "-x*z^2 + w^2");
  CHECK(P("2x y - 3", ctx).to_string() == "2*x*y - 3");
  CHECK(P("(x+y)^2", ctx) == P("x^2 + 2*x*y + y^2", ctx));
  CHECK(P("1/2 x", ctx).to_string() == "1/2*x");
  CHECK(P("0", ctx).is_zero());
  CHECK(P("-x + x", ctx).is_zero());
  CHECK(P("x - 1", ctx, FieldSpec::prime(5)).to_string() == "x - 1");
  CHECK(polynomial_identifiers("t^2 + s*t - u") == std::vector<std::string>{"t", "s", "u"});
}

TEST_CASE("parse errors carry a column") {
  const auto ctx = xyzw();
  try {
    P("x + q", ctx);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 5);
    CHECK(e.message().find("unknown variable 'q'") != std::string::npos);
  }
  CHECK_THROWS_AS(P("x +", ctx), ParseError);
  CHECK_THROWS_AS(P("(x", ctx), ParseError);
  CHECK_THROWS_AS(P("x^", ctx), ParseError);
  CHECK_THROWS_AS(P("x ) y", ctx), ParseError);
}

TEST_CASE("partial derivatives, substitution and specialization") {
  const auto ctx = xyzw();
  const auto f = P("x^2*z - y*w", ctx);
  CHECK(partial_derivative(f, "z") == P("x^2", ctx));
  CHECK(partial_derivative(f, "w") == P("-y", ctx));
  CHECK(partial_derivative(f, "x") == P("2*x*z", ctx));

  const auto tctx = VariableContext::make({"t", "z"});
  std::map<std::string, Polynomial> images{
      {"x", P("t^2", tctx)}, {"y", P("t^3", tctx)}, {"z", P("z", tctx)}, {"w", P("t*z", tctx)}};
  CHECK(substitute(f, images, tctx).is_zero());
  CHECK(substitute(P("w^2 - x*z^2", ctx), images, tctx).is_zero());
  CHECK(substitute(P("x", ctx), images, tctx) == P("t^2", tctx));

  const auto g = specialize(P("y*z - x*w", ctx), {{"x", q(4)}, {"y", q(8)}});
  CHECK(g == P("8*z - 4*w", ctx));
  CHECK(evaluate(P("y^2 - x^3", ctx), pt({4, 8, 0, 0})).is_zero());
}

TEST_CASE("components") {
  const auto ctx = xyzw();
  const auto f = P("z^2 + x*z + w + 3 + x", ctx);
  const auto comps = fiber_degree_components(f);
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == P("3 + x", ctx));
  CHECK(comps[1] == P("x*z + w", ctx));
  CHECK(comps[2] == P("z^2", ctx));
  const auto lin = fiber_linear_part(f);
  REQUIRE(lin.size() == 2);
  CHECK(lin[0].to_string() == "x");
  CHECK(lin[1].to_string() == "1");
}

TEST_CASE("ring axioms and evaluation homomorphism on random polynomials") {
  std::mt19937 rng(2024);
  for (const auto& field : {Q(), FieldSpec::prime(7)}) {
    const auto ctx = VariableContext::make({"a", "b", "c"});
    for (int i = 0; i < 100; ++i) {
      const auto f = random_poly(rng, ctx, field, 4, 3);
      const auto g = random_poly(rng, ctx, field, 3, 2);
      const auto h = random_poly(rng, ctx, field, 3, 2);
      CHECK(f * (g + h) == f * g + f * h);
      CHECK((f - g) + g == f);
      CHECK(f * g == g * f);
      const auto p = random_point(rng, 3, field);
      CHECK(evaluate(f * g, p) == evaluate(f, p) * evaluate(g, p));
      CHECK(evaluate(f + g, p) == evaluate(f, p) + evaluate(g, p));
      CHECK(evaluate(f.pow(3), p) == evaluate(f, p).pow(3));
      CHECK(parse_polynomial(f.to_string(), ctx, field) == f);
    }
  }
}

TEST_CASE("product rule for partial derivatives") {
  std::mt19937 rng(99);
  const auto ctx = VariableContext::make({"a", "b"});
  for (int i = 0; i < 50; ++i) {
    const auto f = random_poly(rng, ctx, Q(), 3, 3);
    const auto g = random_poly(rng, ctx, Q(), 3, 3);
    CHECK(partial_derivative(f * g, "a") == partial_derivative(f, "a") * g + f * partial_derivative(g, "a"));
  }
}

TEST_CASE("mixed contexts are rejected") {
  const auto a = P("x", xyzw());
  const auto b = P("x", VariableContext::make({"x"}));
  CHECK_THROWS_AS(a + b, ContextMismatch);
  CHECK_THROWS_AS(a * P("x", xyzw(), FieldSpec::prime(3)), MixedFields);
}
