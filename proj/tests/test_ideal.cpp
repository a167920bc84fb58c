#include <algorithm>
#include <numeric>
#include <random>
#include <thread>

#include "doctest.h"
#include "helpers.hpp"
#include "subbundle/errors.hpp"

using namespace testing;

namespace {

// Leibniz formula over all permutations.
Polynomial leibniz(const PolyMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial total(m[0][0].context(), m[0][0].field());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Polynomial term = Polynomial::constant(m[0][0].context(), FieldElement::one(m[0][0].field()));
    for (std::size_t i = 0; i < n; ++i) term = term * m[i][perm[i]];
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("reduced groebner basis of a small ideal") {
  const auto ctx = VariableContext::make({"x", "y"});
  const Ideal I(ctx, Q(), Ps({"x^2 + y", "x*y"}, ctx));
  CHECK(I.groebner_basis() == Ps({"y^2", "x*y", "x^2 + y"}, ctx));
  const Ideal lexI(ctx, Q(), Ps({"x^2 + y", "x*y"}, ctx), MonomialOrder::lex());
  CHECK(lexI.groebner_basis().size() == 3);
}

TEST_CASE("unit and zero ideals") {
  const auto ctx = VariableContext::make({"x", "y"});
  CHECK(Ideal(ctx, Q(), Ps({"x", "x - 1"}, ctx)).is_unit());
  CHECK(Ideal(ctx, Q(), Ps({"0"}, ctx)).is_zero());
  CHECK(Ideal(ctx, Q(), {}).groebner_basis().empty());
  CHECK_FALSE(Ideal(ctx, Q(), Ps({"x*y"}, ctx)).is_unit());
}

TEST_CASE("membership and radical membership") {
  const auto ctx = VariableContext::make({"z", "w"});
  const Ideal I(ctx, Q(), Ps({"w^2"}, ctx));
  CHECK_FALSE(ideal_membership(P("w", ctx), I));
  CHECK(radical_membership(P("w", ctx), I));
  CHECK_FALSE(radical_membership(P("z", ctx), I));
  CHECK(radical_witness_power(P("w", ctx), I, 5) == 2u);
  CHECK_FALSE(radical_witness_power(P("z", ctx), I, 5));
  CHECK(radical_membership(P("z*w + w", ctx), I));
}

TEST_CASE("elimination gives the twisted cubic") {
  const auto ctx = VariableContext::make({"t", "x", "y", "z"});
  const Ideal graph(ctx, Q(), Ps({"x - t", "y - t^2", "z - t^3"}, ctx));
  const auto E = elimination_ideal(graph, {"t"});
  const auto xyz = E.context();
  CHECK(xyz->names() == std::vector<std::string>{"x", "y", "z"});
  const Ideal expected(xyz, Q(), Ps({"y - x^2", "z - x*y", "x*z - y^2"}, xyz));
  CHECK(ideal_equal(E, expected));
}

TEST_CASE("saturation removes an embedded component") {
  const auto ctx = VariableContext::make({"x", "y"});
  const Ideal I(ctx, Q(), Ps({"x*y", "y^2"}, ctx));
  const auto S = saturation(I, P("x", ctx));
  CHECK(ideal_equal(S, Ideal(ctx, Q(), Ps({"y"}, ctx))));
  CHECK(ideal_equal(saturation(I, P("3", ctx)), I));
  CHECK_THROWS_AS(saturation(I, P("0", ctx)), ZeroDivisorPolynomial);
  CHECK(saturation(I, P("y", ctx)).is_unit());
}

TEST_CASE("krull dimension") {
  const auto ctx = VariableContext::make({"x", "y", "z"});
  CHECK(krull_dimension(Ideal(ctx, Q(), {})) == 3u);
  CHECK(krull_dimension(Ideal(ctx, Q(), Ps({"x*y"}, ctx))) == 2u);
  CHECK(krull_dimension(Ideal(ctx, Q(), Ps({"x", "y", "z"}, ctx))) == 0u);
  CHECK(krull_dimension(Ideal(ctx, Q(), Ps({"x*z", "y*z"}, ctx))) == 2u);
  CHECK_FALSE(krull_dimension(Ideal(ctx, Q(), Ps({"1"}, ctx))));
  CHECK(is_empty_variety(Ideal(ctx, Q(), Ps({"x", "x + 1"}, ctx))));
}

TEST_CASE("determinants agree with the Leibniz formula") {
  std::mt19937 rng(11);
  const auto ctx = VariableContext::make({"a", "b"});
  const std::vector<std::string> pool{"a", "b", "a*b - 1", "2", "0", "a^2 + b", "-b", "3*a - 2*b"};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      PolyMatrix m(n, std::vector<Polynomial>(n, P("0", ctx)));
      for (auto& row : m)
        for (auto& e : row) e = P(pool[pick(rng)], ctx);
      CHECK(determinant(m) == leibniz(m));
    }
  }
}

TEST_CASE("minors") {
  const auto ctx = VariableContext::make({"x", "y"});
  const PolyMatrix J{{P("0", ctx), P("0", ctx)}, {P("y", ctx), P("-x", ctx)}, {P("x^2", ctx), P("-y", ctx)}};
  const auto m2 = matrix_minors(J, 2);
  REQUIRE(m2.size() == 3);
  CHECK(m2[0].is_zero());
  CHECK(m2[1].is_zero());
  CHECK(m2[2] == P("x^3 - y^2", ctx));
  CHECK(matrix_minors(J, 1).size() == 6);
  CHECK_THROWS_AS(matrix_minors(J, 3), BadMinorSize);
  CHECK_THROWS_AS(matrix_minors(J, 0), BadMinorSize);
}

TEST_CASE("resource limits are reported") {
  const auto ctx = VariableContext::make({"x", "y", "z"});
  GroebnerLimits tight;
  tight.max_pairs = 1;
  const Ideal I(ctx, Q(), Ps({"x^3 - y*z", "y^3 - x*z", "z^3 - x*y"}, ctx), MonomialOrder::grevlex(), tight);
  CHECK_THROWS_AS(I.groebner_basis(), ResourceLimit);
}

TEST_CASE("fresh variables avoid collisions") {
  const VariableContext ctx({"x", "_u"});
  CHECK(fresh_variable(ctx) == "_u2");
  CHECK(fresh_variable(VariableContext({"x"})) == "_u");
}

TEST_CASE("groebner basis is shared safely between threads") {
  const auto ctx = VariableContext::make({"x", "y", "z"});
  const Ideal I(ctx, Q(), Ps({"x^2 - y", "y^2 - z", "z^2 - x"}, ctx));
  std::vector<std::vector<Polynomial>> seen(4);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < seen.size(); ++i) threads.emplace_back([&, i] { seen[i] = I.groebner_basis(); });
  for (auto& t : threads) t.join();
  for (const auto& s : seen) CHECK(s == seen[0]);
}
