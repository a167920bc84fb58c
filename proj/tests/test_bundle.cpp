#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "subbundle/errors.hpp"

using namespace testing;

namespace {

FamilySpec cusp_spec(std::vector<std::vector<FieldElement>> points) {
  const auto ctx = VariableContext::make({"x", "y", "z", "w"}, 2);
  const auto base = ctx->base_context();
  return FamilySpec::create(Q(), ctx, Ps({"y^2 - x^3"}, base),
                            Ps({"y^2 - x^3", "y*z - x*w", "w^2 - x*z^2", "x^2*z - y*w"}, ctx), 1,
                            std::move(points));
}

BasePoint bp(std::vector<long long> xs, const FieldSpec& f = FieldSpec::rationals()) {
  return BasePoint{pt(xs, f), std::nullopt, std::nullopt};
}

}  // namespace

TEST_CASE("scalar rank and kernel") {
  const ScalarMatrix m{{q(1), q(2), q(3)}, {q(2), q(4), q(6)}};
  CHECK(scalar_rank(m) == 1);
  const auto k = kernel_basis(m, 3, Q());
  REQUIRE(k.size() == 2);
  for (const auto& v : k) CHECK((v[0] + q(2) * v[1] + q(3) * v[2]).is_zero());
  CHECK(kernel_basis({}, 2, Q()).size() == 2);
  CHECK(scalar_rank({}) == 0);
}

TEST_CASE("family validation") {
  CHECK_NOTHROW(cusp_spec({pt({0, 0}), pt({1, 1})}));
  try {
    cusp_spec({pt({1, 0})});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(1,0)") != std::string::npos);
  }
  CHECK_THROWS_AS(cusp_spec({pt({1})}), ValidationError);
  const auto ctx = VariableContext::make({"x", "y", "z", "w"}, 2);
  CHECK_THROWS_AS(FamilySpec::create(Q(), ctx, {}, Ps({"z"}, ctx), 3, {}), ValidationError);
}

TEST_CASE("base generators are added to the family") {
  const auto ctx = VariableContext::make({"x", "z"}, 1);
  const auto spec = FamilySpec::create(Q(), ctx, Ps({"x"}, ctx->base_context()), Ps({"z"}, ctx), 0, {pt({0})});
  CHECK(spec.notices().size() == 1);
  CHECK(ideal_membership(P("x", ctx), spec.family_ideal()));
}

TEST_CASE("cusp jacobian and fibres") {
  const auto spec = cusp_spec({pt({0, 0}), pt({1, 1}), pt({4, 8})});
  const auto J = jacobian_at_zero(spec);
  const auto base = spec.base_context();
  REQUIRE(J.size() == 4);
  CHECK(J[1][0] == P("y", base));
  CHECK(J[1][1] == P("-x", base));
  CHECK(J[3][0] == P("x^2", base));
  CHECK(J[3][1] == P("-y", base));
  CHECK(J[0][0].is_zero());

  const auto origin = analyze_fiber(spec, bp({0, 0}));
  CHECK(origin.status == FiberStatus::NonReduced);
  CHECK(origin.ideal_text() == "⟨w^2⟩");
  CHECK(origin.fiber_dim == 1u);
  CHECK(origin.tangent_dim == 2);
  CHECK(origin.cone_ok);
  CHECK_FALSE(origin.reduced);

  const auto at48 = analyze_fiber(spec, bp({4, 8}));
  CHECK(at48.status == FiberStatus::ReducedLinear);
  REQUIRE(at48.tangent_basis.size() == 1);
  const auto& v = at48.tangent_basis[0];
  CHECK(v[1] == q(2) * v[0]);

  CHECK_THROWS_AS(fiber_ideal(spec, bp({1, 0})), PointNotOnBase);
}

TEST_CASE("fibres that are not cones or have the wrong dimension") {
  const auto ctx = VariableContext::make({"x", "z"}, 1);
  const auto affine = FamilySpec::create(Q(), ctx, {}, Ps({"z - 1"}, ctx), 0, {pt({0})});
  CHECK(analyze_fiber(affine, bp({0})).status == FiberStatus::NotScalarClosed);
  const auto v = verdict(affine);
  CHECK(v.kind == VerdictKind::HypothesisViolated);

  const auto jump = FamilySpec::create(Q(), ctx, {}, Ps({"x*z"}, ctx), 0, {pt({0}), pt({1})});
  CHECK(analyze_fiber(jump, bp({0})).status == FiberStatus::DimensionMismatch);
  CHECK(analyze_fiber(jump, bp({1})).status == FiberStatus::ReducedLinear);
  CHECK(verdict(jump).kind == VerdictKind::HypothesisViolated);

  const auto empty = FamilySpec::create(Q(), ctx, {}, Ps({"x*z - 1"}, ctx), 0, {pt({0})});
  const auto f = analyze_fiber(empty, bp({0}));
  CHECK_FALSE(f.fiber_dim);
}

TEST_CASE("global certificate for the cusp") {
  const auto spec = cusp_spec({pt({0, 0})});
  const auto c = global_certificate(spec);
  CHECK(c.target_rank == 1);
  CHECK(c.rank_upper_ok);
  CHECK_FALSE(c.rank_lower_ok);
  REQUIRE(c.witness);
  CHECK(is_empty_variety(*c.witness) == false);
  for (const auto& g : c.witness->groebner_basis()) CHECK(evaluate(g, pt({0, 0})).is_zero());
  CHECK_FALSE(c.complete());
}

TEST_CASE("rank drop found only by search is reported") {
  // Fibres over x != 0 are the line z = 0 sampled away from the drop at x = 0.
  const auto ctx = VariableContext::make({"x", "y", "z"}, 1);
  const auto spec = FamilySpec::create(Q(), ctx, {}, Ps({"x*z"}, ctx), 1, {pt({1}), pt({2})});
  const auto v = verdict(spec);
  CHECK(v.kind == VerdictKind::HypothesisViolated);
  REQUIRE_FALSE(v.witness_fibers.empty());
  CHECK(v.witness_fibers[0].point.label() == "(0)");
}

TEST_CASE("verdict is independent of parallel evaluation") {
  const auto spec = corpus("cusp.fam").spec;
  VerdictOptions seq;
  seq.parallel = false;
  const auto a = verdict(spec);
  const auto b = verdict(spec, seq);
  REQUIRE(a.fibers.size() == b.fibers.size());
  for (std::size_t i = 0; i < a.fibers.size(); ++i) {
    CHECK(a.fibers[i].point == b.fibers[i].point);
    CHECK(a.fibers[i].fiber_gb == b.fibers[i].fiber_gb);
  }
  CHECK(a.summary == b.summary);
}

TEST_CASE("rational point search") {
  const auto ctx = VariableContext::make({"x", "y"});
  const Ideal I(ctx, Q(), Ps({"x - 2", "y^2 - 1"}, ctx));
  const auto pts = search_rational_points(I, {});
  REQUIRE(pts.size() == 2);
  CHECK(std::find(pts.begin(), pts.end(), pt({2, -1})) != pts.end());
  CHECK(std::find(pts.begin(), pts.end(), pt({2, 1})) != pts.end());
  const auto f3 = FieldSpec::prime(3);
  const Ideal J(ctx, f3, Ps({"x^2 + 1"}, ctx, f3));
  CHECK(search_rational_points(J, {}).empty());
}

TEST_CASE("kernel presentation rejects a wrong claim") {
  const auto src = VariableContext::make({"x", "y"});
  const auto tgt = VariableContext::make({"t"});
  std::map<std::string, Polynomial> images{{"x", P("t^2", tgt)}, {"y", P("t^3", tgt)}};
  CHECK(verify_kernel_presentation(src, images, Ps({"y^2 - x^3"}, src)));
  const auto bad = check_kernel_presentation(src, images, Ps({"y - x"}, src));
  CHECK_FALSE(bad.verified);
  CHECK_FALSE(bad.claimed_vanish);
  std::map<std::string, Polynomial> partial{{"x", P("t^2", tgt)}};
  CHECK_THROWS_AS(check_kernel_presentation(src, partial, {}), ValidationError);
}

TEST_CASE("closure of an empty family") {
  const auto ctx = VariableContext::make({"x", "z"}, 1);
  const auto spec = FamilySpec::create(Q(), ctx, {}, Ps({"x", "z"}, ctx), 0, {pt({0})});
  const auto r = closure_check(spec, P("x", ctx));
  CHECK(r.empty_family);
  CHECK_FALSE(r.fibers_match);
  CHECK_THROWS_AS(closure_check(spec, P("0", ctx)), ZeroDivisorPolynomial);
}

TEST_CASE("rank drop without rational points is inconclusive") {
  const auto ctx = VariableContext::make({"x", "y", "z"}, 1);
  const auto spec = FamilySpec::create(Q(), ctx, {}, Ps({"(x^2 + 1)*z"}, ctx), 1, {pt({0}), pt({1})});
  const auto v = verdict(spec);
  CHECK(v.kind == VerdictKind::Inconclusive);
  REQUIRE(v.certificate.witness);
  CHECK(v.witness_fibers.empty());
  for (const auto& f : v.fibers) CHECK(f.status == FiberStatus::ReducedLinear);
}
