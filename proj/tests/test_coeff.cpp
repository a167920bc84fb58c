#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "subbundle/errors.hpp"

using namespace testing;

TEST_CASE("rational arithmetic is exact") {
  const auto a = FieldElement::parse("1/3", Q());
  const auto b = FieldElement::parse("-2/6", Q());
  CHECK((a + b).is_zero());
  CHECK((a * q(3)).is_one());
  CHECK((a / b) == q(-1));
  CHECK(b.to_string() == "-1/3");
  CHECK(b.sign() == -1);
  CHECK(q(2).pow(100).to_string() == "1267650600228229401496703205376");
}

TEST_CASE("prime field residues") {
  const auto f5 = FieldSpec::prime(5);
  CHECK(q(-1, f5).to_string() == "4");
  CHECK(q(7, f5) == q(2, f5));
  CHECK((q(2, f5) * q(3, f5)).is_one());
  CHECK(q(3, f5).inverse() == q(2, f5));
  CHECK(FieldElement::parse("1/2", f5) == q(3, f5));
  CHECK(f5.to_string() == "Fp 5");
  CHECK(Q().to_string() == "Q");
}

TEST_CASE("field errors") {
  CHECK_THROWS_AS(FieldSpec::prime(4), ValidationError);
  CHECK_THROWS_AS(FieldSpec::prime(1), ValidationError);
  CHECK_THROWS_AS(q(0).inverse(), DivisionByZero);
  CHECK_THROWS_AS(q(1) / q(0), DivisionByZero);
  CHECK_THROWS_AS(q(0, FieldSpec::prime(3)).inverse(), DivisionByZero);
  CHECK_THROWS_AS(q(1) + q(1, FieldSpec::prime(3)), MixedFields);
  CHECK_THROWS_AS(FieldElement::parse("abc", Q()), std::invalid_argument);
  CHECK_THROWS_AS(FieldElement::parse("1/0", Q()), std::exception);
}

TEST_CASE("large prime multiplication does not overflow") {
  const std::uint64_t p = 4611686018427387847ULL;  // largest prime below 2^62
  const auto f = FieldSpec::prime(p);
  const auto a = q(-1, f);
  CHECK((a * a).is_one());
  CHECK(a.to_string() == std::to_string(p - 1));
}

TEST_CASE("prime field axioms on random samples") {
  std::mt19937 rng(17);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 101ULL, 65537ULL}) {
    const auto f = FieldSpec::prime(p);
    std::uniform_int_distribution<long long> dist(-1000000, 1000000);
    for (int i = 0; i < 200; ++i) {
      const auto a = q(dist(rng), f), b = q(dist(rng), f), c = q(dist(rng), f);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - b) + b == a);
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      CHECK(a.pow(p) == a);
    }
  }
}

TEST_CASE("rational field axioms on random samples") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long long> dist(-50, 50);
  auto frac = [&] {
    long long d = dist(rng);
    if (d == 0) d = 1;
    return FieldElement::from_fraction(mpz_class(static_cast<long>(dist(rng))), mpz_class(static_cast<long>(d)), Q());
  };
  for (int i = 0; i < 300; ++i) {
    const auto a = frac(), b = frac(), c = frac();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}
