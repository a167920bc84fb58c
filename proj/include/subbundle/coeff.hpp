#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

namespace subbundle {

/// The coefficient field: either the rationals or a prime field F_p.
class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
  /// Throws ValidationError unless p is a prime below 2^62.
  static FieldSpec prime(std::uint64_t p);

  Kind kind() const noexcept { return kind_; }
  bool is_prime_field() const noexcept { return kind_ == Kind::PrimeField; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const noexcept { return p_; }

  /// `Q` or `Fp <p>`, the form used in family files.
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

/// An exact scalar of a FieldSpec. Rationals are kept in lowest terms with a
/// positive denominator; prime-field residues are kept in [0, p).
class FieldElement {
 public:
  /// Rational zero.
  FieldElement() : spec_(FieldSpec::rationals()), value_(mpq_class(0)) {}

  static FieldElement zero(const FieldSpec& spec) { return from_int(0, spec); }
  static FieldElement one(const FieldSpec& spec) { return from_int(1, spec); }
  static FieldElement from_int(long long n, const FieldSpec& spec);
  static FieldElement from_integer(const mpz_class& n, const FieldSpec& spec);
  /// num/den; throws DivisionByZero when den maps to zero in the field.
  static FieldElement from_fraction(const mpz_class& num, const mpz_class& den, const FieldSpec& spec);
  /// Parses `[-]digits[/digits]`; throws std::invalid_argument on malformed text.
  static FieldElement parse(const std::string& text, const FieldSpec& spec);

  const FieldSpec& spec() const noexcept { return spec_; }
  bool is_zero() const;
  bool is_one() const;
  /// Sign of the rational value; for residues 0 or 1.
  int sign() const;

  FieldElement operator-() const;
  FieldElement inverse() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

  FieldElement pow(unsigned long e) const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);

  /// `-3/4`, `7`; residues print as non-negative integers.
  std::string to_string() const;

  /// Rational view; meaningful only over Q.
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  /// Residue view; meaningful only over F_p.
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }

 private:
  FieldElement(const FieldSpec& spec, mpq_class q) : spec_(spec), value_(std::move(q)) {}
  FieldElement(const FieldSpec& spec, std::uint64_t r) : spec_(spec), value_(r) {}

  void require_same_field(const FieldElement& other) const;

  FieldSpec spec_;
  std::variant<mpq_class, std::uint64_t> value_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& a);

}  // namespace subbundle
