#include "subbundle/coeff.hpp"

#include <ostream>
#include <stdexcept>

#include "subbundle/errors.hpp"

namespace subbundle {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e != 0) {
    if (e & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1U;
  }
  return result;
}

std::uint64_t reduce_integer(const mpz_class& n, std::uint64_t p) {
  mpz_class r;
  mpz_class modulus;
  mpz_import(modulus.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), modulus.get_mpz_t());
  std::uint64_t out = 0;
  if (r != 0) mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 62)) throw ValidationError("characteristic " + std::to_string(p) + " too large");
  if (!is_prime(p)) throw ValidationError("characteristic " + std::to_string(p) + " is not prime");
  return FieldSpec(Kind::PrimeField, p);
}

std::string FieldSpec::to_string() const {
  return kind_ == Kind::Rationals ? "Q" : "Fp " + std::to_string(p_);
}

FieldElement FieldElement::from_int(long long n, const FieldSpec& spec) {
  return from_integer(mpz_class(static_cast<long>(n)), spec);
}

FieldElement FieldElement::from_integer(const mpz_class& n, const FieldSpec& spec) {
  if (spec.is_prime_field()) return FieldElement(spec, reduce_integer(n, spec.characteristic()));
  return FieldElement(spec, mpq_class(n));
}

FieldElement FieldElement::from_fraction(const mpz_class& num, const mpz_class& den, const FieldSpec& spec) {
  return from_integer(num, spec) / from_integer(den, spec);
}

FieldElement FieldElement::parse(const std::string& text, const FieldSpec& spec) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  const auto slash = body.find('/');
  const std::string num_text = body.substr(0, slash);
  const std::string den_text = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw std::invalid_argument("malformed field literal '" + text + "'");
  }
  mpz_class num(num_text);
  if (negative) num = -num;
  return from_fraction(num, mpz_class(den_text), spec);
}

bool FieldElement::is_zero() const {
  if (spec_.is_prime_field()) return residue() == 0;
  return sgn(rational()) == 0;
}

bool FieldElement::is_one() const {
  if (spec_.is_prime_field()) return residue() == 1;
  return rational() == 1;
}

int FieldElement::sign() const {
  if (spec_.is_prime_field()) return residue() == 0 ? 0 : 1;
  return sgn(rational());
}

void FieldElement::require_same_field(const FieldElement& other) const {
  if (spec_ != other.spec_) throw MixedFields();
}

FieldElement FieldElement::operator-() const {
  if (spec_.is_prime_field()) {
    const auto p = spec_.characteristic();
    return FieldElement(spec_, residue() == 0 ? std::uint64_t{0} : p - residue());
  }
  return FieldElement(spec_, mpq_class(-rational()));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (spec_.is_prime_field()) {
    const auto p = spec_.characteristic();
    return FieldElement(spec_, pow_mod(residue(), p - 2, p));
  }
  return FieldElement(spec_, mpq_class(1 / rational()));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  a.require_same_field(b);
  if (a.spec_.is_prime_field()) {
    const auto p = a.spec_.characteristic();
    const std::uint64_t s = a.residue() + b.residue();
    return FieldElement(a.spec_, s >= p ? s - p : s);
  }
  return FieldElement(a.spec_, mpq_class(a.rational() + b.rational()));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  a.require_same_field(b);
  if (a.spec_.is_prime_field()) {
    return FieldElement(a.spec_, mul_mod(a.residue(), b.residue(), a.spec_.characteristic()));
  }
  return FieldElement(a.spec_, mpq_class(a.rational() * b.rational()));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  a.require_same_field(b);
  return a * b.inverse();
}

FieldElement FieldElement::pow(unsigned long e) const {
  FieldElement result = one(spec_);
  FieldElement base = *this;
  while (e != 0) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1UL;
  }
  return result;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.spec_ != b.spec_) return false;
  if (a.spec_.is_prime_field()) return a.residue() == b.residue();
  return a.rational() == b.rational();
}

std::string FieldElement::to_string() const {
  if (spec_.is_prime_field()) return std::to_string(residue());
  return rational().get_str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.to_string(); }

}  // namespace subbundle
