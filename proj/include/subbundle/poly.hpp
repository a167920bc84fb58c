#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subbundle/coeff.hpp"

namespace subbundle {

class VariableContext;
using ContextPtr = std::shared_ptr<const VariableContext>;

/// Ordered list of distinct variable names, optionally split into a leading
/// block of base variables followed by a block of fiber variables.
class VariableContext {
 public:
  /// Throws ValidationError on empty or duplicate names, or an empty block.
  explicit VariableContext(std::vector<std::string> names, std::optional<std::size_t> base_count = std::nullopt);

  static ContextPtr make(std::vector<std::string> names, std::optional<std::size_t> base_count = std::nullopt);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownVariable.
  std::size_t index(std::string_view name) const;

  bool has_split() const noexcept { return base_count_.has_value(); }
  /// The following three throw NoBlockSplit without a split.
  std::size_t base_count() const;
  std::size_t fiber_count() const;
  bool is_fiber(std::size_t i) const { return i >= base_count(); }

  /// The base (resp. fiber) block as a context of its own, without split.
  ContextPtr base_context() const;
  ContextPtr fiber_context() const;

  friend bool operator==(const VariableContext&, const VariableContext&) = default;

 private:
  std::vector<std::string> names_;
  std::optional<std::size_t> base_count_;
};

/// Structural equality of contexts, tolerant of distinct pointers.
bool same_context(const ContextPtr& a, const ContextPtr& b);

class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, Exponent power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<Exponent>& exponents() const noexcept { return exps_; }

  std::uint64_t degree() const;
  /// Total degree over the variables flagged in mask.
  std::uint64_t degree_in(const std::vector<bool>& mask) const;
  bool is_one() const;

  bool divides(const Monomial& other) const;
  bool coprime_with(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  /// Requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;
  /// Throws ExponentOverflow.
  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> exps_;
};

/// Lex and GrevLex rank the context's variables in declaration order. BlockElim
/// compares the eliminated block by GrevLex first and breaks ties by GrevLex on
/// the remaining variables, which makes it an elimination order for the block.
class MonomialOrder {
 public:
  enum class Kind { Lex, GrevLex, BlockElim };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GrevLex, {}); }
  static MonomialOrder block_elim(std::vector<bool> eliminate) {
    return MonomialOrder(Kind::BlockElim, std::move(eliminate));
  }
  /// BlockElim on the named variables of ctx; throws UnknownVariable.
  static MonomialOrder block_elim(const VariableContext& ctx, const std::vector<std::string>& eliminate);

  Kind kind() const noexcept { return kind_; }
  const std::vector<bool>& elim_mask() const noexcept { return mask_; }
  bool fits(std::size_t nvars) const { return kind_ != Kind::BlockElim || mask_.size() == nvars; }

  /// Throws ContextMismatch when the monomials differ in length.
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind kind, std::vector<bool> mask) : kind_(kind), mask_(std::move(mask)) {}

  Kind kind_;
  std::vector<bool> mask_;
};

std::strong_ordering compare_monomials(const Monomial& a, const Monomial& b, const MonomialOrder& order);

struct Term {
  Monomial monomial;
  FieldElement coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over a VariableContext. Terms are stored sorted in
/// descending order under the polynomial's monomial order, with no zero
/// coefficients and no repeated monomials.
class Polynomial {
 public:
  /// The zero polynomial.
  Polynomial(ContextPtr ctx, FieldSpec field, MonomialOrder order = MonomialOrder::grevlex());

  /// Canonicalizes: sorts, merges equal monomials, drops zero coefficients.
  static Polynomial from_terms(ContextPtr ctx, FieldSpec field, std::vector<Term> terms,
                               MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial constant(ContextPtr ctx, const FieldElement& c, MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial variable(ContextPtr ctx, FieldSpec field, std::string_view name,
                             MonomialOrder order = MonomialOrder::grevlex());

  const ContextPtr& context() const noexcept { return ctx_; }
  const FieldSpec& field() const noexcept { return field_; }
  const MonomialOrder& order() const noexcept { return order_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  std::size_t num_terms() const noexcept { return terms_.size(); }
  /// Leading data; the polynomial must be nonzero.
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().monomial; }
  const FieldElement& leading_coefficient() const { return terms_.front().coeff; }
  std::uint64_t total_degree() const;
  /// Whether any term has a positive exponent on a variable flagged in mask.
  bool involves(const std::vector<bool>& mask) const;

  /// All terms but the leading one.
  Polynomial tail() const;
  Polynomial with_order(const MonomialOrder& order) const;
  /// Zero stays zero; otherwise divides by the leading coefficient.
  Polynomial monic() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator*(const FieldElement& c, const Polynomial& f);
  Polynomial& operator+=(const Polynomial& g) { return *this = *this + g; }
  Polynomial& operator-=(const Polynomial& g) { return *this = *this - g; }
  Polynomial& operator*=(const Polynomial& g) { return *this = *this * g; }
  Polynomial pow(unsigned n) const;

  /// this - c * m * g, computed in one merge pass.
  Polynomial sub_scaled(const FieldElement& c, const Monomial& m, const Polynomial& g) const;

  friend bool operator==(const Polynomial& f, const Polynomial& g);

  /// Text form readable by parse_polynomial, e.g. `w^2 - x*z^2`.
  std::string to_string() const;

 private:
  void check_compatible(const Polynomial& g) const;

  ContextPtr ctx_;
  FieldSpec field_;
  MonomialOrder order_;
  std::vector<Term> terms_;
};

/// Formal partial derivative; throws UnknownVariable.
Polynomial partial_derivative(const Polynomial& f, std::string_view variable);

/// Substitutes polynomial images for variables. Images must live in target;
/// unassigned variables of f are carried over by name and must exist there.
Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& assignment,
                      const ContextPtr& target);
/// Replaces the named variables of f by scalars, staying in f's context.
Polynomial specialize(const Polynomial& f, const std::map<std::string, FieldElement>& values);
/// Re-expresses f over another context by variable name. Throws
/// ContextMismatch when f uses a variable target lacks.
Polynomial move_to_context(const Polynomial& f, const ContextPtr& target,
                           MonomialOrder order = MonomialOrder::grevlex());

/// Components of f graded by total degree in the flagged variables; entry j
/// collects the terms of degree j. Their sum is f.
std::vector<Polynomial> graded_components(const Polynomial& f, const std::vector<bool>& mask);
/// Graded by ordinary total degree.
std::vector<Polynomial> homogeneous_components(const Polynomial& f);
/// Graded by degree in the fiber block: entry j is the t^j coefficient of
/// f(x, t*y). Throws NoBlockSplit.
std::vector<Polynomial> fiber_degree_components(const Polynomial& f);
/// Entry j is d f / d y_j at y = 0, returned in the base context. Throws NoBlockSplit.
std::vector<Polynomial> fiber_linear_part(const Polynomial& f);

/// Evaluates f at a full assignment of its variables.
FieldElement evaluate(const Polynomial& f, const std::vector<FieldElement>& point);

/// Parses the polynomial text syntax: integer or `a/b` literals, identifiers,
/// `^` powers, optional `*`, `+`/`-`, parentheses. Throws ParseError with a
/// 1-based column (line 1) and UnknownVariable-derived messages as ParseError.
Polynomial parse_polynomial(std::string_view text, const ContextPtr& ctx, const FieldSpec& field,
                            MonomialOrder order = MonomialOrder::grevlex());

/// Identifiers appearing in polynomial text, in order of first appearance.
std::vector<std::string> polynomial_identifiers(std::string_view text);

}  // namespace subbundle
