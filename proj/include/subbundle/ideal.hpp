#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "subbundle/poly.hpp"

namespace subbundle {

/// Ceilings for the Gröbner engine. Exceeding one raises ResourceLimit.
struct GroebnerLimits {
  std::size_t max_pairs = 200000;
  std::size_t max_basis = 5000;
  /// Largest variable count for the independent-set dimension search.
  std::size_t max_dimension_vars = 20;
};

/// Fully reduced remainder of f modulo basis under order. Basis elements are
/// tried in the given sequence, so the result is deterministic.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis, const MonomialOrder& order);

/// Reduced Gröbner basis of the generators: monic, auto-reduced, sorted by
/// increasing leading monomial. The unit ideal yields {1}, the zero ideal {}.
std::vector<Polynomial> buchberger(std::vector<Polynomial> generators, const MonomialOrder& order,
                                   const GroebnerLimits& limits = {});

/// An ideal of a polynomial ring together with a monomial order. The reduced
/// Gröbner basis is computed once on first use and shared between copies.
class Ideal {
 public:
  Ideal(ContextPtr ctx, FieldSpec field, std::vector<Polynomial> generators,
        MonomialOrder order = MonomialOrder::grevlex(), GroebnerLimits limits = {});

  const ContextPtr& context() const noexcept { return ctx_; }
  const FieldSpec& field() const noexcept { return field_; }
  const MonomialOrder& order() const noexcept { return order_; }
  const GroebnerLimits& limits() const noexcept { return limits_; }
  /// Nonzero generators, in the ideal's order.
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }

  const std::vector<Polynomial>& groebner_basis() const;
  bool is_unit() const;
  bool is_zero() const { return generators_.empty(); }

  Ideal with_order(const MonomialOrder& order) const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Polynomial> basis;
  };

  ContextPtr ctx_;
  FieldSpec field_;
  MonomialOrder order_;
  GroebnerLimits limits_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

/// I + J; throws ContextMismatch.
Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_sum(const Ideal& a, const std::vector<Polynomial>& extra);

bool ideal_membership(const Polynomial& f, const Ideal& ideal);
/// f in sqrt(I) by the Rabinowitsch test: 1 in I + <1 - u*f> for a fresh u.
bool radical_membership(const Polynomial& f, const Ideal& ideal);
/// Smallest N <= max_power with f^N in I, by iterated normal forms.
std::optional<unsigned> radical_witness_power(const Polynomial& f, const Ideal& ideal, unsigned max_power);

/// I intersected with the subring of the surviving variables, returned over
/// the smaller context in GrevLex. Throws UnknownVariable.
Ideal elimination_ideal(const Ideal& ideal, const std::vector<std::string>& eliminate);
/// I : g^infinity. Throws ZeroDivisorPolynomial for g = 0.
Ideal saturation(const Ideal& ideal, const Polynomial& g);

/// Dimension of V(I) over the algebraic closure; nullopt when 1 is in I.
std::optional<std::size_t> krull_dimension(const Ideal& ideal);
/// Reduced-basis identity. Throws ContextMismatch.
bool ideal_equal(const Ideal& a, const Ideal& b);
/// True iff 1 is in I.
bool is_empty_variety(const Ideal& ideal);

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Cofactor-expansion determinant of a square matrix.
Polynomial determinant(const PolyMatrix& m);
/// All k x k minors, rows combinations outer, column combinations inner,
/// both lexicographic. Throws BadMinorSize unless 1 <= k <= min(rows, cols).
std::vector<Polynomial> matrix_minors(const PolyMatrix& m, std::size_t k);

/// A name not present in ctx: stem, stem2, stem3, ...
std::string fresh_variable(const VariableContext& ctx, const std::string& stem = "_u");

}  // namespace subbundle
