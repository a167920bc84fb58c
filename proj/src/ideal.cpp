#include "subbundle/ideal.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "subbundle/errors.hpp"

namespace subbundle {

Ideal::Ideal(ContextPtr ctx, FieldSpec field, std::vector<Polynomial> generators, MonomialOrder order,
             GroebnerLimits limits)
    : ctx_(std::move(ctx)),
      field_(field),
      order_(std::move(order)),
      limits_(limits),
      cache_(std::make_shared<Cache>()) {
  if (!order_.fits(ctx_->size())) throw ContextMismatch("monomial order does not fit the context");
  for (auto& g : generators) {
    if (!same_context(g.context(), ctx_)) throw ContextMismatch();
    if (g.field() != field_) throw MixedFields();
    if (!g.is_zero()) generators_.push_back(g.with_order(order_));
  }
}

const std::vector<Polynomial>& Ideal::groebner_basis() const {
  std::call_once(cache_->once, [this] { cache_->basis = buchberger(generators_, order_, limits_); });
  return cache_->basis;
}

bool Ideal::is_unit() const {
  const auto& gb = groebner_basis();
  return gb.size() == 1 && gb.front().is_constant();
}

Ideal Ideal::with_order(const MonomialOrder& order) const {
  if (order == order_) return *this;
  return Ideal(ctx_, field_, generators_, order, limits_);
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  if (!same_context(a.context(), b.context())) throw ContextMismatch();
  return ideal_sum(a, b.generators());
}

Ideal ideal_sum(const Ideal& a, const std::vector<Polynomial>& extra) {
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), extra.begin(), extra.end());
  return Ideal(a.context(), a.field(), std::move(gens), a.order(), a.limits());
}

bool ideal_membership(const Polynomial& f, const Ideal& ideal) {
  if (!same_context(f.context(), ideal.context())) throw ContextMismatch();
  return normal_form(f, ideal.groebner_basis(), ideal.order()).is_zero();
}

std::string fresh_variable(const VariableContext& ctx, const std::string& stem) {
  if (!ctx.find(stem)) return stem;
  for (int k = 2;; ++k) {
    std::string name = stem + std::to_string(k);
    if (!ctx.find(name)) return name;
  }
}

namespace {

// I extended by a fresh leading variable u, plus the generator 1 - u*g, in a
// BlockElim order eliminating u.
Ideal rabinowitsch_extension(const Ideal& ideal, const Polynomial& g, std::string& fresh) {
  const auto& ctx = *ideal.context();
  fresh = fresh_variable(ctx);
  std::vector<std::string> names{fresh};
  names.insert(names.end(), ctx.names().begin(), ctx.names().end());
  auto extended = VariableContext::make(std::move(names));
  std::vector<bool> mask(extended->size(), false);
  mask[0] = true;
  const auto order = MonomialOrder::block_elim(mask);
  std::vector<Polynomial> gens;
  for (const auto& f : ideal.generators()) gens.push_back(move_to_context(f, extended, order));
  const auto one = Polynomial::constant(extended, FieldElement::one(ideal.field()), order);
  const auto u = Polynomial::variable(extended, ideal.field(), fresh, order);
  gens.push_back(one - u * move_to_context(g, extended, order));
  return Ideal(extended, ideal.field(), std::move(gens), order, ideal.limits());
}

}  // namespace

bool radical_membership(const Polynomial& f, const Ideal& ideal) {
  if (!same_context(f.context(), ideal.context())) throw ContextMismatch();
  if (ideal_membership(f, ideal)) return true;
  std::string fresh;
  return rabinowitsch_extension(ideal, f, fresh).is_unit();
}

std::optional<unsigned> radical_witness_power(const Polynomial& f, const Ideal& ideal, unsigned max_power) {
  if (!same_context(f.context(), ideal.context())) throw ContextMismatch();
  const auto& gb = ideal.groebner_basis();
  Polynomial power = Polynomial::constant(f.context(), FieldElement::one(f.field()), ideal.order());
  for (unsigned n = 1; n <= max_power; ++n) {
    power = normal_form(power * f, gb, ideal.order());
    if (power.is_zero()) return n;
  }
  return std::nullopt;
}

Ideal elimination_ideal(const Ideal& ideal, const std::vector<std::string>& eliminate) {
  const auto& ctx = *ideal.context();
  for (const auto& name : eliminate) ctx.index(name);
  if (eliminate.empty()) return ideal;
  const auto order = MonomialOrder::block_elim(ctx, eliminate);
  const auto& mask = order.elim_mask();
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (!mask[i]) kept.push_back(ctx.name(i));
  }
  auto target = VariableContext::make(std::move(kept));
  const Ideal elim = ideal.with_order(order);
  std::vector<Polynomial> gens;
  for (const auto& g : elim.groebner_basis()) {
    if (!g.involves(mask)) gens.push_back(move_to_context(g, target));
  }
  return Ideal(target, ideal.field(), std::move(gens), MonomialOrder::grevlex(), ideal.limits());
}

Ideal saturation(const Ideal& ideal, const Polynomial& g) {
  if (!same_context(g.context(), ideal.context())) throw ContextMismatch();
  if (g.is_zero()) throw ZeroDivisorPolynomial();
  if (g.is_constant()) return ideal;
  std::string fresh;
  const Ideal extended = rabinowitsch_extension(ideal, g, fresh);
  const Ideal eliminated = elimination_ideal(extended, {fresh});
  std::vector<Polynomial> gens;
  for (const auto& p : eliminated.groebner_basis()) gens.push_back(move_to_context(p, ideal.context(), ideal.order()));
  return Ideal(ideal.context(), ideal.field(), std::move(gens), ideal.order(), ideal.limits());
}

std::optional<std::size_t> krull_dimension(const Ideal& ideal) {
  if (ideal.is_unit()) return std::nullopt;
  const std::size_t n = ideal.context()->size();
  if (n > ideal.limits().max_dimension_vars) {
    throw ResourceLimit("dimension search limited to " + std::to_string(ideal.limits().max_dimension_vars) +
                        " variables");
  }
  std::vector<std::uint32_t> supports;
  for (const auto& g : ideal.groebner_basis()) {
    std::uint32_t s = 0;
    const auto& lm = g.leading_monomial();
    for (std::size_t i = 0; i < n; ++i) {
      if (lm[i] != 0) s |= std::uint32_t{1} << i;
    }
    supports.push_back(s);
  }
  std::size_t best = 0;
  const std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  for (std::uint32_t subset = 0;; ++subset) {
    const auto size = static_cast<std::size_t>(std::popcount(subset));
    if (size > best) {
      const bool independent = std::all_of(supports.begin(), supports.end(),
                                           [subset](std::uint32_t s) { return (s & ~subset) != 0; });
      if (independent) best = size;
    }
    if (subset == full) break;
  }
  return best;
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
  if (!same_context(a.context(), b.context())) throw ContextMismatch();
  if (a.field() != b.field()) throw MixedFields();
  const Ideal bb = b.with_order(a.order());
  return a.groebner_basis() == bb.groebner_basis();
}

bool is_empty_variety(const Ideal& ideal) { return ideal.is_unit(); }

Polynomial determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw BadMinorSize("determinant of an empty matrix");
  for (const auto& row : m) {
    if (row.size() != n) throw BadMinorSize("determinant of a non-square matrix");
  }
  if (n == 1) return m[0][0];
  Polynomial det(m[0][0].context(), m[0][0].field(), m[0][0].order());
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    PolyMatrix sub;
    sub.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      sub.push_back(std::move(row));
    }
    const Polynomial cofactor = m[0][col] * determinant(sub);
    det = col % 2 == 0 ? det + cofactor : det - cofactor;
  }
  return det;
}

namespace {

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<Polynomial> matrix_minors(const PolyMatrix& m, std::size_t k) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  if (k < 1 || k > std::min(rows, cols)) {
    throw BadMinorSize("minor size " + std::to_string(k) + " outside 1.." + std::to_string(std::min(rows, cols)));
  }
  std::vector<Polynomial> out;
  for (const auto& rs : combinations(rows, k)) {
    for (const auto& cs : combinations(cols, k)) {
      PolyMatrix sub;
      sub.reserve(k);
      for (auto r : rs) {
        std::vector<Polynomial> row;
        row.reserve(k);
        for (auto c : cs) row.push_back(m[r][c]);
        sub.push_back(std::move(row));
      }
      out.push_back(determinant(sub));
    }
  }
  return out;
}

}  // namespace subbundle
