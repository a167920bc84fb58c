#include "subbundle/poly.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "subbundle/errors.hpp"

namespace subbundle {

// ---------------------------------------------------------------------------
// VariableContext

VariableContext::VariableContext(std::vector<std::string> names, std::optional<std::size_t> base_count)
    : names_(std::move(names)), base_count_(base_count) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ValidationError("empty variable name");
    if (!seen.insert(n).second) throw ValidationError("duplicate variable name '" + n + "'");
  }
  if (base_count_ && (*base_count_ == 0 || *base_count_ >= names_.size())) {
    throw ValidationError("base/fiber split must leave both blocks non-empty");
  }
}

ContextPtr VariableContext::make(std::vector<std::string> names, std::optional<std::size_t> base_count) {
  return std::make_shared<const VariableContext>(std::move(names), base_count);
}

std::optional<std::size_t> VariableContext::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VariableContext::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnknownVariable(std::string(name));
}

std::size_t VariableContext::base_count() const {
  if (!base_count_) throw NoBlockSplit();
  return *base_count_;
}

std::size_t VariableContext::fiber_count() const { return names_.size() - base_count(); }

ContextPtr VariableContext::base_context() const {
  const auto m = base_count();
  return make(std::vector<std::string>(names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(m)));
}

ContextPtr VariableContext::fiber_context() const {
  const auto m = base_count();
  return make(std::vector<std::string>(names_.begin() + static_cast<std::ptrdiff_t>(m), names_.end()));
}

bool same_context(const ContextPtr& a, const ContextPtr& b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::size_t nvars, std::size_t index, Exponent power) {
  Monomial m(nvars);
  m.exps_.at(index) = power;
  return m;
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

std::uint64_t Monomial::degree_in(const std::vector<bool>& mask) const {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (mask[i]) d += exps_[i];
  }
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

bool Monomial::coprime_with(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
  return r;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] - divisor.exps_[i];
  return r;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.exps_.size() != exps_.size()) throw ContextMismatch();
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > std::numeric_limits<Exponent>::max() - other.exps_[i]) throw ExponentOverflow();
    r.exps_[i] = exps_[i] + other.exps_[i];
  }
  return r;
}

// ---------------------------------------------------------------------------
// MonomialOrder

MonomialOrder MonomialOrder::block_elim(const VariableContext& ctx, const std::vector<std::string>& eliminate) {
  std::vector<bool> mask(ctx.size(), false);
  for (const auto& name : eliminate) mask[ctx.index(name)] = true;
  return block_elim(std::move(mask));
}

namespace {

// GrevLex restricted to variables where mask[i] == want (all when mask empty).
std::strong_ordering grevlex_on(const Monomial& a, const Monomial& b, const std::vector<bool>& mask, bool want) {
  const bool all = mask.empty();
  std::uint64_t da = 0;
  std::uint64_t db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (all || mask[i] == want) {
      da += a[i];
      db += b[i];
    }
  }
  if (da != db) return da <=> db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (!(all || mask[i] == want)) continue;
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (a.size() != b.size()) throw ContextMismatch();
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] <=> b[i];
      }
      return std::strong_ordering::equal;
    case Kind::GrevLex:
      return grevlex_on(a, b, {}, true);
    case Kind::BlockElim:
      if (mask_.size() != a.size()) throw ContextMismatch("elimination mask does not fit the monomial");
      if (auto c = grevlex_on(a, b, mask_, true); c != 0) return c;
      return grevlex_on(a, b, mask_, false);
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare_monomials(const Monomial& a, const Monomial& b, const MonomialOrder& order) {
  return order.compare(a, b);
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(ContextPtr ctx, FieldSpec field, MonomialOrder order)
    : ctx_(std::move(ctx)), field_(field), order_(std::move(order)) {
  if (!ctx_) throw ContextMismatch("polynomial without a variable context");
  if (!order_.fits(ctx_->size())) throw ContextMismatch("monomial order does not fit the context");
}

Polynomial Polynomial::from_terms(ContextPtr ctx, FieldSpec field, std::vector<Term> terms, MonomialOrder order) {
  Polynomial p(std::move(ctx), field, std::move(order));
  for (const auto& t : terms) {
    if (t.monomial.size() != p.ctx_->size()) throw ContextMismatch("monomial length differs from context size");
    if (t.coeff.spec() != field) throw MixedFields();
  }
  const auto& ord = p.order_;
  std::sort(terms.begin(), terms.end(),
            [&ord](const Term& a, const Term& b) { return ord.compare(a.monomial, b.monomial) > 0; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
  return p;
}

Polynomial Polynomial::constant(ContextPtr ctx, const FieldElement& c, MonomialOrder order) {
  Polynomial p(ctx, c.spec(), std::move(order));
  if (!c.is_zero()) p.terms_.push_back({Monomial(p.ctx_->size()), c});
  return p;
}

Polynomial Polynomial::variable(ContextPtr ctx, FieldSpec field, std::string_view name, MonomialOrder order) {
  Polynomial p(ctx, field, std::move(order));
  p.terms_.push_back({Monomial::variable(p.ctx_->size(), p.ctx_->index(name)), FieldElement::one(field)});
  return p;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

bool Polynomial::involves(const std::vector<bool>& mask) const {
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i] && t.monomial[i] != 0) return true;
    }
  }
  return false;
}

Polynomial Polynomial::tail() const {
  Polynomial r(ctx_, field_, order_);
  if (terms_.size() > 1) r.terms_.assign(terms_.begin() + 1, terms_.end());
  return r;
}

Polynomial Polynomial::with_order(const MonomialOrder& order) const {
  if (order == order_) return *this;
  return from_terms(ctx_, field_, terms_, order);
}

Polynomial Polynomial::monic() const {
  if (is_zero() || leading_coefficient().is_one()) return *this;
  const auto inv = leading_coefficient().inverse();
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= inv;
  return r;
}

void Polynomial::check_compatible(const Polynomial& g) const {
  if (!same_context(ctx_, g.ctx_)) throw ContextMismatch();
  if (field_ != g.field_) throw MixedFields();
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::sub_scaled(const FieldElement& c, const Monomial& m, const Polynomial& g_in) const {
  check_compatible(g_in);
  const Polynomial& g = g_in.order_ == order_ ? g_in : g_in.with_order(order_);
  Polynomial r(ctx_, field_, order_);
  if (c.is_zero()) return *this;
  r.terms_.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < g.terms_.size()) {
    if (j == g.terms_.size()) {
      r.terms_.push_back(terms_[i++]);
      continue;
    }
    Monomial gm = g.terms_[j].monomial * m;
    if (i == terms_.size()) {
      r.terms_.push_back({std::move(gm), -(c * g.terms_[j].coeff)});
      ++j;
      continue;
    }
    const auto cmp = order_.compare(terms_[i].monomial, gm);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back({std::move(gm), -(c * g.terms_[j].coeff)});
      ++j;
    } else {
      auto coeff = terms_[i].coeff - c * g.terms_[j].coeff;
      if (!coeff.is_zero()) r.terms_.push_back({std::move(gm), std::move(coeff)});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial operator+(const Polynomial& f, const Polynomial& g) {
  return f.sub_scaled(-FieldElement::one(f.field_), Monomial(f.ctx_->size()), g);
}

Polynomial operator-(const Polynomial& f, const Polynomial& g) {
  return f.sub_scaled(FieldElement::one(f.field_), Monomial(f.ctx_->size()), g);
}

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  f.check_compatible(g);
  Polynomial r(f.ctx_, f.field_, f.order_);
  // Accumulate the shorter factor's terms against the longer one.
  const Polynomial& outer = f.terms_.size() <= g.terms_.size() ? f : g;
  const Polynomial& inner = &outer == &f ? g : f;
  for (const auto& t : outer.terms_) r = r.sub_scaled(-t.coeff, t.monomial, inner);
  return r;
}

Polynomial operator*(const FieldElement& c, const Polynomial& f) {
  if (c.spec() != f.field_) throw MixedFields();
  Polynomial r(f.ctx_, f.field_, f.order_);
  if (c.is_zero()) return r;
  r.terms_ = f.terms_;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(ctx_, FieldElement::one(field_), order_);
  Polynomial base = *this;
  while (n != 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n != 0) base *= base;
  }
  return result;
}

bool operator==(const Polynomial& f, const Polynomial& g) {
  if (!same_context(f.ctx_, g.ctx_) || f.field_ != g.field_) return false;
  if (f.order_ == g.order_) return f.terms_ == g.terms_;
  return f.terms_ == g.with_order(f.order_).terms_;
}

namespace {

std::string monomial_text(const Monomial& m, const VariableContext& ctx) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ctx.name(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

// Magnitude and sign of a coefficient for display. Residues above p/2 print
// as negatives so that `y^5 - x*z^5` is shown rather than `y^5 + 4*x*z^5`.
std::pair<std::string, bool> coefficient_text(const FieldElement& c) {
  if (c.spec().is_prime_field()) {
    const auto p = c.spec().characteristic();
    const auto r = c.residue();
    if (p > 2 && r > p / 2) return {std::to_string(p - r), true};
    return {std::to_string(r), false};
  }
  const mpq_class& q = c.rational();
  return {mpq_class(abs(q)).get_str(), sgn(q) < 0};
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    auto [mag, negative] = coefficient_text(t.coeff);
    if (k == 0) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    const std::string mono = monomial_text(t.monomial, *ctx_);
    if (mono.empty()) {
      out += mag;
    } else if (mag == "1") {
      out += mono;
    } else {
      out += mag + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free operations

Polynomial partial_derivative(const Polynomial& f, std::string_view variable) {
  const auto v = f.context()->index(variable);
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    const auto e = t.monomial[v];
    if (e == 0) continue;
    auto exps = t.monomial.exponents();
    exps[v] -= 1;
    out.push_back({Monomial(std::move(exps)), FieldElement::from_int(e, f.field()) * t.coeff});
  }
  return Polynomial::from_terms(f.context(), f.field(), std::move(out), f.order());
}

Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& assignment,
                      const ContextPtr& target) {
  const auto& ctx = *f.context();
  for (const auto& [name, image] : assignment) {
    if (!ctx.find(name)) throw UnknownVariable(name);
    if (!same_context(image.context(), target)) throw ContextMismatch("substitution image outside target context");
    if (image.field() != f.field()) throw MixedFields();
  }
  const MonomialOrder order = same_context(f.context(), target) ? f.order() : MonomialOrder::grevlex();
  std::vector<Polynomial> images;
  images.reserve(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (auto it = assignment.find(ctx.name(i)); it != assignment.end()) {
      images.push_back(it->second.with_order(order));
    } else if (target->find(ctx.name(i))) {
      images.push_back(Polynomial::variable(target, f.field(), ctx.name(i), order));
    } else {
      // Only an error if the variable actually occurs.
      images.push_back(Polynomial(target, f.field(), order));
    }
  }
  std::vector<std::map<Monomial::Exponent, Polynomial>> powers(ctx.size());
  auto power = [&](std::size_t i, Monomial::Exponent e) -> const Polynomial& {
    auto& cache = powers[i];
    if (auto it = cache.find(e); it != cache.end()) return it->second;
    return cache.emplace(e, images[i].pow(e)).first->second;
  };
  Polynomial result(target, f.field(), order);
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(target, t.coeff, order);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const auto e = t.monomial[i];
      if (e == 0) continue;
      if (!assignment.count(ctx.name(i)) && !target->find(ctx.name(i))) {
        throw ContextMismatch("variable '" + ctx.name(i) + "' has no counterpart in the target context");
      }
      term *= power(i, e);
    }
    result += term;
  }
  return result;
}

Polynomial specialize(const Polynomial& f, const std::map<std::string, FieldElement>& values) {
  const auto& ctx = *f.context();
  std::vector<std::optional<FieldElement>> at(ctx.size());
  for (const auto& [name, value] : values) {
    if (value.spec() != f.field()) throw MixedFields();
    at[ctx.index(name)] = value;
  }
  std::vector<Term> out;
  out.reserve(f.num_terms());
  for (const auto& t : f.terms()) {
    auto exps = t.monomial.exponents();
    FieldElement c = t.coeff;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (at[i] && exps[i] != 0) {
        c *= at[i]->pow(exps[i]);
        exps[i] = 0;
      }
    }
    out.push_back({Monomial(std::move(exps)), std::move(c)});
  }
  return Polynomial::from_terms(f.context(), f.field(), std::move(out), f.order());
}

Polynomial move_to_context(const Polynomial& f, const ContextPtr& target, MonomialOrder order) {
  const auto& ctx = *f.context();
  std::vector<std::optional<std::size_t>> where(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i) where[i] = target->find(ctx.name(i));
  std::vector<Term> out;
  out.reserve(f.num_terms());
  for (const auto& t : f.terms()) {
    std::vector<Monomial::Exponent> exps(target->size(), 0);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (!where[i]) {
        throw ContextMismatch("variable '" + ctx.name(i) + "' has no counterpart in the target context");
      }
      exps[*where[i]] = t.monomial[i];
    }
    out.push_back({Monomial(std::move(exps)), t.coeff});
  }
  return Polynomial::from_terms(target, f.field(), std::move(out), std::move(order));
}

std::vector<Polynomial> graded_components(const Polynomial& f, const std::vector<bool>& mask) {
  if (mask.size() != f.context()->size()) throw ContextMismatch("grading mask does not fit the context");
  std::vector<std::vector<Term>> buckets;
  for (const auto& t : f.terms()) {
    const auto d = static_cast<std::size_t>(t.monomial.degree_in(mask));
    if (buckets.size() <= d) buckets.resize(d + 1);
    buckets[d].push_back(t);
  }
  if (buckets.empty()) buckets.resize(1);
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(f.context(), f.field(), std::move(b), f.order()));
  return out;
}

std::vector<Polynomial> homogeneous_components(const Polynomial& f) {
  return graded_components(f, std::vector<bool>(f.context()->size(), true));
}

std::vector<Polynomial> fiber_degree_components(const Polynomial& f) {
  const auto& ctx = *f.context();
  std::vector<bool> mask(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i) mask[i] = ctx.is_fiber(i);
  return graded_components(f, mask);
}

std::vector<Polynomial> fiber_linear_part(const Polynomial& f) {
  const auto& ctx = *f.context();
  const auto m = ctx.base_count();
  const auto n = ctx.fiber_count();
  auto base = ctx.base_context();
  std::vector<std::vector<Term>> rows(n);
  for (const auto& t : f.terms()) {
    std::size_t fiber_deg = 0;
    std::size_t which = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (t.monomial[m + j] != 0) {
        fiber_deg += t.monomial[m + j];
        which = j;
      }
    }
    if (fiber_deg != 1) continue;
    std::vector<Monomial::Exponent> exps(t.monomial.exponents().begin(),
                                         t.monomial.exponents().begin() + static_cast<std::ptrdiff_t>(m));
    rows[which].push_back({Monomial(std::move(exps)), t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(n);
  for (auto& r : rows) out.push_back(Polynomial::from_terms(base, f.field(), std::move(r)));
  return out;
}

FieldElement evaluate(const Polynomial& f, const std::vector<FieldElement>& point) {
  if (point.size() != f.context()->size()) throw ContextMismatch("point has the wrong number of coordinates");
  FieldElement sum = FieldElement::zero(f.field());
  for (const auto& t : f.terms()) {
    FieldElement c = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (t.monomial[i] != 0) c *= point[i].pow(t.monomial[i]);
    }
    sum += c;
  }
  return sum;
}

}  // namespace subbundle
