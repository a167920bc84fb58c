#include <algorithm>
#include <string>

#include "subbundle/errors.hpp"
#include "subbundle/ideal.hpp"

namespace subbundle {

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis_in, const MonomialOrder& order) {
  std::vector<Polynomial> basis;
  basis.reserve(basis_in.size());
  for (const auto& g : basis_in) {
    if (!same_context(g.context(), f.context())) throw ContextMismatch();
    if (!g.is_zero()) basis.push_back(g.with_order(order).monic());
  }
  Polynomial p = f.with_order(order);
  std::vector<Term> remainder;
  while (!p.is_zero()) {
    const Term& lead = p.leading_term();
    const Polynomial* divisor = nullptr;
    for (const auto& g : basis) {
      if (g.leading_monomial().divides(lead.monomial)) {
        divisor = &g;
        break;
      }
    }
    if (divisor != nullptr) {
      p = p.sub_scaled(lead.coeff, lead.monomial.quotient(divisor->leading_monomial()), *divisor);
    } else {
      remainder.push_back(lead);
      p = p.tail();
    }
  }
  return Polynomial::from_terms(f.context(), f.field(), std::move(remainder), order);
}

namespace {

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const Monomial& lcm) {
  // Both inputs are monic.
  return Polynomial(f.context(), f.field(), f.order())
      .sub_scaled(-FieldElement::one(f.field()), lcm.quotient(f.leading_monomial()), f)
      .sub_scaled(FieldElement::one(f.field()), lcm.quotient(g.leading_monomial()), g);
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const MonomialOrder& order, const GroebnerLimits& limits) : order_(order), limits_(limits) {}

  // Returns false once the unit ideal has been detected.
  bool add(Polynomial h) {
    h = h.monic();
    if (h.is_constant()) {
      unit_ = true;
      return false;
    }
    if (basis_.size() >= limits_.max_basis) {
      throw ResourceLimit("Groebner basis exceeded " + std::to_string(limits_.max_basis) + " elements");
    }
    const std::size_t k = basis_.size();
    basis_.push_back(std::move(h));
    pending_.emplace_back(k + 1, false);
    for (std::size_t i = 0; i < k; ++i) {
      pairs_.push_back({i, k, basis_[i].leading_monomial().lcm(basis_[k].leading_monomial())});
      pending_[k][i] = true;
    }
    return true;
  }

  void run() {
    std::size_t processed = 0;
    while (!unit_ && !pairs_.empty()) {
      // Normal selection: smallest lcm, ties broken by creation order.
      auto best = pairs_.begin();
      for (auto it = pairs_.begin() + 1; it != pairs_.end(); ++it) {
        if (order_.compare(it->lcm, best->lcm) < 0) best = it;
      }
      const Pair pair = *best;
      pairs_.erase(best);
      set_pending(pair.i, pair.j, false);
      if (++processed > limits_.max_pairs) {
        throw ResourceLimit("Buchberger exceeded " + std::to_string(limits_.max_pairs) + " critical pairs");
      }
      const auto& fi = basis_[pair.i];
      const auto& fj = basis_[pair.j];
      if (fi.leading_monomial().coprime_with(fj.leading_monomial())) continue;
      if (chain_criterion(pair)) continue;
      Polynomial h = normal_form(s_polynomial(fi, fj, pair.lcm), basis_, order_);
      if (!h.is_zero()) add(std::move(h));
    }
  }

  std::vector<Polynomial> reduced(const Polynomial& unit_template) const {
    if (unit_) return {Polynomial::constant(unit_template.context(), FieldElement::one(unit_template.field()), order_)};
    std::vector<Polynomial> sorted = basis_;
    std::stable_sort(sorted.begin(), sorted.end(), [this](const Polynomial& a, const Polynomial& b) {
      return order_.compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    std::vector<Polynomial> minimal;
    for (auto& g : sorted) {
      const bool redundant = std::any_of(minimal.begin(), minimal.end(), [&g](const Polynomial& m) {
        return m.leading_monomial().divides(g.leading_monomial());
      });
      if (!redundant) minimal.push_back(g);
    }
    std::vector<Polynomial> out;
    out.reserve(minimal.size());
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<Polynomial> others;
      others.reserve(minimal.size() - 1);
      for (std::size_t l = 0; l < minimal.size(); ++l) {
        if (l != k) others.push_back(minimal[l]);
      }
      const Polynomial& g = minimal[k];
      Polynomial tail = normal_form(g.tail(), others, order_);
      out.push_back((Polynomial::from_terms(g.context(), g.field(), {g.leading_term()}, order_) + tail).monic());
    }
    return out;
  }

 private:
  void set_pending(std::size_t a, std::size_t b, bool v) {
    if (a < b) std::swap(a, b);
    pending_[a][b] = v;
  }
  bool is_pending(std::size_t a, std::size_t b) const {
    if (a < b) std::swap(a, b);
    return pending_[a][b];
  }

  // Buchberger's second criterion: some f_k with LM(f_k) | lcm whose pairs with
  // both f_i and f_j have already left the pending set.
  bool chain_criterion(const Pair& pair) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == pair.i || k == pair.j) continue;
      if (!basis_[k].leading_monomial().divides(pair.lcm)) continue;
      if (!is_pending(pair.i, k) && !is_pending(pair.j, k)) return true;
    }
    return false;
  }

  MonomialOrder order_;
  GroebnerLimits limits_;
  std::vector<Polynomial> basis_;
  std::vector<Pair> pairs_;
  std::vector<std::vector<bool>> pending_;
  bool unit_ = false;
};

}  // namespace

std::vector<Polynomial> buchberger(std::vector<Polynomial> generators, const MonomialOrder& order,
                                   const GroebnerLimits& limits) {
  std::vector<Polynomial> nonzero;
  for (auto& g : generators) {
    if (!nonzero.empty() && !same_context(g.context(), nonzero.front().context())) throw ContextMismatch();
    if (!g.is_zero()) nonzero.push_back(g.with_order(order));
  }
  if (nonzero.empty()) return {};
  Buchberger engine(order, limits);
  for (auto& g : nonzero) {
    if (!engine.add(g)) break;
  }
  engine.run();
  return engine.reduced(nonzero.front());
}

}  // namespace subbundle
