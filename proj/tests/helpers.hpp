#pragma once

#include <string>
#include <vector>

#include "subbundle/bundle.hpp"
#include "subbundle/family_file.hpp"

namespace testing {

using namespace subbundle;

inline FieldSpec Q() { return FieldSpec::rationals(); }

inline FieldElement q(long long n, const FieldSpec& f = FieldSpec::rationals()) { return FieldElement::from_int(n, f); }

inline Polynomial P(const std::string& text, const ContextPtr& ctx, const FieldSpec& f = FieldSpec::rationals()) {
  return parse_polynomial(text, ctx, f);
}

inline std::vector<Polynomial> Ps(const std::vector<std::string>& texts, const ContextPtr& ctx,
                                  const FieldSpec& f = FieldSpec::rationals()) {
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(P(t, ctx, f));
  return out;
}

inline std::vector<FieldElement> pt(const std::vector<long long>& xs, const FieldSpec& f = FieldSpec::rationals()) {
  std::vector<FieldElement> out;
  for (auto x : xs) out.push_back(q(x, f));
  return out;
}

inline FamilyFile corpus(const std::string& name) {
  return load_family_file(std::string(SUBBUNDLE_CORPUS_DIR) + "/" + name);
}

}  // namespace testing
