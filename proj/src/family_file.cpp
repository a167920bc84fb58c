#include "subbundle/family_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "subbundle/errors.hpp"

namespace subbundle {

bool operator==(const KernelCheckBlock& a, const KernelCheckBlock& b) {
  return same_context(a.target, b.target) && a.maps == b.maps && a.claimed == b.claimed;
}

namespace {

// A slice of a source line with its 1-based position.
struct Span {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Directive {
  std::string keyword;
  Span rest;
  std::size_t column = 1;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

Span trim(const Span& s) {
  std::size_t b = 0;
  std::size_t e = s.text.size();
  while (b < e && is_space(s.text[b])) ++b;
  while (e > b && is_space(s.text[e - 1])) --e;
  return {s.text.substr(b, e - b), s.line, s.column + b};
}

std::vector<Span> split(const Span& s, char sep) {
  std::vector<Span> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.text.size(); ++i) {
    if (i == s.text.size() || s.text[i] == sep) {
      out.push_back(trim({s.text.substr(start, i - start), s.line, s.column + start}));
      start = i + 1;
    }
  }
  return out;
}

std::vector<Span> words(const Span& s) {
  std::vector<Span> out;
  std::size_t i = 0;
  while (i < s.text.size()) {
    while (i < s.text.size() && (is_space(s.text[i]) || s.text[i] == ',')) ++i;
    const auto start = i;
    while (i < s.text.size() && !is_space(s.text[i]) && s.text[i] != ',') ++i;
    if (i > start) out.push_back({s.text.substr(start, i - start), s.line, s.column + start});
  }
  return out;
}

[[noreturn]] void fail(const Span& at, const std::string& message) { throw ParseError(at.line, at.column, message); }

std::vector<Directive> tokenize(std::string_view text) {
  std::vector<Directive> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string line(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const Span whole = trim({line, line_no, 1});
    if (whole.text.empty()) continue;
    std::size_t k = 0;
    while (k < whole.text.size() && !is_space(whole.text[k])) ++k;
    out.push_back({whole.text.substr(0, k), trim({whole.text.substr(k), line_no, whole.column + k}), whole.column});
  }
  return out;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) != 0 || s[0] == '_')) return false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_') return false;
  }
  return true;
}

Polynomial parse_at(const Span& s, const ContextPtr& ctx, const FieldSpec& field) {
  try {
    return parse_polynomial(s.text, ctx, field);
  } catch (const ParseError& e) {
    throw ParseError(s.line, s.column + e.column() - 1, e.message());
  }
}

FieldElement parse_value(const Span& s, const FieldSpec& field) {
  try {
    return FieldElement::parse(s.text, field);
  } catch (const std::invalid_argument&) {
    fail(s, "expected a number, got '" + s.text + "'");
  } catch (const DivisionByZero&) {
    fail(s, "denominator vanishes in the coefficient field");
  }
}

std::vector<Polynomial> parse_list(const Span& s, const ContextPtr& ctx, const FieldSpec& field) {
  std::vector<Polynomial> out;
  for (const auto& part : split(s, ';')) {
    if (part.text.empty()) fail(part, "empty polynomial in list");
    out.push_back(parse_at(part, ctx, field));
  }
  return out;
}

class FamilyParser {
 public:
  explicit FamilyParser(std::string_view text) : directives_(tokenize(text)) {
    end_ = directives_.empty() ? Span{"", 1, 1} : Span{"", directives_.back().rest.line + 1, 1};
  }

  FamilyFile parse(const GroebnerLimits& limits) {
    scan_header();
    const FieldSpec field = *field_;
    std::vector<std::string> names = base_names_;
    names.insert(names.end(), fiber_names_.begin(), fiber_names_.end());
    ContextPtr ctx;
    try {
      ctx = VariableContext::make(names, base_names_.size());
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("variables: ") + e.what());
    }
    const auto base_ctx = ctx->base_context();

    std::vector<Polynomial> base_gens;
    std::vector<Polynomial> family_gens;
    std::optional<std::size_t> rank;
    std::vector<std::vector<FieldElement>> points;
    std::vector<std::pair<Span, std::vector<Polynomial>>> params;
    std::map<std::string, ContextPtr> param_ctx;
    std::map<std::string, std::vector<FieldElement>> samples;
    std::vector<std::string> param_order;
    std::optional<Polynomial> closure;
    bool in_kernel = false;
    bool saw_kernel = false;
    std::vector<std::pair<Span, Span>> maps;
    std::vector<Span> claimed_spans;

    for (const auto& d : directives_) {
      const auto& kw = d.keyword;
      if (kw == "field" || kw == "base_vars" || kw == "fiber_vars") continue;
      if (kw == "base_ideal") {
        auto g = parse_list(d.rest, base_ctx, field);
        base_gens.insert(base_gens.end(), g.begin(), g.end());
      } else if (kw == "family") {
        auto g = parse_list(d.rest, ctx, field);
        family_gens.insert(family_gens.end(), g.begin(), g.end());
      } else if (kw == "rank") {
        if (rank) fail(d.rest, "duplicate 'rank' directive");
        const auto w = words(d.rest);
        if (w.size() != 1 || w[0].text.find_first_not_of("0123456789") != std::string::npos) {
          fail(d.rest, "expected a non-negative integer rank");
        }
        rank = std::stoul(w[0].text);
      } else if (kw == "point") {
        std::vector<FieldElement> coords;
        for (const auto& w : words(d.rest)) coords.push_back(parse_value(w, field));
        if (coords.empty()) fail(d.rest, "point needs coordinates");
        points.push_back(std::move(coords));
      } else if (kw == "param") {
        const auto colon = d.rest.text.find(':');
        if (colon == std::string::npos) fail(d.rest, "expected 'param <t> : <poly>, ...'");
        const Span name = trim({d.rest.text.substr(0, colon), d.rest.line, d.rest.column});
        if (!valid_identifier(name.text)) fail(name, "invalid parameter name '" + name.text + "'");
        check_reserved(name);
        if (param_ctx.count(name.text)) fail(name, "duplicate parametrization '" + name.text + "'");
        auto pctx = VariableContext::make({name.text});
        const Span images{d.rest.text.substr(colon + 1), d.rest.line, d.rest.column + colon + 1};
        std::vector<Polynomial> polys;
        for (const auto& part : split(images, ',')) {
          if (part.text.empty()) fail(part, "empty coordinate in parametrization");
          polys.push_back(parse_at(part, pctx, field));
        }
        param_ctx.emplace(name.text, pctx);
        param_order.push_back(name.text);
        params.emplace_back(name, std::move(polys));
      } else if (kw == "sample") {
        const auto eq = d.rest.text.find('=');
        if (eq == std::string::npos) fail(d.rest, "expected 'sample <t> = v1, v2, ...'");
        const Span name = trim({d.rest.text.substr(0, eq), d.rest.line, d.rest.column});
        if (!param_ctx.count(name.text)) fail(name, "sample for undeclared parameter '" + name.text + "'");
        const Span values{d.rest.text.substr(eq + 1), d.rest.line, d.rest.column + eq + 1};
        auto& list = samples[name.text];
        for (const auto& part : split(values, ',')) {
          if (part.text.empty()) fail(part, "empty sample value");
          list.push_back(parse_value(part, field));
        }
      } else if (kw == "kernel_check") {
        if (!d.rest.text.empty()) fail(d.rest, "'kernel_check' takes no arguments");
        if (saw_kernel) fail(d.rest, "duplicate 'kernel_check' block");
        in_kernel = saw_kernel = true;
      } else if (kw == "map") {
        if (!in_kernel) fail(d.rest, "'map' outside a kernel_check block");
        const auto arrow = d.rest.text.find("->");
        if (arrow == std::string::npos) fail(d.rest, "expected 'map <var> -> <poly>'");
        const Span var = trim({d.rest.text.substr(0, arrow), d.rest.line, d.rest.column});
        const Span image = trim({d.rest.text.substr(arrow + 2), d.rest.line, d.rest.column + arrow + 2});
        if (!ctx->find(var.text)) fail(var, "'" + var.text + "' is not a family variable");
        if (image.text.empty()) fail(image, "missing image polynomial");
        for (const auto& m : maps) {
          if (m.first.text == var.text) fail(var, "variable '" + var.text + "' mapped twice");
        }
        maps.emplace_back(var, image);
      } else if (kw == "claimed") {
        if (!in_kernel) fail(d.rest, "'claimed' outside a kernel_check block");
        claimed_spans.push_back(d.rest);
      } else if (kw == "closure") {
        const auto w = words(d.rest);
        if (w.empty() || w[0].text != "by") fail(d.rest, "expected 'closure by <poly>'");
        if (closure) fail(d.rest, "duplicate 'closure' directive");
        const auto by_end = d.rest.text.find("by") + 2;
        const Span poly = trim({d.rest.text.substr(by_end), d.rest.line, d.rest.column + by_end});
        if (poly.text.empty()) fail(poly, "missing polynomial after 'closure by'");
        closure = parse_at(poly, ctx, field);
      } else {
        fail({"", d.rest.line, d.column}, "unknown directive '" + kw + "'");
      }
    }
    if (family_gens.empty()) fail(end_, "missing 'family' directive");
    if (!rank) fail(end_, "missing 'rank' directive");

    std::vector<Parametrization> parametrizations;
    for (auto& [name, polys] : params) {
      parametrizations.push_back({name.text, param_ctx.at(name.text), std::move(polys), samples[name.text]});
    }

    FamilyFile file{FamilySpec::create(field, ctx, std::move(base_gens), std::move(family_gens), *rank,
                                       std::move(points), std::move(parametrizations), limits),
                    std::nullopt, closure};
    if (saw_kernel) file.kernel_check = build_kernel_block(ctx, field, maps, claimed_spans);
    return file;
  }

 private:
  void check_reserved(const Span& name) const {
    if (!name.text.empty() && name.text[0] == '_') {
      throw ValidationError("line " + std::to_string(name.line) + ": name '" + name.text +
                            "' is reserved (leading '_')");
    }
  }

  std::vector<std::string> parse_names(const Directive& d) const {
    std::vector<std::string> out;
    for (const auto& w : words(d.rest)) {
      if (!valid_identifier(w.text)) fail(w, "invalid variable name '" + w.text + "'");
      check_reserved(w);
      out.push_back(w.text);
    }
    if (out.empty()) fail(d.rest, "'" + d.keyword + "' needs at least one name");
    return out;
  }

  void scan_header() {
    for (const auto& d : directives_) {
      if (d.keyword == "field") {
        if (field_) fail(d.rest, "duplicate 'field' directive");
        const auto w = words(d.rest);
        if (w.size() == 1 && w[0].text == "Q") {
          field_ = FieldSpec::rationals();
        } else if (w.size() == 2 && w[0].text == "Fp" &&
                   w[1].text.find_first_not_of("0123456789") == std::string::npos && w[1].text.size() <= 18) {
          try {
            field_ = FieldSpec::prime(std::stoull(w[1].text));
          } catch (const ValidationError& e) {
            fail(w[1], e.what());
          }
        } else {
          fail(d.rest, "expected 'field Q' or 'field Fp <prime>'");
        }
      } else if (d.keyword == "base_vars") {
        if (!base_names_.empty()) fail(d.rest, "duplicate 'base_vars' directive");
        base_names_ = parse_names(d);
      } else if (d.keyword == "fiber_vars") {
        if (!fiber_names_.empty()) fail(d.rest, "duplicate 'fiber_vars' directive");
        fiber_names_ = parse_names(d);
      }
    }
    if (!field_) fail(end_, "missing 'field' directive");
    if (base_names_.empty()) fail(end_, "missing 'base_vars' directive");
    if (fiber_names_.empty()) fail(end_, "missing 'fiber_vars' directive");
  }

  KernelCheckBlock build_kernel_block(const ContextPtr& ctx, const FieldSpec& field,
                                      const std::vector<std::pair<Span, Span>>& maps,
                                      const std::vector<Span>& claimed) const {
    std::vector<std::string> targets;
    for (const auto& [var, image] : maps) {
      for (auto& name : polynomial_identifiers(image.text)) {
        check_reserved({name, image.line, image.column});
        if (std::find(targets.begin(), targets.end(), name) == targets.end()) targets.push_back(name);
      }
    }
    if (maps.empty()) throw ValidationError("kernel_check block has no 'map' lines");
    if (targets.empty()) targets.push_back("_const");
    KernelCheckBlock block;
    block.target = VariableContext::make(targets);
    for (const auto& [var, image] : maps) block.maps.emplace_back(var.text, parse_at(image, block.target, field));
    for (const auto& s : claimed) {
      auto g = parse_list(s, ctx, field);
      block.claimed.insert(block.claimed.end(), g.begin(), g.end());
    }
    return block;
  }

  std::vector<Directive> directives_;
  Span end_;
  std::optional<FieldSpec> field_;
  std::vector<std::string> base_names_;
  std::vector<std::string> fiber_names_;
};

std::string join(const std::vector<Polynomial>& polys, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (i != 0) out += sep;
    out += polys[i].to_string();
  }
  return out;
}

}  // namespace

FamilyFile parse_family_file(std::string_view text, const GroebnerLimits& limits) {
  return FamilyParser(text).parse(limits);
}

std::string render_family_file(const FamilyFile& file) {
  const auto& spec = file.spec;
  const auto& ctx = *spec.context();
  std::ostringstream out;
  out << "field " << spec.field().to_string() << '\n';
  out << "base_vars";
  for (std::size_t i = 0; i < spec.base_dim(); ++i) out << ' ' << ctx.name(i);
  out << "\nfiber_vars";
  for (std::size_t i = spec.base_dim(); i < ctx.size(); ++i) out << ' ' << ctx.name(i);
  out << '\n';
  if (!spec.base_generators().empty()) out << "base_ideal " << join(spec.base_generators(), " ; ") << '\n';
  out << "family " << join(spec.family_generators(), " ; ") << '\n';
  out << "rank " << spec.expected_dim() << '\n';
  for (const auto& p : spec.declared_points()) {
    out << "point";
    for (const auto& c : p.coordinates) out << ' ' << c.to_string();
    out << '\n';
  }
  for (const auto& p : spec.parametrizations()) {
    out << "param " << p.parameter << " : " << join(p.images, ", ") << '\n';
    if (!p.samples.empty()) {
      out << "sample " << p.parameter << " =";
      for (std::size_t i = 0; i < p.samples.size(); ++i) out << (i == 0 ? " " : ", ") << p.samples[i].to_string();
      out << '\n';
    }
  }
  if (file.kernel_check) {
    out << "kernel_check\n";
    for (const auto& [var, image] : file.kernel_check->maps) out << "map " << var << " -> " << image.to_string() << '\n';
    if (!file.kernel_check->claimed.empty()) out << "claimed " << join(file.kernel_check->claimed, " ; ") << '\n';
  }
  if (file.closure_by) out << "closure by " << file.closure_by->to_string() << '\n';
  return out.str();
}

FamilyFile load_family_file(const std::filesystem::path& path, const GroebnerLimits& limits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_family_file(buf.str(), limits);
}

}  // namespace subbundle
