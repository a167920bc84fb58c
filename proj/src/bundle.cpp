#include "subbundle/bundle.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

#include "subbundle/errors.hpp"

namespace subbundle {

// ---------------------------------------------------------------------------
// Linear algebra over the coefficient field

namespace {

struct Echelon {
  ScalarMatrix rows;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form.
Echelon row_reduce(ScalarMatrix m, std::size_t ncols) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const FieldElement inv = m[row][col].inverse();
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const FieldElement factor = m[r][col];
      for (std::size_t c = col; c < ncols; ++c) m[r][c] -= factor * m[row][c];
    }
    e.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  e.rows = std::move(m);
  return e;
}

}  // namespace

std::size_t scalar_rank(const ScalarMatrix& m) {
  if (m.empty()) return 0;
  return row_reduce(m, m.front().size()).pivots.size();
}

std::vector<std::vector<FieldElement>> kernel_basis(const ScalarMatrix& m, std::size_t ncols, const FieldSpec& field) {
  const Echelon e = row_reduce(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<FieldElement>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElement> v(ncols, FieldElement::zero(field));
    v[free] = FieldElement::one(field);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Points and family data

std::string BasePoint::label() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    if (i != 0) out += ',';
    out += coordinates[i].to_string();
  }
  return out + ")";
}

bool operator==(const Parametrization& a, const Parametrization& b) {
  return a.parameter == b.parameter && same_context(a.context, b.context) && a.images == b.images &&
         a.samples == b.samples;
}

namespace {

std::string describe_coordinates(const std::vector<FieldElement>& c) {
  return BasePoint{c, std::nullopt, std::nullopt}.label();
}

}  // namespace

FamilySpec FamilySpec::create(FieldSpec field, ContextPtr ctx, std::vector<Polynomial> base_generators,
                              std::vector<Polynomial> family_generators, std::size_t expected_dim,
                              std::vector<std::vector<FieldElement>> points, std::vector<Parametrization> params,
                              GroebnerLimits limits) {
  if (!ctx || !ctx->has_split()) throw ValidationError("a family needs both base and fiber variables");
  auto base_ctx = ctx->base_context();
  auto fiber_ctx = ctx->fiber_context();
  const std::size_t m = ctx->base_count();
  const std::size_t n = ctx->fiber_count();
  if (expected_dim > n) {
    throw ValidationError("rank " + std::to_string(expected_dim) + " exceeds the fiber dimension " +
                          std::to_string(n));
  }

  std::vector<Polynomial> base_gens;
  for (auto& b : base_generators) {
    if (b.field() != field) throw MixedFields();
    if (!same_context(b.context(), base_ctx)) throw ValidationError("base generator uses fiber variables");
    if (!b.is_zero()) base_gens.push_back(b.with_order(MonomialOrder::grevlex()));
  }
  std::vector<Polynomial> family_gens;
  for (auto& f : family_generators) {
    if (f.field() != field) throw MixedFields();
    if (!same_context(f.context(), ctx)) throw ValidationError("family generator outside the family context");
    if (!f.is_zero()) family_gens.push_back(f.with_order(MonomialOrder::grevlex()));
  }

  std::vector<std::string> notices;
  {
    const Ideal family(ctx, field, family_gens, MonomialOrder::grevlex(), limits);
    std::vector<Polynomial> missing;
    for (const auto& b : base_gens) {
      Polynomial lifted = move_to_context(b, ctx);
      if (!ideal_membership(lifted, family)) {
        notices.push_back("base generator " + b.to_string() + " added to the family equations");
        missing.push_back(std::move(lifted));
      }
    }
    family_gens.insert(family_gens.end(), missing.begin(), missing.end());
  }

  FamilySpec spec(field, ctx, Ideal(base_ctx, field, base_gens, MonomialOrder::grevlex(), limits),
                  Ideal(ctx, field, family_gens, MonomialOrder::grevlex(), limits));
  spec.base_ctx_ = base_ctx;
  spec.fiber_ctx_ = fiber_ctx;
  spec.base_generators_ = std::move(base_gens);
  spec.family_generators_ = std::move(family_gens);
  spec.expected_dim_ = expected_dim;
  spec.limits_ = limits;
  spec.notices_ = std::move(notices);

  for (auto& coords : points) {
    if (coords.size() != m) {
      throw ValidationError("point " + describe_coordinates(coords) + " needs " + std::to_string(m) +
                            " coordinates");
    }
    for (const auto& c : coords) {
      if (c.spec() != field) throw MixedFields();
    }
    if (!spec.on_base(coords)) {
      std::string detail;
      for (const auto& b : spec.base_generators_) {
        const auto value = evaluate(b, coords);
        if (!value.is_zero()) {
          detail = b.to_string() + " evaluates to " + value.to_string();
          break;
        }
      }
      throw ValidationError("point " + describe_coordinates(coords) + " is not on the base: " + detail);
    }
    spec.declared_points_.push_back({std::move(coords), std::nullopt, std::nullopt});
  }

  for (auto& p : params) {
    if (!p.context || p.context->size() != 1 || p.context->name(0) != p.parameter) {
      throw ValidationError("parametrization '" + p.parameter + "' must use exactly its parameter variable");
    }
    if (p.images.size() != m) {
      throw ValidationError("parametrization '" + p.parameter + "' needs " + std::to_string(m) + " coordinates");
    }
    std::map<std::string, Polynomial> assignment;
    for (std::size_t i = 0; i < m; ++i) {
      if (p.images[i].field() != field) throw MixedFields();
      if (!same_context(p.images[i].context(), p.context)) throw ValidationError("parametrization image outside its parameter ring");
      assignment.emplace(base_ctx->name(i), p.images[i]);
    }
    for (const auto& b : spec.base_generators_) {
      const Polynomial image = substitute(b, assignment, p.context);
      if (!image.is_zero()) {
        throw ValidationError("parametrization '" + p.parameter + "' does not satisfy " + b.to_string() +
                              " (image " + image.to_string() + ")");
      }
    }
    for (const auto& s : p.samples) {
      if (s.spec() != field) throw MixedFields();
    }
  }
  spec.params_ = std::move(params);
  return spec;
}

bool FamilySpec::on_base(const std::vector<FieldElement>& coordinates) const {
  if (coordinates.size() != base_dim()) return false;
  return std::all_of(base_generators_.begin(), base_generators_.end(),
                     [&](const Polynomial& b) { return evaluate(b, coordinates).is_zero(); });
}

std::vector<BasePoint> FamilySpec::sample_points() const {
  std::vector<BasePoint> out = declared_points_;
  for (const auto& p : params_) {
    for (const auto& s : p.samples) {
      BasePoint pt;
      for (const auto& image : p.images) pt.coordinates.push_back(evaluate(image, {s}));
      pt.parameter = p.parameter;
      pt.parameter_value = s;
      out.push_back(std::move(pt));
    }
  }
  return out;
}

bool operator==(const FamilySpec& a, const FamilySpec& b) {
  return a.field_ == b.field_ && same_context(a.ctx_, b.ctx_) && a.base_generators_ == b.base_generators_ &&
         a.family_generators_ == b.family_generators_ && a.expected_dim_ == b.expected_dim_ &&
         a.declared_points_ == b.declared_points_ && a.params_ == b.params_;
}

// ---------------------------------------------------------------------------
// Jacobian and fibres

PolyMatrix jacobian_at_zero(const FamilySpec& spec) {
  PolyMatrix j;
  j.reserve(spec.family_generators().size());
  for (const auto& f : spec.family_generators()) j.push_back(fiber_linear_part(f));
  return j;
}

ScalarMatrix evaluate_matrix(const PolyMatrix& m, const std::vector<FieldElement>& point, const FieldSpec& field) {
  ScalarMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) {
    std::vector<FieldElement> r;
    r.reserve(row.size());
    for (const auto& entry : row) {
      if (entry.field() != field) throw MixedFields();
      r.push_back(evaluate(entry, point));
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

Polynomial specialize_to_fiber(const FamilySpec& spec, const Polynomial& f, const std::vector<FieldElement>& coords) {
  std::map<std::string, FieldElement> values;
  for (std::size_t i = 0; i < coords.size(); ++i) values.emplace(spec.base_context()->name(i), coords[i]);
  return move_to_context(specialize(f, values), spec.fiber_context());
}

void require_on_base(const FamilySpec& spec, const BasePoint& point) {
  if (point.coordinates.size() != spec.base_dim()) {
    throw PointNotOnBase("point " + point.label() + " needs " + std::to_string(spec.base_dim()) + " coordinates");
  }
  for (const auto& c : point.coordinates) {
    if (c.spec() != spec.field()) throw MixedFields();
  }
  if (!spec.on_base(point.coordinates)) throw PointNotOnBase("point " + point.label() + " is not on the base");
}

Ideal fiber_ideal_of(const FamilySpec& spec, const std::vector<Polynomial>& generators, const BasePoint& point) {
  std::vector<Polynomial> gens;
  for (const auto& f : generators) {
    Polynomial g = specialize_to_fiber(spec, f, point.coordinates);
    if (!g.is_zero()) gens.push_back(std::move(g));
  }
  return Ideal(spec.fiber_context(), spec.field(), std::move(gens), MonomialOrder::grevlex(), spec.limits());
}

// Linear forms sum_j M_ij y_j over the fiber context.
std::vector<Polynomial> linear_forms(const FamilySpec& spec, const ScalarMatrix& m) {
  std::vector<Polynomial> out;
  const auto& fctx = spec.fiber_context();
  for (const auto& row : m) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_zero()) terms.push_back({Monomial::variable(fctx->size(), j), row[j]});
    }
    Polynomial form = Polynomial::from_terms(fctx, spec.field(), std::move(terms));
    if (!form.is_zero()) out.push_back(std::move(form));
  }
  return out;
}

std::string join_ideal(const std::vector<Polynomial>& gens) {
  std::string out = "⟨";
  if (gens.empty()) out += "0";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i != 0) out += ", ";
    out += gens[i].to_string();
  }
  return out + "⟩";
}

}  // namespace

Ideal fiber_ideal(const FamilySpec& spec, const BasePoint& point) {
  require_on_base(spec, point);
  return fiber_ideal_of(spec, spec.family_generators(), point);
}

std::string to_string(FiberStatus status) {
  switch (status) {
    case FiberStatus::ReducedLinear: return "ReducedLinear";
    case FiberStatus::NonReduced: return "NonReduced";
    case FiberStatus::NotScalarClosed: return "NotScalarClosed";
    case FiberStatus::DimensionMismatch: return "DimensionMismatch";
  }
  return "?";
}

std::string FiberReport::ideal_text() const { return join_ideal(fiber_gb); }

FiberReport analyze_fiber(const FamilySpec& spec, const BasePoint& point) {
  const Ideal fiber = fiber_ideal(spec, point);
  const std::size_t n = spec.fiber_rank();

  FiberReport report;
  report.point = point;
  report.fiber_gb = fiber.groebner_basis();
  report.fiber_dim = krull_dimension(fiber);
  report.jacobian = evaluate_matrix(jacobian_at_zero(spec), point.coordinates, spec.field());
  report.jacobian_rank = scalar_rank(report.jacobian);
  report.tangent_dim = n - report.jacobian_rank;
  report.tangent_basis = kernel_basis(report.jacobian, n, spec.field());

  // V(fiber) is a cone iff every homogeneous component of every basis element
  // vanishes on it.
  report.cone_ok = true;
  for (const auto& g : report.fiber_gb) {
    const auto parts = homogeneous_components(g);
    const auto nonzero = std::count_if(parts.begin(), parts.end(), [](const Polynomial& p) { return !p.is_zero(); });
    if (nonzero <= 1) continue;
    for (const auto& c : parts) {
      if (!c.is_zero() && !radical_membership(c, fiber)) {
        report.cone_ok = false;
        report.notes.push_back("component " + c.to_string() + " of " + g.to_string() +
                               " does not vanish on the fibre");
        break;
      }
    }
    if (!report.cone_ok) break;
  }

  const std::size_t d = spec.expected_dim();
  if (!report.cone_ok) {
    report.status = FiberStatus::NotScalarClosed;
  } else if (!report.fiber_dim) {
    report.status = FiberStatus::DimensionMismatch;
    report.notes.push_back("the fibre is empty");
  } else if (*report.fiber_dim != d) {
    report.status = FiberStatus::DimensionMismatch;
    report.notes.push_back("fibre dimension " + std::to_string(*report.fiber_dim) + " differs from the declared rank " +
                           std::to_string(d));
  } else if (report.tangent_dim > *report.fiber_dim) {
    report.status = FiberStatus::NonReduced;
    report.notes.push_back("tangent space at 0 has dimension " + std::to_string(report.tangent_dim) +
                           " > fibre dimension " + std::to_string(*report.fiber_dim) +
                           "; under the linear-fibre hypothesis the fibre is not reduced (a non-linear fibre would "
                           "show the same signature)");
  } else if (report.tangent_dim == *report.fiber_dim) {
    const Ideal linear(spec.fiber_context(), spec.field(), linear_forms(spec, report.jacobian),
                       MonomialOrder::grevlex(), spec.limits());
    if (ideal_equal(fiber, linear)) {
      report.status = FiberStatus::ReducedLinear;
    } else {
      report.status = FiberStatus::NonReduced;
      report.notes.push_back("fibre is set-theoretically ker J but its ideal " + join_ideal(report.fiber_gb) +
                             " differs from the linear ideal " + join_ideal(linear.groebner_basis()));
    }
  } else {
    // A cone lies inside the tangent space at 0, so this cannot happen.
    throw std::logic_error("tangent space smaller than a conical fibre at " + point.label());
  }
  report.reduced = report.status == FiberStatus::ReducedLinear && report.fiber_dim == d;
  return report;
}

// ---------------------------------------------------------------------------
// Global rank certificate

GlobalCertificate global_certificate(const FamilySpec& spec) {
  GlobalCertificate cert;
  const std::size_t n = spec.fiber_rank();
  const std::size_t d = spec.expected_dim();
  const std::size_t r = n - d;
  cert.expected_dim = d;
  cert.target_rank = r;
  cert.jacobian = jacobian_at_zero(spec);
  const std::size_t s = cert.jacobian.size();
  const std::size_t bound = std::min(s, n);
  const Ideal& base = spec.base_ideal();

  if (r + 1 > bound) {
    cert.rank_upper_ok = true;
    cert.notes.push_back("rank <= " + std::to_string(r) + " holds trivially for a " + std::to_string(s) + "x" +
                         std::to_string(n) + " matrix");
  } else {
    for (const auto& minor : matrix_minors(cert.jacobian, r + 1)) {
      if (!minor.is_zero() && !radical_membership(minor, base)) cert.offending_minors.push_back(minor);
    }
    cert.rank_upper_ok = cert.offending_minors.empty();
  }

  if (r == 0) {
    cert.rank_lower_ok = true;
    cert.notes.push_back("rank >= 0 holds trivially");
  } else if (r > bound) {
    cert.rank_lower_ok = false;
    cert.witness = base;
    cert.notes.push_back("J has fewer than " + std::to_string(r) + " rows or columns; its rank drops on all of X");
  } else {
    const Ideal locus = ideal_sum(base, matrix_minors(cert.jacobian, r));
    cert.rank_lower_ok = is_empty_variety(locus);
    if (!cert.rank_lower_ok) cert.witness = locus;
  }

  // F against ker theta, theta(x, y) = (x, J(x) y).
  const auto& ctx = spec.context();
  const std::size_t m = spec.base_dim();
  std::vector<Polynomial> kernel_gens;
  for (const auto& b : spec.base_generators()) kernel_gens.push_back(move_to_context(b, ctx));
  std::vector<Polynomial> rows;
  for (const auto& row : cert.jacobian) {
    Polynomial form(ctx, spec.field());
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j].is_zero()) continue;
      form += move_to_context(row[j], ctx) * Polynomial::variable(ctx, spec.field(), ctx->name(m + j));
    }
    if (!form.is_zero()) rows.push_back(std::move(form));
  }
  kernel_gens.insert(kernel_gens.end(), rows.begin(), rows.end());
  const Ideal kernel(ctx, spec.field(), kernel_gens, MonomialOrder::grevlex(), spec.limits());
  cert.kernel_match_ok =
      std::all_of(spec.family_generators().begin(), spec.family_generators().end(),
                  [&](const Polynomial& f) { return radical_membership(f, kernel); }) &&
      std::all_of(rows.begin(), rows.end(),
                  [&](const Polynomial& row) { return radical_membership(row, spec.family_ideal()); });
  return cert;
}

// ---------------------------------------------------------------------------
// Verdict

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Subbundle: return "Subbundle";
    case VerdictKind::NotSubbundle: return "NotSubbundle";
    case VerdictKind::HypothesisViolated: return "HypothesisViolated";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<std::vector<FieldElement>> search_rational_points(const Ideal& ideal, const VerdictOptions& options) {
  const std::size_t m = ideal.context()->size();
  const FieldSpec& field = ideal.field();
  std::vector<FieldElement> values;
  const auto p = field.characteristic();
  std::size_t total = 1;
  auto fits = [&](std::size_t per_axis) {
    total = 1;
    for (std::size_t i = 0; i < m; ++i) {
      total *= per_axis;
      if (total > options.max_search_points) return false;
    }
    return true;
  };
  if (field.is_prime_field() && p <= options.max_search_points && fits(static_cast<std::size_t>(p))) {
    for (std::uint64_t r = 0; r < p; ++r) values.push_back(FieldElement::from_int(static_cast<long long>(r), field));
  } else if (fits(static_cast<std::size_t>(2 * options.search_box + 1))) {
    // 0, 1, -1, 2, -2, ...
    values.push_back(FieldElement::zero(field));
    for (int v = 1; v <= options.search_box; ++v) {
      values.push_back(FieldElement::from_int(v, field));
      values.push_back(FieldElement::from_int(-v, field));
    }
  } else {
    return {};
  }
  const auto& gens = ideal.generators();
  std::vector<std::vector<FieldElement>> found;
  std::vector<std::size_t> odometer(m, 0);
  std::vector<FieldElement> point(m);
  for (std::size_t step = 0; step < total; ++step) {
    for (std::size_t i = 0; i < m; ++i) point[i] = values[odometer[i]];
    if (std::all_of(gens.begin(), gens.end(), [&](const Polynomial& g) { return evaluate(g, point).is_zero(); })) {
      found.push_back(point);
      if (found.size() >= options.max_witness_points) break;
    }
    for (std::size_t i = m; i-- > 0;) {
      if (++odometer[i] < values.size()) break;
      odometer[i] = 0;
    }
  }
  return found;
}

namespace {

std::vector<FiberReport> analyze_all(const FamilySpec& spec, const std::vector<BasePoint>& points, bool parallel) {
  std::vector<FiberReport> out;
  out.reserve(points.size());
  if (!parallel || points.size() < 2) {
    for (const auto& pt : points) out.push_back(analyze_fiber(spec, pt));
    return out;
  }
  std::vector<std::future<FiberReport>> pending;
  pending.reserve(points.size());
  for (const auto& pt : points) {
    pending.push_back(std::async(std::launch::async, [&spec, &pt] { return analyze_fiber(spec, pt); }));
  }
  // Collected in input order.
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

bool violates_hypothesis(const FiberReport& r) {
  return r.status == FiberStatus::NotScalarClosed || r.status == FiberStatus::DimensionMismatch;
}

std::string fibre_phrase(const FiberReport& r) {
  switch (r.status) {
    case FiberStatus::NonReduced: return "non-reduced fibre at " + r.point.label() + ": ideal " + r.ideal_text();
    case FiberStatus::NotScalarClosed:
      return "fibre at " + r.point.label() + " is not closed under scaling: ideal " + r.ideal_text();
    case FiberStatus::DimensionMismatch:
      return "fibre at " + r.point.label() + " has dimension " +
             (r.fiber_dim ? std::to_string(*r.fiber_dim) : std::string("-1 (empty)")) + ": ideal " + r.ideal_text();
    case FiberStatus::ReducedLinear: return "reduced linear fibre at " + r.point.label();
  }
  return {};
}

}  // namespace

Verdict verdict(const FamilySpec& spec, const VerdictOptions& options) {
  Verdict v;
  v.fibers = analyze_all(spec, spec.sample_points(), options.parallel);
  v.certificate = global_certificate(spec);
  const auto& cert = v.certificate;

  v.narrative.push_back("sampled " + std::to_string(v.fibers.size()) + " fibres; declared rank d = " +
                        std::to_string(spec.expected_dim()) + ", so J(x) must have rank " +
                        std::to_string(cert.target_rank) + " everywhere on X");
  v.narrative.push_back(std::string("rank <= ") + std::to_string(cert.target_rank) + " on X: " +
                        (cert.rank_upper_ok ? "yes" : "no"));
  v.narrative.push_back(std::string("rank >= ") + std::to_string(cert.target_rank) + " on X: " +
                        (cert.rank_lower_ok ? "yes" : "no"));
  v.narrative.push_back(std::string("F equals ker(x, y) -> (x, J(x)y) as a set: ") +
                        (cert.kernel_match_ok ? "yes" : "no"));

  auto first = [](const std::vector<FiberReport>& fibers, auto pred) -> const FiberReport* {
    auto it = std::find_if(fibers.begin(), fibers.end(), pred);
    return it == fibers.end() ? nullptr : &*it;
  };

  if (const auto* bad = first(v.fibers, violates_hypothesis)) {
    v.kind = VerdictKind::HypothesisViolated;
    v.summary = fibre_phrase(*bad);
    v.narrative.push_back("the fibres are not all linear subspaces of dimension d; the sub-bundle question does not "
                          "apply as posed");
    return v;
  }
  if (const auto* bad = first(v.fibers, [](const FiberReport& r) { return r.status == FiberStatus::NonReduced; })) {
    v.kind = VerdictKind::NotSubbundle;
    v.summary = fibre_phrase(*bad);
    v.narrative.push_back("a sub-bundle has reduced fibres everywhere, and this one does not");
    return v;
  }
  if (cert.complete()) {
    v.kind = VerdictKind::Subbundle;
    v.summary = "all " + std::to_string(v.fibers.size()) + " sampled fibres reduced; J(x) has constant rank " +
                std::to_string(cert.target_rank) + " on X and F is its kernel";
    v.narrative.push_back("F is the kernel of a bundle homomorphism of constant rank, hence a sub-bundle");
    return v;
  }

  if (!cert.rank_lower_ok && cert.witness) {
    for (const auto& coords : search_rational_points(*cert.witness, options)) {
      v.witness_fibers.push_back(analyze_fiber(spec, BasePoint{coords, std::nullopt, std::nullopt}));
    }
    if (const auto* bad = first(v.witness_fibers, violates_hypothesis)) {
      v.kind = VerdictKind::HypothesisViolated;
      v.summary = fibre_phrase(*bad) + " (rank-drop locus)";
      return v;
    }
    if (const auto* bad =
            first(v.witness_fibers, [](const FiberReport& r) { return r.status == FiberStatus::NonReduced; })) {
      v.kind = VerdictKind::NotSubbundle;
      v.summary = fibre_phrase(*bad) + " (rank-drop locus)";
      v.narrative.push_back("the rank of J drops at " + bad->point.label() + ", where the fibre is not reduced");
      return v;
    }
    v.narrative.push_back("J(x) drops rank on " + join_ideal(cert.witness->generators()) +
                          " but no rational point was found there; extend the sample points");
  } else if (!cert.rank_upper_ok) {
    v.narrative.push_back("some (r+1)-minors of J do not vanish on X; no sampled point exhibits it");
  } else {
    v.narrative.push_back("J(x) has constant rank but F differs from ker J as a set");
  }
  v.kind = VerdictKind::Inconclusive;
  v.summary = "all sampled fibres reduced, but the constant-rank certificate failed";
  return v;
}

// ---------------------------------------------------------------------------
// Kernels of ring maps

KernelCheck check_kernel_presentation(const ContextPtr& source, const std::map<std::string, Polynomial>& images,
                                      const std::vector<Polynomial>& claimed, const GroebnerLimits& limits) {
  if (images.empty()) throw ValidationError("kernel check needs variable images");
  const ContextPtr target = images.begin()->second.context();
  const FieldSpec field = images.begin()->second.field();
  for (const auto& [name, image] : images) {
    if (!source->find(name)) throw UnknownVariable(name);
    if (!same_context(image.context(), target)) throw ContextMismatch("kernel images use different rings");
    if (image.field() != field) throw MixedFields();
  }
  for (const auto& name : source->names()) {
    if (!images.count(name)) throw ValidationError("source variable '" + name + "' has no image");
  }
  const auto plain_source = VariableContext::make(source->names());
  for (const auto& c : claimed) {
    if (!same_context(c.context(), source) && !same_context(c.context(), plain_source)) throw ContextMismatch();
    if (c.field() != field) throw MixedFields();
  }

  // Graph ring: renamed target variables first, then the source variables.
  std::vector<std::string> names;
  std::vector<std::string> eliminated;
  for (const auto& t : target->names()) {
    std::string renamed = t;
    if (source->find(t)) {
      VariableContext taken([&] {
        std::vector<std::string> all = source->names();
        for (const auto& list : {names, target->names()}) {
          for (const auto& n : list) {
            if (std::find(all.begin(), all.end(), n) == all.end()) all.push_back(n);
          }
        }
        return all;
      }());
      renamed = fresh_variable(taken, "_" + t);
    }
    names.push_back(renamed);
    eliminated.push_back(renamed);
  }
  names.insert(names.end(), source->names().begin(), source->names().end());
  const auto graph_ctx = VariableContext::make(names);

  std::map<std::string, Polynomial> rename;
  for (std::size_t i = 0; i < target->size(); ++i) {
    rename.emplace(target->name(i), Polynomial::variable(graph_ctx, field, eliminated[i]));
  }
  std::vector<Polynomial> graph;
  for (const auto& name : source->names()) {
    graph.push_back(Polynomial::variable(graph_ctx, field, name) - substitute(images.at(name), rename, graph_ctx));
  }
  const Ideal kernel = elimination_ideal(Ideal(graph_ctx, field, graph, MonomialOrder::grevlex(), limits), eliminated);

  std::vector<Polynomial> kernel_gens;
  for (const auto& g : kernel.groebner_basis()) kernel_gens.push_back(move_to_context(g, source));
  std::vector<Polynomial> claimed_gens;
  for (const auto& c : claimed) claimed_gens.push_back(move_to_context(c, source));

  KernelCheck out;
  const Ideal computed(source, field, kernel_gens, MonomialOrder::grevlex(), limits);
  const Ideal expected(source, field, claimed_gens, MonomialOrder::grevlex(), limits);
  out.kernel = computed.groebner_basis();
  out.verified = ideal_equal(computed, expected);
  out.claimed_vanish = std::all_of(claimed_gens.begin(), claimed_gens.end(), [&](const Polynomial& c) {
    return substitute(c, images, target).is_zero();
  });
  return out;
}

bool verify_kernel_presentation(const ContextPtr& source, const std::map<std::string, Polynomial>& images,
                                const std::vector<Polynomial>& claimed) {
  return check_kernel_presentation(source, images, claimed).verified;
}

// ---------------------------------------------------------------------------
// Closure of a locally closed family

ClosureResult closure_check(const FamilySpec& spec, const Polynomial& g) {
  if (!same_context(g.context(), spec.context())) throw ContextMismatch();
  ClosureResult out{saturation(spec.family_ideal(), g), false, false, {}, {}};
  if (out.closure.is_unit()) {
    out.empty_family = true;
    out.notes.push_back("EmptyFamily: " + g.to_string() + " vanishes on all of F, so nothing is left to close");
    for (const auto& pt : spec.sample_points()) out.points.push_back({pt, false, false});
    return out;
  }
  out.fibers_match = true;
  std::size_t compared = 0;
  for (const auto& pt : spec.sample_points()) {
    ClosurePoint cp{pt, false, false};
    if (specialize_to_fiber(spec, g, pt.coordinates).is_zero()) {
      out.notes.push_back("fibre at " + pt.label() + " lies inside V(" + g.to_string() + "); not compared");
      out.points.push_back(std::move(cp));
      continue;
    }
    const Ideal original = fiber_ideal(spec, pt);
    const Ideal closed = fiber_ideal_of(spec, out.closure.generators(), pt);
    auto inside = [](const Ideal& a, const Ideal& b) {
      return std::all_of(a.generators().begin(), a.generators().end(),
                         [&b](const Polynomial& f) { return radical_membership(f, b); });
    };
    cp.compared = true;
    cp.match = inside(original, closed) && inside(closed, original);
    out.fibers_match = out.fibers_match && cp.match;
    ++compared;
    out.points.push_back(std::move(cp));
  }
  if (compared == 0) out.notes.push_back("no sampled fibre survives the removal of V(" + g.to_string() + ")");
  return out;
}

}  // namespace subbundle
