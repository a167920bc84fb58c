#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subbundle/ideal.hpp"

namespace subbundle {

using ScalarMatrix = std::vector<std::vector<FieldElement>>;

/// Exact rank by Gaussian elimination over the coefficient field.
std::size_t scalar_rank(const ScalarMatrix& m);
/// Basis of {y : M y = 0} for an m x ncols matrix (rows may be empty).
std::vector<std::vector<FieldElement>> kernel_basis(const ScalarMatrix& m, std::size_t ncols, const FieldSpec& field);

/// A point of the base X. Points produced by a parametrization remember the
/// parameter name and value they came from.
struct BasePoint {
  std::vector<FieldElement> coordinates;
  std::optional<std::string> parameter;
  std::optional<FieldElement> parameter_value;

  /// `(0,0)`
  std::string label() const;

  friend bool operator==(const BasePoint&, const BasePoint&) = default;
};

/// A curve t -> (p_1(t), ..., p_m(t)) into the base, sampled at given values.
struct Parametrization {
  std::string parameter;
  ContextPtr context;  // the single parameter variable
  std::vector<Polynomial> images;
  std::vector<FieldElement> samples;

  friend bool operator==(const Parametrization& a, const Parametrization& b);
};

/// A family F in X x k^n. The context lists the m base variables first and
/// the n fiber variables after them; X is cut out by the base generators and
/// F by the family generators.
class FamilySpec {
 public:
  /// Validates the data and returns the family. Base generators missing from
  /// the family ideal are appended to it and recorded in notices().
  /// Throws ValidationError.
  static FamilySpec create(FieldSpec field, ContextPtr ctx, std::vector<Polynomial> base_generators,
                           std::vector<Polynomial> family_generators, std::size_t expected_dim,
                           std::vector<std::vector<FieldElement>> points, std::vector<Parametrization> params = {},
                           GroebnerLimits limits = {});

  const FieldSpec& field() const noexcept { return field_; }
  const ContextPtr& context() const noexcept { return ctx_; }
  const ContextPtr& base_context() const noexcept { return base_ctx_; }
  const ContextPtr& fiber_context() const noexcept { return fiber_ctx_; }
  std::size_t base_dim() const { return ctx_->base_count(); }
  std::size_t fiber_rank() const { return ctx_->fiber_count(); }
  std::size_t expected_dim() const noexcept { return expected_dim_; }
  const GroebnerLimits& limits() const noexcept { return limits_; }

  /// Base generators over the base context.
  const Ideal& base_ideal() const noexcept { return base_ideal_; }
  /// Family generators over the full context.
  const Ideal& family_ideal() const noexcept { return family_ideal_; }
  const std::vector<Polynomial>& base_generators() const noexcept { return base_generators_; }
  const std::vector<Polynomial>& family_generators() const noexcept { return family_generators_; }

  const std::vector<BasePoint>& declared_points() const noexcept { return declared_points_; }
  const std::vector<Parametrization>& parametrizations() const noexcept { return params_; }
  /// Declared points followed by every parametrization sample, in input order.
  std::vector<BasePoint> sample_points() const;
  const std::vector<std::string>& notices() const noexcept { return notices_; }

  bool on_base(const std::vector<FieldElement>& coordinates) const;

  friend bool operator==(const FamilySpec& a, const FamilySpec& b);

 private:
  FamilySpec(FieldSpec field, ContextPtr ctx, Ideal base, Ideal family)
      : field_(field), ctx_(std::move(ctx)), base_ideal_(std::move(base)), family_ideal_(std::move(family)) {}

  FieldSpec field_;
  ContextPtr ctx_;
  ContextPtr base_ctx_;
  ContextPtr fiber_ctx_;
  Ideal base_ideal_;
  Ideal family_ideal_;
  std::vector<Polynomial> base_generators_;
  std::vector<Polynomial> family_generators_;
  std::size_t expected_dim_ = 0;
  std::vector<BasePoint> declared_points_;
  std::vector<Parametrization> params_;
  std::vector<std::string> notices_;
  GroebnerLimits limits_;
};

/// Row i holds d f_i / d y_j at y = 0 as base polynomials.
PolyMatrix jacobian_at_zero(const FamilySpec& spec);
ScalarMatrix evaluate_matrix(const PolyMatrix& m, const std::vector<FieldElement>& point, const FieldSpec& field);

/// The family generators specialized at a base point, over the fiber context.
/// Throws PointNotOnBase.
Ideal fiber_ideal(const FamilySpec& spec, const BasePoint& point);

enum class FiberStatus { ReducedLinear, NonReduced, NotScalarClosed, DimensionMismatch };
std::string to_string(FiberStatus status);

struct FiberReport {
  BasePoint point;
  std::vector<Polynomial> fiber_gb;
  /// nullopt for an empty fiber.
  std::optional<std::size_t> fiber_dim;
  ScalarMatrix jacobian;
  std::size_t jacobian_rank = 0;
  std::size_t tangent_dim = 0;
  std::vector<std::vector<FieldElement>> tangent_basis;
  bool cone_ok = false;
  bool reduced = false;
  FiberStatus status = FiberStatus::NonReduced;
  std::vector<std::string> notes;

  /// `⟨w^2⟩`
  std::string ideal_text() const;
};

/// Scheme-level analysis of one fibre: dimension, tangent space at the
/// origin, cone test and reducedness. Throws PointNotOnBase.
FiberReport analyze_fiber(const FamilySpec& spec, const BasePoint& point);

struct GlobalCertificate {
  std::size_t expected_dim = 0;
  /// n - d, the rank J(x) must have everywhere on X.
  std::size_t target_rank = 0;
  PolyMatrix jacobian;
  bool rank_upper_ok = false;
  bool rank_lower_ok = false;
  bool kernel_match_ok = false;
  /// (r+1)-minors of J not vanishing on X.
  std::vector<Polynomial> offending_minors;
  /// base ideal + r-minors, when the rank drops somewhere on X.
  std::optional<Ideal> witness;
  std::vector<std::string> notes;

  bool complete() const { return rank_upper_ok && rank_lower_ok && kernel_match_ok; }
};

GlobalCertificate global_certificate(const FamilySpec& spec);

enum class VerdictKind { Subbundle, NotSubbundle, HypothesisViolated, Inconclusive };
std::string to_string(VerdictKind kind);

struct VerdictOptions {
  bool parallel = true;
  /// Integer coordinates in [-box, box] are tried when searching the
  /// rank-drop locus for rational points; prime fields are enumerated fully
  /// when small enough.
  int search_box = 3;
  std::size_t max_search_points = 20000;
  std::size_t max_witness_points = 4;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::vector<FiberReport> fibers;
  GlobalCertificate certificate;
  /// Fibres over rank-drop points found by search, beyond the sampled ones.
  std::vector<FiberReport> witness_fibers;
  /// One-line justification, e.g. `non-reduced fibre at (0,0): ideal ⟨w^2⟩`.
  std::string summary;
  std::vector<std::string> narrative;
};

Verdict verdict(const FamilySpec& spec, const VerdictOptions& options = {});

/// Rational points of V(ideal) inside the search region.
std::vector<std::vector<FieldElement>> search_rational_points(const Ideal& ideal, const VerdictOptions& options);

struct KernelCheck {
  bool verified = false;
  /// Every claimed generator maps to zero under the images.
  bool claimed_vanish = false;
  /// Reduced basis of the computed kernel over the source context.
  std::vector<Polynomial> kernel;
};

/// Computes the kernel of the ring map source_i -> images[source_i] by
/// eliminating the target variables from the graph ideal, and compares it with
/// the ideal generated by claimed. Every source variable must be mapped.
/// Target variables colliding with source names are renamed internally.
KernelCheck check_kernel_presentation(const ContextPtr& source, const std::map<std::string, Polynomial>& images,
                                      const std::vector<Polynomial>& claimed, const GroebnerLimits& limits = {});
bool verify_kernel_presentation(const ContextPtr& source, const std::map<std::string, Polynomial>& images,
                                const std::vector<Polynomial>& claimed);

struct ClosurePoint {
  BasePoint point;
  /// False when g vanishes on the whole fibre, so nothing is left to compare.
  bool compared = false;
  bool match = false;
};

struct ClosureResult {
  Ideal closure;
  bool fibers_match = false;
  bool empty_family = false;
  std::vector<ClosurePoint> points;
  std::vector<std::string> notes;
};

/// Closure of V(family) minus V(g) by saturation, with fibrewise radical
/// comparison against the original family at every sample point.
/// Throws ZeroDivisorPolynomial.
ClosureResult closure_check(const FamilySpec& spec, const Polynomial& g);

}  // namespace subbundle
