#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qspec/quasi_product.hpp"
#include "qspec/sample.hpp"
#include "qspec/space.hpp"
#include "qspec/vec.hpp"

namespace qspec {

enum class Carrier { GammaCanonical, Identity };

// Known structure attached to an operator. Profile operators factor through a
// scalar field phi: F(x) = phi(x) * carrier(x), which is what makes exact
// spectral oracles possible downstream.
struct ProfileInfo {
  std::function<double(const Vec&)> phi;
  Carrier carrier = Carrier::GammaCanonical;
  // Exact inf/sup of phi over the whole space, when known in closed form.
  std::optional<std::pair<double, double>> range;
};

struct LinearInfo {
  std::vector<std::vector<double>> matrix;  // rows x cols
};

/// A possibly nonlinear map X -> Y between finite-dimensional spaces, with
/// value semantics (cheap copies, immutable after construction, safe for
/// concurrent evaluation). map(0) is pinned to value_at_zero.
class NlOperator {
 public:
  using MapFn = std::function<Vec(const Vec&)>;

  static NlOperator blackbox(Space space, MapFn map, Vec value_at_zero,
                             std::string name = "blackbox");
  static NlOperator blackbox_between(Space in, Space out, MapFn map,
                                     Vec value_at_zero, std::string name);
  static NlOperator profile(Space space, std::function<double(const Vec&)> phi,
                            Carrier carrier,
                            std::optional<std::pair<double, double>> range,
                            std::string name = "profile");
  static NlOperator linear(Space in, Space out,
                           std::vector<std::vector<double>> matrix,
                           std::string name = "linear");
  static NlOperator zero(Space space);
  static NlOperator identity(Space space);
  // The star unit e: e(x) = ||x|| 1_alg for x != 0 and e(0) = 1_alg.
  static NlOperator star_unit(Space space);
  // F(x) + s0 (.) e(x): the bounded shift with value s0 at the origin.
  static NlOperator shifted(NlOperator base, Vec s0);

  Vec operator()(const Vec& x) const;
  const Space& space_in() const;
  const Space& space_out() const;
  const Vec& at_zero() const;
  const std::string& name() const;

  const ProfileInfo* profile_info() const;
  const LinearInfo* linear_info() const;
  const NlOperator* shift_base() const;
  const Vec* shift_offset() const;
  bool is_star_unit() const;
  bool is_zero_op() const;  // structurally the zero element

  bool vanishes_at_zero() const { return at_zero().is_zero(); }

 private:
  struct Impl;
  explicit NlOperator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Pointwise vector-space operations on operators. Profile structure is
// propagated when it survives the combination.
NlOperator operator+(const NlOperator& a, const NlOperator& b);
NlOperator operator-(const NlOperator& a, const NlOperator& b);
NlOperator operator*(double s, const NlOperator& a);
// Pointwise algebra product (FH)(x) = F(x) (.) H(x); distinct from star_mul.
NlOperator pointwise_mul(const NlOperator& a, const NlOperator& b);
// Composition (b after a).
NlOperator compose(const NlOperator& b, const NlOperator& a);

struct NormEstimate {
  double value = 0.0;
  bool exact = false;  // closed-form supremum; otherwise a sampled lower bound
  bool infinite = false;
  std::optional<Vec> witness;  // attaining (or best sampled) point
};

/// p(F) = max(sup_{x != 0} ||F(x)||/||x||, ||F(0)||). Exact for structures
/// with closed-form suprema (profiles with a declared range, linear maps
/// under the sup/one norms, scalar shifts of those); otherwise a sampled
/// lower bound over the given set plus shrink/grow scans. Ratio divergence
/// along shrinking ||x|| reports an infinite estimate, meaning F lies outside
/// the bounded operator space.
NormEstimate op_norm(const NlOperator& f, const SampleSet& samples);

// max over samples (and zero) of the p-ratio; the sampled seminorm both
// op_norm and operator distances bottom out in.
double sampled_ratio_norm(const NlOperator& f, const SampleSet& samples);
double sampled_op_distance(const NlOperator& f, const NlOperator& g,
                           const SampleSet& samples);

/// Star multiplication (F1*F2)(x) = F1(x)F2(x)/||x||, (F1*F2)(0) = F1(0)F2(0).
/// The unit is recognized structurally, so e * F returns F itself.
NlOperator star_mul(const NlOperator& f1, const NlOperator& f2);

struct ComposeReport {
  bool pointwise_ok = false;   // ||F1(x)|| <= p(F1) ||x|| at every sample
  double worst_margin = 0.0;   // most negative slack, normalized
  double composed_sampled_norm = 0.0;
  double norm_product = 0.0;   // p(F1) * p(F2) estimates
  bool product_exact = false;
  bool bound_ok = false;       // composed sampled norm <= product
};

ComposeReport compose_bound_check(const NlOperator& f1, const NlOperator& f2,
                                  const SampleSet& samples);

struct DualityReport {
  struct ProbeEntry {
    std::string name;
    double value_at_x = 0.0;
    NormEstimate norm;
    bool inequality_ok = false;  // |F(x)| <= p(F) ||x||
    double margin = 0.0;
  };
  std::vector<ProbeEntry> probes;
  double witness_value = 0.0;  // attaining linear functional evaluated at x
  double witness_norm = 0.0;   // its exact norm (1 by construction)
  bool sup_attained = false;
};

/// Certifies ||x|| = sup |F(x)|/p(F) over the bounded functionals: the upper
/// bound per probe plus a constructed norm-one linear functional attaining
/// |F_x(x)| = ||x|| (sign functional for sup and weighted one norms, the
/// normalized inner product for the two-norm).
DualityReport dual_pairing(const Space& space, const Vec& x,
                           const std::vector<NlOperator>& probes,
                           const SampleSet& samples);

/// Recovers F with h(x,y) = [F(x), y] from a form h, for the inner-product
/// backed pairings (scalar_product, scaled_inner) where the basis solve is
/// closed-form. Verifies the residual on probes and re-solves against a
/// scaled basis to pin uniqueness. Throws HypothesisError when h violates
/// the boundedness hypothesis, NotRepresentableError when no representation
/// linear in y exists, UnsupportedError for pairings without a norm-compat
/// witness d (or outside the solvable family).
NlOperator represent_form(
    const std::function<double(const Vec&, const Vec&)>& h,
    const QuasiProduct& qp, const SampleSet& basis_probe, double tol = 1e-9,
    double c_bar_hint = 1e6);

}  // namespace qspec
