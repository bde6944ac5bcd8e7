#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qspec/operator_space.hpp"
#include "qspec/quasi_product.hpp"
#include "qspec/sample.hpp"

namespace qspec {

/// The triple (quasi-product, g, gamma) against which definiteness,
/// positivity and spectra are measured. The same pairing and the same g are
/// used for every query made through one context.
class GContext {
 public:
  GContext(Space space, QuasiProduct qp, NlOperator g, NlOperator gamma);

  // (scalar_product, g(x) = |x|, gamma = g) on the dim-1 algebra.
  static GContext scalar();
  // (weighted_sum w, g(x) = ||x|| 1_alg, gamma = g) on the sup-norm algebra.
  static GContext pointwise(std::size_t dim, std::vector<double> w = {});

  const Space& space() const { return space_; }
  const QuasiProduct& qp() const { return qp_; }
  const NlOperator& g() const { return g_; }
  const NlOperator& gamma() const { return gamma_; }
  bool canonical_gamma() const;  // gamma(x) = ||x|| 1_alg

  // [v, g(x)]
  double pair_g(const Vec& v, const Vec& x) const;
  // k1 lower bound [gamma(x), g(x)] >= k1_min ||x|| ||g(x)|| (declared)
  double k1_min() const { return k1_min_; }
  double k2_max() const { return k2_max_; }

 private:
  Space space_;
  QuasiProduct qp_;
  NlOperator g_;
  NlOperator gamma_;
  double k1_min_ = 1.0;
  double k2_max_ = 1.0;
};

// [F(x), g(x)] - the primitive every order query reduces to.
double definite_value(const NlOperator& f, const GContext& ctx, const Vec& x);

struct ProfileCheck {
  bool ok = false;
  double worst = 0.0;  // largest normalized deviation seen
  std::optional<Vec> witness;
};

// Asserts the profile contract against the context's gauge before any oracle
// relies on it: F(x) = phi(x) gamma(x) pointwise on samples, and phi inside
// its declared range.
ProfileCheck verify_profile(const NlOperator& f, const GContext& ctx,
                            const SampleSet& samples, double tol = 1e-9);

struct PositivityVerdict {
  bool consistent = true;
  std::optional<Vec> counterexample;
  double worst = 0.0;  // most negative definite value seen, normalized
};

PositivityVerdict is_g_positive(const NlOperator& f, const GContext& ctx,
                                const SampleSet& samples, double tol = 1e-9);

// F1 >= F2 in the g-order.
PositivityVerdict is_g_ordered(const NlOperator& f1, const NlOperator& f2,
                               const GContext& ctx, const SampleSet& samples,
                               double tol = 1e-9);

struct AbsParts {
  NlOperator abs;    // |F|
  NlOperator plus;   // (|F| + F)/2
  NlOperator minus;  // (|F| - F)/2
};

// |F|(x) = F(x) on the nonnegative branch of [F(x), g(x)], else -F(x).
// The identities |F| = F+ + F-, F = F+ - F- hold exactly by construction.
AbsParts abs_parts(const NlOperator& f, const GContext& ctx);

struct SqrtHypothesis {
  bool g_order_ok = false;        // 0 <= F <= 1_X in the g-order
  bool coordinatewise_ok = false; // F(x) in [0,1] per coordinate on samples
  std::optional<Vec> witness;
};

// Both readings of the square-root hypothesis, reported separately: the
// g-order is the stated hypothesis, the coordinatewise box is what actually
// drives the damped iteration.
SqrtHypothesis sqrt_hypothesis_check(const NlOperator& f, const GContext& ctx,
                                     const SampleSet& samples, double tol = 1e-9);

enum class SqrtSchedule { HalfStep, ThirdStep };

/// Pointwise square root in the algebra: G(x)G(x) = F(x), via the damped
/// Newton iteration G_{k+1} = G_k + a (F - G_k^2) from G_0 = 0, which the
/// coordinatewise [0,1] hypothesis makes converge monotonically. Evaluation
/// throws NonConvergenceError (carrying the point, the residual and a
/// rescaling hint) where the hypothesis fails.
NlOperator alg_sqrt(const NlOperator& f, const GContext& ctx, double tol = 1e-8,
                    int max_iter = 200,
                    SqrtSchedule schedule = SqrtSchedule::HalfStep);

/// Star square root: G with (G*G)(x) = F(x), i.e. G(x)^2 = ||x|| F(x).
/// Implemented by rescaling the operand into the unit box (scale constant
/// p(F) ||x||), taking the pointwise root, and unscaling.
NlOperator star_sqrt(const NlOperator& f, const GContext& ctx, double tol = 1e-8,
                     int max_iter = 200);

// Residual sup over samples of the defining identities, for verification.
double alg_sqrt_residual(const NlOperator& f, const NlOperator& g_root,
                         const GContext& ctx, const SampleSet& samples);
double star_sqrt_residual(const NlOperator& f, const NlOperator& g_root,
                          const GContext& ctx, const SampleSet& samples);

}  // namespace qspec
