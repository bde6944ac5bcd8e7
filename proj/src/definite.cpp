#include "qspec/definite.hpp"

#include <algorithm>
#include <cmath>

#include "qspec/errors.hpp"

namespace qspec {

namespace {

NlOperator canonical_gauge(const Space& space) {
  return NlOperator::profile(
      space, [](const Vec&) { return 1.0; }, Carrier::GammaCanonical,
      std::make_pair(1.0, 1.0), "gamma");
}

}  // namespace

GContext::GContext(Space space, QuasiProduct qp, NlOperator g, NlOperator gamma)
    : space_(std::move(space)), qp_(std::move(qp)), g_(std::move(g)),
      gamma_(std::move(gamma)) {
  if (qp_.space() != space_)
    throw StructuralError("quasi-product space does not match the context space");
  if (!g_.vanishes_at_zero() || !gamma_.vanishes_at_zero())
    throw PreconditionError("g and gamma must vanish at the origin");
  // Declared comparability constants for the canonical gauge.
  if (qp_.kind() == QpKind::WeightedSum) {
    double wsum = 0.0;
    for (double w : qp_.pair_weights()) wsum += w;
    k1_min_ = wsum;
  } else {
    k1_min_ = 1.0;
  }
  k2_max_ = 1.0;
}

GContext GContext::scalar() {
  Space sp = Space::scalar();
  NlOperator g = canonical_gauge(sp);  // |x| as a one-dim vector
  return GContext(sp, QuasiProduct::scalar_product(sp), g, g);
}

GContext GContext::pointwise(std::size_t dim, std::vector<double> w) {
  Space sp = Space::pointwise(dim);
  NlOperator g = canonical_gauge(sp);
  return GContext(sp, QuasiProduct::weighted_sum(sp, std::move(w)), g, g);
}

bool GContext::canonical_gamma() const {
  const ProfileInfo* p = gamma_.profile_info();
  return p && p->carrier == Carrier::GammaCanonical && p->range &&
         p->range->first == 1.0 && p->range->second == 1.0;
}

double GContext::pair_g(const Vec& v, const Vec& x) const {
  return qp_.eval(v, g_(x));
}

double definite_value(const NlOperator& f, const GContext& ctx, const Vec& x) {
  return ctx.pair_g(f(x), x);
}

ProfileCheck verify_profile(const NlOperator& f, const GContext& ctx,
                            const SampleSet& samples, double tol) {
  const ProfileInfo* p = f.profile_info();
  if (!p) throw PreconditionError("operator carries no profile structure");
  if (p->carrier == Carrier::GammaCanonical && !ctx.canonical_gamma())
    throw PreconditionError("profile carrier does not match the context gauge");
  ProfileCheck rep;
  rep.ok = true;
  const Space& sp = ctx.space();
  for (const Vec& x : samples.points()) {
    double phi = p->phi(x);
    Vec carrier = p->carrier == Carrier::GammaCanonical ? ctx.gamma()(x) : x;
    Vec expect = phi * carrier;
    double dev = sp.norm(f(x) - expect) / tol_scale({sp.norm(expect)});
    if (p->range) {
      double lo = p->range->first, hi = p->range->second;
      double escape = std::max(lo - phi, phi - hi);
      dev = std::max(dev, escape / tol_scale({lo, hi}));
    }
    if (dev > rep.worst) {
      rep.worst = dev;
      if (dev > tol) {
        rep.ok = false;
        if (!rep.witness) rep.witness = x;
      }
    }
  }
  return rep;
}

PositivityVerdict is_g_positive(const NlOperator& f, const GContext& ctx,
                                const SampleSet& samples, double tol) {
  PositivityVerdict v;
  const Space& sp = ctx.space();
  auto probe = [&](const Vec& x) {
    double dv = definite_value(f, ctx, x);
    double scale = tol_scale(
        {ctx.qp().c_bar() * sp.norm(f(x)) * sp.norm(ctx.g()(x))});
    double margin = dv / scale;
    if (margin < v.worst) v.worst = margin;
    if (margin < -tol && v.consistent) {
      v.consistent = false;
      v.counterexample = x;
    }
  };
  probe(samples.zero());
  for (const Vec& x : samples.points()) probe(x);
  return v;
}

PositivityVerdict is_g_ordered(const NlOperator& f1, const NlOperator& f2,
                               const GContext& ctx, const SampleSet& samples,
                               double tol) {
  return is_g_positive(f1 - f2, ctx, samples, tol);
}

AbsParts abs_parts(const NlOperator& f, const GContext& ctx) {
  if (!f.vanishes_at_zero())
    throw PreconditionError("|F| and the parts need F(0) = 0");
  const Space sp = ctx.space();
  auto branch = [f, ctx](const Vec& x) {
    return definite_value(f, ctx, x) >= 0.0;
  };
  NlOperator abs = NlOperator::blackbox(
      sp, [f, branch](const Vec& x) { return branch(x) ? f(x) : -f(x); },
      sp.zero(), "|" + f.name() + "|");
  NlOperator plus = NlOperator::blackbox(
      sp,
      [f, branch, sp](const Vec& x) { return branch(x) ? f(x) : sp.zero(); },
      sp.zero(), f.name() + "+");
  NlOperator minus = NlOperator::blackbox(
      sp,
      [f, branch, sp](const Vec& x) { return branch(x) ? sp.zero() : -f(x); },
      sp.zero(), f.name() + "-");
  return {abs, plus, minus};
}

SqrtHypothesis sqrt_hypothesis_check(const NlOperator& f, const GContext& ctx,
                                     const SampleSet& samples, double tol) {
  SqrtHypothesis rep;
  const Space& sp = ctx.space();
  NlOperator one_x = NlOperator::blackbox(
      sp, [sp](const Vec&) { return sp.unit(); }, sp.unit(), "1_X");
  // g-order reading: 0 <= F and F <= 1_X. The upper comparison runs directly
  // on definite values because 1_X does not vanish at the origin.
  bool lower = is_g_positive(f, ctx, samples, tol).consistent;
  bool upper = true;
  rep.coordinatewise_ok = true;
  for (const Vec& x : samples.points()) {
    double dvf = definite_value(f, ctx, x);
    double dvu = definite_value(one_x, ctx, x);
    double scale = tol_scale({dvu});
    if (dvf > dvu + tol * scale) upper = false;
    Vec fx = f(x);
    for (double c : fx.c) {
      if (c < -tol || c > 1.0 + tol) {
        rep.coordinatewise_ok = false;
        if (!rep.witness) rep.witness = x;
      }
    }
  }
  rep.g_order_ok = lower && upper;
  return rep;
}

namespace {

// Damped Newton for the coordinatewise square root on [0, 1].
Vec pointwise_root(const Vec& target, double alpha, double tol, int max_iter,
                   const Vec& at, const std::string& label) {
  Vec g = Vec::zeros(target.dim());
  double resid = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    resid = 0.0;
    for (std::size_t i = 0; i < g.dim(); ++i) {
      double r = target[i] - g[i] * g[i];
      resid = std::max(resid, std::fabs(r));
      g[i] += alpha * r;
    }
    if (resid <= tol) return g;
  }
  throw NonConvergenceError(
      label +
          ": square-root iteration did not reach tolerance (the operand left "
          "the unit box; rescale the operand and retry)",
      at.c, resid);
}

}  // namespace

NlOperator alg_sqrt(const NlOperator& f, const GContext& ctx, double tol,
                    int max_iter, SqrtSchedule schedule) {
  if (!f.vanishes_at_zero())
    throw PreconditionError("alg_sqrt needs F(0) = 0");
  if (!ctx.space().has_algebra())
    throw UnsupportedError("alg_sqrt needs the algebra product");
  double alpha = schedule == SqrtSchedule::HalfStep ? 0.5 : 1.0 / 3.0;
  const Space sp = ctx.space();
  return NlOperator::blackbox(
      sp,
      [f, alpha, tol, max_iter](const Vec& x) {
        return pointwise_root(f(x), alpha, tol, max_iter, x, "alg_sqrt");
      },
      sp.zero(), "sqrt(" + f.name() + ")");
}

NlOperator star_sqrt(const NlOperator& f, const GContext& ctx, double tol,
                     int max_iter) {
  if (!ctx.space().has_algebra())
    throw UnsupportedError("star_sqrt needs the algebra product");
  const Space sp = ctx.space();
  SampleSet norm_probe = SampleSet::make(sp, {SampleKind::Mixed, 128}, 17);
  NormEstimate pf = op_norm(f, norm_probe);
  if (pf.infinite)
    throw PreconditionError("star_sqrt needs a finite operator norm");
  if (pf.value == 0.0) return NlOperator::zero(sp);
  double pnorm = pf.value;
  return NlOperator::blackbox(
      sp,
      [f, sp, pnorm, tol, max_iter](const Vec& x) {
        double n = sp.norm(x);
        // Coordinates of F(x)/(p(F)||x||) land in [-1, 1].
        Vec target = (1.0 / (pnorm * n)) * f(x);
        Vec root = pointwise_root(
            target, 0.5, tol, max_iter, x,
            "star_sqrt with rescale constant " + std::to_string(pnorm * n));
        // G(x) = sqrt(p(F)) ||x|| root, so G(x)^2 = p(F) ||x||^2 target
        //       = ||x|| F(x).
        return (std::sqrt(pnorm) * n) * root;
      },
      pointwise_root(f.at_zero(), 0.5, tol, max_iter, sp.zero(), "star_sqrt"),
      "star_sqrt(" + f.name() + ")");
}

double alg_sqrt_residual(const NlOperator& f, const NlOperator& g_root,
                         const GContext& ctx, const SampleSet& samples) {
  const Space& sp = ctx.space();
  double worst = 0.0;
  for (const Vec& x : samples.points()) {
    Vec g = g_root(x);
    worst = std::max(worst, sp.norm(sp.alg_mul(g, g) - f(x)));
  }
  return worst;
}

double star_sqrt_residual(const NlOperator& f, const NlOperator& g_root,
                          const GContext& ctx, const SampleSet& samples) {
  const Space& sp = ctx.space();
  NlOperator gg = star_mul(g_root, g_root);
  double worst = sp.norm(gg.at_zero() - f.at_zero());
  for (const Vec& x : samples.points())
    worst = std::max(worst, sp.norm(gg(x) - f(x)) / sp.norm(x));
  return worst;
}

}  // namespace qspec
