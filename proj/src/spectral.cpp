#include "qspec/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "qspec/errors.hpp"

namespace qspec {

ProjectionSet::ProjectionSet(std::function<bool(const Vec&)> predicate,
                             std::string label)
    : pred_(std::move(predicate)), label_(std::move(label)) {}

bool ProjectionSet::contains(const Vec& x) const {
  return x.is_zero() || pred_(x);
}

Vec ProjectionSet::project(const Vec& x) const {
  return contains(x) ? x : Vec::zeros(x.dim());
}

Vec ProjectionSet::indicate(const Vec& x, const Space& space) const {
  return contains(x) ? space.unit() : space.zero();
}

NlOperator ProjectionSet::projector(Space space) const {
  auto self = *this;
  return NlOperator::blackbox(
      space, [self](const Vec& x) { return self.project(x); }, space.zero(),
      "E[" + label_ + "]");
}

GammaReport validate_gamma(const NlOperator& gamma, const GContext& ctx,
                           const SampleSet& samples, double floor) {
  GammaReport rep;
  const Space& sp = ctx.space();
  rep.k1_min = rep.k2_min = std::numeric_limits<double>::infinity();
  rep.k1_max = rep.k2_max = 0.0;
  for (const Vec& x : samples.points()) {
    double nx = sp.norm(x);
    Vec gx = ctx.g()(x);
    double ngx = sp.norm(gx);
    double k1 = ctx.qp().eval(gamma(x), gx) / (nx * ngx);
    double k2 = sp.norm(gamma(x)) / nx;
    rep.k1_min = std::min(rep.k1_min, k1);
    rep.k1_max = std::max(rep.k1_max, k1);
    rep.k2_min = std::min(rep.k2_min, k2);
    rep.k2_max = std::max(rep.k2_max, k2);
    if (k1 < 0.0 && !rep.witness) {
      rep.g_positive = false;
      rep.witness = x;
    }
  }
  rep.pass = rep.g_positive && rep.k1_min > floor && rep.k2_min > floor &&
             std::isfinite(rep.k1_max) && std::isfinite(rep.k2_max);
  return rep;
}

double rayleigh(const NlOperator& f, const GContext& ctx, const Vec& x) {
  if (x.is_zero()) throw PreconditionError("Rayleigh value needs x != 0");
  double num = ctx.pair_g(f(x), x);
  double den = ctx.pair_g(ctx.gamma()(x), x);
  return num / den;
}

ProjectionSet indicator(const NlOperator& f, const GContext& ctx, double lambda) {
  return ProjectionSet(
      [f, ctx, lambda](const Vec& x) { return rayleigh(f, ctx, x) <= lambda; },
      "lam<=" + std::to_string(lambda));
}

ProjectionSet band_indicator(const NlOperator& f, const GContext& ctx,
                             double lo, double hi) {
  return ProjectionSet(
      [f, ctx, lo, hi](const Vec& x) {
        double l = rayleigh(f, ctx, x);
        return lo < l && l <= hi;
      },
      "lam in (" + std::to_string(lo) + "," + std::to_string(hi) + "]");
}

Bracket bracket(const NlOperator& f, const GContext& ctx,
                const SampleSet& samples, PadPolicy pad) {
  if (samples.size() == 0) throw PreconditionError("bracket needs samples");
  if (!f.vanishes_at_zero())
    throw PreconditionError("bracket needs F(0) = 0 (resolve the shift first)");
  Bracket br;
  const ProfileInfo* p = f.profile_info();
  if (p && p->range && ctx.canonical_gamma() &&
      p->carrier == Carrier::GammaCanonical) {
    br.m = p->range->first;
    br.M = p->range->second;
  } else {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec& x : samples.points()) {
      double l = rayleigh(f, ctx, x);
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
    br.m = lo;
    br.M = hi;
  }
  br.pad = std::max(pad.rel * (br.M - br.m), pad.min_abs);
  br.m -= br.pad;
  // The loose comparability bound; it always contains the data bracket.
  NormEstimate pf = op_norm(f, samples);
  br.loose_bound = ctx.qp().c_bar() * pf.value / ctx.k1_min();
  return br;
}

Partition Partition::uniform(const Bracket& br, int n) {
  if (n < 1) throw PreconditionError("partition needs at least one cell");
  std::vector<double> knots(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j)
    knots[j] = br.m + (br.M - br.m) * static_cast<double>(j) / n;
  knots.back() = br.M;
  return from_knots(std::move(knots));
}

Partition Partition::from_knots(std::vector<double> knots) {
  if (knots.size() < 2) throw PreconditionError("partition needs two knots");
  Partition p;
  p.mesh_ = 0.0;
  for (std::size_t j = 1; j < knots.size(); ++j) {
    double d = knots[j] - knots[j - 1];
    if (!(d > 0.0)) throw PreconditionError("knots must increase strictly");
    p.mesh_ = std::max(p.mesh_, d);
  }
  p.knots_ = std::move(knots);
  return p;
}

int Partition::cell_of(double lambda) const {
  if (!(lambda > knots_.front()) || lambda > knots_.back())
    throw BracketError("value " + std::to_string(lambda) +
                       " outside the bracket (" + std::to_string(m()) + ", " +
                       std::to_string(M()) + "] (stale bracket)");
  auto it = std::lower_bound(knots_.begin(), knots_.end(), lambda);
  return static_cast<int>(it - knots_.begin());
}

double cell_representative(const Partition& p, int cell, BinChoice choice,
                           std::uint64_t seed) {
  double lo = p.knots()[cell - 1], hi = p.knots()[cell];
  switch (choice) {
    case BinChoice::Left: return lo;  // left-open cell: the limit endpoint
    case BinChoice::Right: return hi;
    case BinChoice::Midpoint: return 0.5 * (lo + hi);
    case BinChoice::Random: {
      Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(cell)));
      double t = rng.uniform();
      double rep = lo + (hi - lo) * t;
      return rep > lo ? rep : hi;
    }
  }
  return hi;
}

NlOperator spectral_sum(const NlOperator& f, const GContext& ctx,
                        const Partition& partition, BinChoice choice,
                        std::uint64_t seed) {
  const Space sp = ctx.space();
  NlOperator gamma = ctx.gamma();
  return NlOperator::blackbox(
      sp,
      [f, ctx, partition, choice, seed, gamma](const Vec& x) {
        double lambda = rayleigh(f, ctx, x);
        int j = partition.cell_of(lambda);
        return cell_representative(partition, j, choice, seed) * gamma(x);
      },
      sp.zero(), "sum[" + f.name() + "]");
}

double stieltjes_scalar(const NlOperator& f, const GContext& ctx, const Vec& x,
                        const Partition& partition, BinChoice choice) {
  if (x.is_zero()) throw PreconditionError("the scalar integral needs x != 0");
  // w_x is the single-jump step function: it climbs by [gamma(x), g(x)] at
  // the point's own Rayleigh value.
  double lambda = rayleigh(f, ctx, x);
  double jump = ctx.pair_g(ctx.gamma()(x), x);
  partition.cell_of(lambda);  // bracket guard
  double sum = 0.0;
  for (int cell = 1; cell <= partition.cells(); ++cell) {
    double w_hi = partition.knots()[cell] >= lambda ? jump : 0.0;
    double w_lo = partition.knots()[cell - 1] >= lambda ? jump : 0.0;
    sum += cell_representative(partition, cell, choice) * (w_hi - w_lo);
  }
  return sum;
}

SpectralDecomposition decompose(const NlOperator& f, const GContext& ctx,
                                const std::vector<int>& n_schedule,
                                const SampleSet& samples, BinChoice choice) {
  SpectralDecomposition dec;
  dec.brkt = bracket(f, ctx, samples);

  const QpFlags& fl = ctx.qp().flags();
  bool sbb = fl.square_bounded_below.has_value();
  bool pp = fl.preserves_positivity.value_or(false);
  bool lid = fl.left_integral_domain.value_or(false);
  dec.condition_holds = (sbb && pp) || lid;
  const ProfileInfo* prof = f.profile_info();
  dec.convergence_structural =
      prof && prof->carrier == Carrier::GammaCanonical && ctx.canonical_gamma();

  dec.table.reserve(samples.size());
  for (const Vec& x : samples.points()) {
    SpectralDecomposition::Row row;
    row.x = x;
    row.lambda = rayleigh(f, ctx, x);
    row.gamma_g = ctx.pair_g(ctx.gamma()(x), x);
    dec.table.push_back(row);
    double fv = ctx.pair_g(f(x), x);
    double resid = std::fabs(fv - row.lambda * row.gamma_g) /
                   tol_scale({fv, row.lambda * row.gamma_g});
    dec.scalar_identity_residual = std::max(dec.scalar_identity_residual, resid);
  }

  double final_mesh = 0.0;
  for (int n : n_schedule) {
    Partition part = Partition::uniform(dec.brkt, n);
    NlOperator fn = spectral_sum(f, ctx, part, choice);
    double err = sampled_op_distance(fn, f, samples);
    dec.sums.push_back({n, part.mesh(), err});
    final_mesh = part.mesh();
    if (n == n_schedule.back()) {
      // |RS sum - [F(x), g(x)]| = |rep - lambda_x| [gamma(x), g(x)], so the
      // jump size is the right normalizer for a first-order-in-mesh check.
      for (const Vec& x : samples.points()) {
        double rs = stieltjes_scalar(f, ctx, x, part, choice);
        double fv = ctx.pair_g(f(x), x);
        double jump = ctx.pair_g(ctx.gamma()(x), x);
        double resid = std::fabs(rs - fv) / jump;
        dec.stieltjes_residual = std::max(dec.stieltjes_residual, resid);
      }
    }
  }
  if (!dec.sums.empty()) {
    double last = dec.sums.back().sup_error;
    dec.resolution_converged = last <= ctx.k2_max() * final_mesh * (1.0 + 1e-9) + 1e-12;
    for (std::size_t i = 1; i < dec.sums.size(); ++i)
      if (dec.sums[i].sup_error > 1.2 * dec.sums[i - 1].sup_error)
        dec.resolution_converged = false;
  }
  return dec;
}

}  // namespace qspec
