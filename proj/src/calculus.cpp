#include "qspec/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qspec/errors.hpp"

namespace qspec {

int PolySpec::degree() const {
  for (std::size_t i = coeffs.size(); i-- > 0;)
    if (coeffs[i] != 0.0) return static_cast<int>(i);
  return 0;
}

double PolySpec::eval(double lambda) const {
  double v = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * lambda + coeffs[i];
  return v;
}

FuncSpec func_exp() { return {[](double t) { return std::exp(t); }, {}, "exp"}; }
FuncSpec func_abs() { return {[](double t) { return std::fabs(t); }, {}, "abs"}; }
FuncSpec func_identity() { return {[](double t) { return t; }, {}, "id"}; }
FuncSpec func_const(double c) {
  return {[c](double) { return c; }, {}, "const"};
}
FuncSpec func_sin() { return {[](double t) { return std::sin(t); }, {}, "sin"}; }

NlOperator star_poly(const NlOperator& f, const PolySpec& p) {
  const Space sp = f.space_in();
  if (!sp.has_algebra())
    throw UnsupportedError("star polynomials need the algebra");
  std::vector<double> a = p.coeffs;
  if (a.empty()) a.push_back(0.0);
  // Pointwise star-Horner: v <- v (.) F(x)/||x|| + a_i ||x|| 1, seeded with
  // the top coefficient against the star unit.
  return NlOperator::blackbox(
      sp,
      [f, sp, a](const Vec& x) {
        double n = sp.norm(x);
        Vec fx = f(x);
        Vec v = (a.back() * n) * sp.unit();
        for (std::size_t i = a.size() - 1; i-- > 0;)
          v = (1.0 / n) * hadamard(v, fx) + (a[i] * n) * sp.unit();
        return v;
      },
      [&] {
        Vec f0 = f.at_zero();
        Vec v = a.back() * sp.unit();
        for (std::size_t i = a.size() - 1; i-- > 0;)
          v = hadamard(v, f0) + a[i] * sp.unit();
        return v;
      }(),
      "p(" + f.name() + ")");
}

NlOperator star_pow(const NlOperator& f, int k) {
  if (k < 0) throw PreconditionError("star powers need k >= 0");
  if (k == 0) return NlOperator::star_unit(f.space_in());
  NlOperator acc = f;
  for (int i = 1; i < k; ++i) acc = star_mul(acc, f);
  return acc;
}

namespace {

void require_canonical(const GContext& ctx, const char* what) {
  if (!ctx.canonical_gamma())
    throw UnsupportedError(std::string(what) +
                           " is implemented for the canonical gauge only");
}

// p(rep gamma + s0 e)(x) for the canonical gauge: coordinatewise
// ||x|| p(rep + s0_c), and p(s0_c) at the origin.
Vec shifted_cell_value(const Space& sp, const Vec& x, double rep, const Vec& s0,
                       const std::function<double(double)>& scalar_fn) {
  if (x.is_zero()) {
    Vec v = sp.zero();
    for (std::size_t c = 0; c < sp.dim(); ++c) v[c] = scalar_fn(s0[c]);
    return v;
  }
  double n = sp.norm(x);
  Vec v = sp.zero();
  for (std::size_t c = 0; c < sp.dim(); ++c) v[c] = n * scalar_fn(rep + s0[c]);
  return v;
}

}  // namespace

NlOperator poly_spectral_integral(const NlOperator& f, const GContext& ctx,
                                  const PolySpec& p, const Partition& partition,
                                  BinChoice choice) {
  require_canonical(ctx, "the polynomial spectral integral");
  const Space sp = ctx.space();
  return NlOperator::blackbox(
      sp,
      [f, ctx, p, partition, choice, sp](const Vec& x) {
        double lambda = rayleigh(f, ctx, x);
        int j = partition.cell_of(lambda);
        double rep = cell_representative(partition, j, choice);
        return shifted_cell_value(sp, x, rep, sp.zero(),
                                  [&](double t) { return p.eval(t); });
      },
      p.eval(0.0) * sp.unit(), "poly_integral(" + f.name() + ")");
}

BernsteinPoly::BernsteinPoly(const std::function<double(double)>& f, double m,
                             double M, int degree)
    : m_(m), M_(M) {
  if (!(M > m)) throw PreconditionError("Bernstein needs a nonempty interval");
  if (degree < 1) throw PreconditionError("Bernstein needs degree >= 1");
  fvals_.resize(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k)
    fvals_[k] = f(m + (M - m) * static_cast<double>(k) / degree);
  lgamma_.resize(fvals_.size() + 1);
  for (std::size_t k = 0; k < lgamma_.size(); ++k)
    lgamma_[k] = std::lgamma(static_cast<double>(k) + 1.0);
}

double BernsteinPoly::eval(double u) const {
  const int n = degree();
  double t = (u - m_) / (M_ - m_);
  const double slack = 1e-9;
  if (t < -slack || t > 1.0 + slack)
    throw BracketError("spectral argument " + std::to_string(u) +
                       " left the bracket (stale bracket)");
  t = std::clamp(t, 0.0, 1.0);
  if (t == 0.0) return fvals_.front();
  if (t == 1.0) return fvals_.back();
  double lt = std::log(t), l1t = std::log1p(-t);
  double lg_n = lgamma_[n];
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    double lw = lg_n - lgamma_[k] - lgamma_[n - k] + k * lt + (n - k) * l1t;
    sum += fvals_[k] * std::exp(lw);
  }
  return sum;
}

ChebPoly::ChebPoly(const std::function<double(double)>& f, double m, double M,
                   int degree)
    : m_(m), M_(M) {
  if (degree < 1) throw PreconditionError("interpolant needs degree >= 1");
  const int n = degree;
  const double pi = 3.14159265358979323846;
  nodes_.resize(n + 1);
  vals_.resize(n + 1);
  w_.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    double theta = pi * (2.0 * j + 1.0) / (2.0 * (n + 1));
    double t = std::cos(theta);
    nodes_[j] = 0.5 * (m + M) + 0.5 * (M - m) * t;
    vals_[j] = f(nodes_[j]);
    // First-kind barycentric weights.
    w_[j] = (j % 2 == 0 ? 1.0 : -1.0) * std::sin(theta);
  }
}

double ChebPoly::eval(double u) const {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    double d = u - nodes_[j];
    if (d == 0.0) return vals_[j];
    double q = w_[j] / d;
    num += q * vals_[j];
    den += q;
  }
  return num / den;
}

namespace {

// Evaluates a scalar polynomial route through the star algebra: on the
// pointwise algebras every star polynomial acts coordinatewise on the
// ratios F(x)_c / ||x||, scaled back by ||x||. Canonical profiles collapse
// to a single evaluation.
NlOperator star_scalar_apply(const NlOperator& f,
                             std::function<double(double)> scalar_fn,
                             std::string name) {
  const Space sp = f.space_in();
  const ProfileInfo* prof = f.profile_info();
  bool canonical = prof && prof->carrier == Carrier::GammaCanonical;
  Vec at0 = sp.zero();
  for (std::size_t c = 0; c < sp.dim(); ++c) at0[c] = scalar_fn(f.at_zero()[c]);
  if (canonical) {
    auto phi = prof->phi;
    return NlOperator::blackbox(
        sp,
        [sp, phi, scalar_fn](const Vec& x) {
          return (sp.norm(x) * scalar_fn(phi(x))) * sp.unit();
        },
        at0, std::move(name));
  }
  return NlOperator::blackbox(
      sp,
      [sp, f, scalar_fn](const Vec& x) {
        double n = sp.norm(x);
        Vec fx = f(x);
        Vec v = sp.zero();
        for (std::size_t c = 0; c < sp.dim(); ++c)
          v[c] = n * scalar_fn(fx[c] / n);
        return v;
      },
      at0, std::move(name));
}

}  // namespace

CalcResult cont_calculus(const NlOperator& f, const GContext& ctx,
                         const FuncSpec& fn, double tol,
                         const SampleSet& samples, bool cross_check) {
  require_canonical(ctx, "the continuous calculus");
  if (!f.vanishes_at_zero())
    throw PreconditionError("the calculus needs F(0) = 0 (use the shifted form)");
  Bracket br = bracket(f, ctx, samples);
  std::vector<int> schedule = fn.approx_schedule;
  if (schedule.empty())
    schedule = {16, 32, 64, 128, 256, 512, 1024, 2048, 4096};

  CalcResult res{NlOperator::zero(ctx.space()), 0, {}, 0.0, 0.0, std::nullopt};
  res.f_sup = sup_abs_on(fn.eval, br.m, br.M);

  std::optional<NlOperator> prev;
  bool converged = false;
  for (int deg : schedule) {
    auto bp = std::make_shared<BernsteinPoly>(fn.eval, br.m, br.M, deg);
    NlOperator cur = star_scalar_apply(
        f, [bp](double t) { return bp->eval(t); },
        fn.name + "(" + f.name() + ")@" + std::to_string(deg));
    if (prev) {
      double gap = sampled_op_distance(cur, *prev, samples);
      res.cauchy_trace.emplace_back(deg, gap);
      if (gap <= tol) {
        res.op = cur;
        res.degree = deg;
        converged = true;
        break;
      }
    }
    prev = cur;
  }
  if (!converged) {
    std::ostringstream os;
    os << "polynomial schedule exhausted before tol " << tol << "; gaps:";
    for (auto [d, g] : res.cauchy_trace) os << " " << d << ":" << g;
    throw NonConvergenceError(os.str(), {}, res.cauchy_trace.empty()
                                                ? 0.0
                                                : res.cauchy_trace.back().second);
  }
  res.norm_ratio = sampled_ratio_norm(res.op, samples) / res.f_sup;

  if (cross_check) {
    // The independent polynomial route: Chebyshev interpolants along the
    // same schedule with the same stopping rule.
    std::optional<NlOperator> cprev;
    std::optional<NlOperator> climit;
    for (int deg : schedule) {
      auto cp = std::make_shared<ChebPoly>(fn.eval, br.m, br.M, deg);
      NlOperator cur = star_scalar_apply(
          f, [cp](double t) { return cp->eval(t); }, "cheb");
      if (cprev && sampled_op_distance(cur, *cprev, samples) <= tol) {
        climit = cur;
        break;
      }
      cprev = cur;
    }
    if (climit)
      res.cheb_agreement = sampled_op_distance(res.op, *climit, samples);
  }
  return res;
}

NlOperator func_spectral_integral(const NlOperator& f, const GContext& ctx,
                                  const FuncSpec& fn, const Partition& partition,
                                  BinChoice choice) {
  require_canonical(ctx, "the spectral integral");
  const Space sp = ctx.space();
  auto eval = fn.eval;
  return NlOperator::blackbox(
      sp,
      [f, ctx, partition, choice, sp, eval](const Vec& x) {
        double lambda = rayleigh(f, ctx, x);
        int j = partition.cell_of(lambda);
        double rep = cell_representative(partition, j, choice);
        return shifted_cell_value(sp, x, rep, sp.zero(), eval);
      },
      eval(0.0) * sp.unit(), "func_integral(" + f.name() + ")");
}

namespace {

std::pair<NlOperator, Vec> split_shift(const NlOperator& ftilde) {
  const NlOperator* base = ftilde.shift_base();
  if (!base)
    throw UnsupportedError(
        "shifted calculus needs the constant-shift structure");
  return {*base, *ftilde.shift_offset()};
}

}  // namespace

NlOperator shifted_poly_integral(const NlOperator& ftilde, const GContext& ctx,
                                 const PolySpec& p, const Partition& partition,
                                 BinChoice choice) {
  require_canonical(ctx, "the shifted calculus");
  auto [base, s0] = split_shift(ftilde);
  const Space sp = ctx.space();
  Vec at0 = sp.zero();
  for (std::size_t c = 0; c < sp.dim(); ++c) at0[c] = p.eval(s0[c]);
  return NlOperator::blackbox(
      sp,
      [base, ctx, p, partition, choice, sp, s0](const Vec& x) {
        double lambda = rayleigh(base, ctx, x);
        int j = partition.cell_of(lambda);
        double rep = cell_representative(partition, j, choice);
        return shifted_cell_value(sp, x, rep, s0,
                                  [&](double t) { return p.eval(t); });
      },
      at0, "shifted_poly(" + ftilde.name() + ")");
}

NlOperator shifted_func_integral(const NlOperator& ftilde, const GContext& ctx,
                                 const FuncSpec& fn, const Partition& partition,
                                 BinChoice choice) {
  require_canonical(ctx, "the shifted calculus");
  auto [base, s0] = split_shift(ftilde);
  const Space sp = ctx.space();
  auto eval = fn.eval;
  Vec at0 = sp.zero();
  for (std::size_t c = 0; c < sp.dim(); ++c) at0[c] = eval(s0[c]);
  return NlOperator::blackbox(
      sp,
      [base, ctx, partition, choice, sp, s0, eval](const Vec& x) {
        double lambda = rayleigh(base, ctx, x);
        int j = partition.cell_of(lambda);
        double rep = cell_representative(partition, j, choice);
        return shifted_cell_value(sp, x, rep, s0, eval);
      },
      at0, "shifted_func(" + ftilde.name() + ")");
}

double modulus_of_continuity(const std::function<double(double)>& f, double m,
                             double M, double h, int grid) {
  double w = 0.0;
  for (int i = 0; i <= grid; ++i) {
    double a = m + (M - m) * static_cast<double>(i) / grid;
    double b = std::min(a + h, M);
    w = std::max(w, std::fabs(f(b) - f(a)));
  }
  return w;
}

double sup_abs_on(const std::function<double(double)>& f, double m, double M,
                  int grid) {
  double s = 0.0;
  for (int i = 0; i <= grid; ++i)
    s = std::max(s, std::fabs(f(m + (M - m) * static_cast<double>(i) / grid)));
  return s;
}

}  // namespace qspec
