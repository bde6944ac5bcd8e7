// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Dims 1-16, 1e3-1e4 samples per check; the whole run stays under a minute.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qspec/calculus.hpp"
#include "qspec/definite.hpp"
#include "qspec/errors.hpp"
#include "qspec/harness.hpp"
#include "qspec/spectral.hpp"
#include "qspec/spectral_ops.hpp"

using namespace qspec;

namespace {

using Failures = std::vector<std::string>;

void expect(Failures& f, bool ok, const std::string& what) {
  if (!ok) f.push_back(what);
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

NlOperator seeded_profile(const Space& sp, Rng& rng) {
  double b = rng.uniform(0.2, 1.5);
  double a = rng.uniform(-1.0, 1.0);
  double c = rng.uniform(0.5, 2.0), d = rng.uniform(-1.0, 1.0);
  return NlOperator::profile(
      sp,
      [a, b, c, d, sp](const Vec& x) {
        return a + b * std::sin(c * x[0] + d * sp.norm(x));
      },
      Carrier::GammaCanonical, std::make_pair(a - b, a + b), "seeded");
}

NlOperator seeded_gpos(const Space& sp, Rng& rng) {
  double b = rng.uniform(0.0, 1.0);
  double a = rng.uniform(1.0, 2.0);  // a >= b keeps the profile nonnegative
  double c = rng.uniform(-3.0, 3.0);
  return NlOperator::profile(
      sp, [a, b, c](const Vec& x) { return a + b * std::sin(x[0] + c); },
      Carrier::GammaCanonical, std::make_pair(a - b, a + b), "gpos");
}

NlOperator scalar_sine(const GContext& ctx) {
  return NlOperator::profile(
      ctx.space(), [](const Vec& x) { return std::sin(x[0]); },
      Carrier::GammaCanonical, std::make_pair(-1.0, 1.0), "sine");
}

// --- criterion bodies -------------------------------------------------------

void criterion_1(Failures& f) {
  struct Fx {
    QuasiProduct qp;
    SampleSet samples;
  };
  std::vector<Fx> fixtures;
  {
    Space s = Space::scalar();
    fixtures.push_back({QuasiProduct::scalar_product(s),
                        SampleSet::make(s, {SampleKind::Mixed, 400}, 201)});
  }
  {
    Space s = Space::euclidean(4);
    fixtures.push_back({QuasiProduct::scaled_inner(s, 1.0),
                        SampleSet::make(s, {SampleKind::Mixed, 400}, 202)});
  }
  {
    Space s = Space::weighted_one({0.5, 0.5, 1.0, 2.0});
    fixtures.push_back({QuasiProduct::integral_pair(s),
                        SampleSet::make(s, {SampleKind::Mixed, 400}, 203)});
  }
  {
    Space s = Space::sup_plain(3, {1.0, 0.5, 0.25});
    fixtures.push_back({QuasiProduct::integral_sup(s),
                        SampleSet::make(s, {SampleKind::Mixed, 400}, 204)});
  }
  {
    Space s = Space::pointwise(2);
    fixtures.push_back({QuasiProduct::weighted_sum(s, {0.5, 0.5}),
                        SampleSet::make(s, {SampleKind::Mixed, 400}, 205)});
  }
  for (const Fx& fx : fixtures) {
    AxiomReport rep = qp_check_axioms(fx.qp, fx.samples, 1e-9, 10000);
    std::string kind = to_string(fx.qp.kind());
    expect(f, rep.pairs_tested == 10000, kind + ": pair budget not met");
    expect(f, rep.all_pass(), kind + ": an axiom entry failed");
    expect(f, rep.find("diagonal_nonneg")->margin >= -1e-9,
           kind + ": diagonal margin " + fmt("%.3e", rep.find("diagonal_nonneg")->margin));
    expect(f, rep.find("bound")->margin <= 1e-9,
           kind + ": bound margin " + fmt("%.3e", rep.find("bound")->margin));
  }
  // Degeneracy witness: [x,x] = 0 with x != 0 for the integral pairing.
  QuasiProduct ip = QuasiProduct::integral_pair(Space::weighted_one({1, 1, 1, 1}));
  Vec witness{1.0, -1.0, 0.0, 0.0};
  expect(f, ip.eval(witness, witness) == 0.0 && !witness.is_zero(),
         "integral_pair degeneracy witness failed");
}

void criterion_2(Failures& f) {
  {
    GContext ctx = GContext::scalar();
    SampleSet samples = SampleSet::make(ctx.space(), {SampleKind::Mixed, 1000}, 206);
    CapabilityReport rep = qp_check_capabilities(ctx.qp(), ctx.g(), samples);
    expect(f, rep.consistent_with_declarations(), "scalar capability matrix");
    const CapabilityEntry* sbb = rep.find("square_bounded_below");
    expect(f, sbb && std::fabs(sbb->empirical_k - 1.0) <= 1e-12,
           "scalar empirical lower constant not 1");
    const CapabilityEntry* lid = rep.find("left_integral_domain");
    expect(f, lid && lid->status == CapabilityStatus::Consistent,
           "scalar left integral domain");
    const CapabilityEntry* pp = rep.find("preserves_positivity");
    expect(f, pp && pp->status == CapabilityStatus::Consistent,
           "scalar positivity preservation");
  }
  {
    GContext ctx = GContext::pointwise(2, {0.5, 0.5});
    SampleSet samples = SampleSet::make(ctx.space(), {SampleKind::Mixed, 1000}, 207);
    CapabilityReport rep = qp_check_capabilities(ctx.qp(), ctx.g(), samples);
    const CapabilityEntry* pp = rep.find("preserves_positivity");
    expect(f, pp && pp->status == CapabilityStatus::Refuted && pp->witness,
           "weighted_sum positivity counterexample not found");
    const CapabilityEntry* lid = rep.find("left_integral_domain");
    expect(f, lid && lid->status == CapabilityStatus::Refuted && lid->witness,
           "weighted_sum kernel counterexample not found");
  }
}

void criterion_3(Failures& f) {
  Space sp = Space::pointwise(2);
  SampleSet samples = SampleSet::make(sp, {SampleKind::Mixed, 100}, 208);
  NlOperator e = NlOperator::star_unit(sp);
  NormEstimate pe = op_norm(e, samples);
  expect(f, pe.exact && pe.value == 1.0, "p(e) != 1");

  Rng rng(209);
  int pairs = 1000;
  for (int k = 0; k < pairs; ++k) {
    NlOperator a = seeded_profile(sp, rng);
    NlOperator b = seeded_profile(sp, rng);
    double alpha = rng.uniform(-3.0, 3.0);
    double pa = sampled_ratio_norm(a, samples);
    double pb = sampled_ratio_norm(b, samples);
    if (std::fabs(sampled_ratio_norm(alpha * a, samples) - std::fabs(alpha) * pa) >
        1e-12 * std::max(1.0, pa)) {
      f.push_back("homogeneity violated at pair " + std::to_string(k));
      break;
    }
    if (sampled_ratio_norm(a + b, samples) > pa + pb + 1e-12) {
      f.push_back("triangle violated at pair " + std::to_string(k));
      break;
    }
    if (sampled_ratio_norm(star_mul(a, b), samples) > pa * pb * (1 + 1e-12)) {
      f.push_back("star submultiplicativity violated at pair " + std::to_string(k));
      break;
    }
  }
  // Unit law, pointwise exact.
  NlOperator g = seeded_profile(sp, rng);
  NlOperator eg = star_mul(e, g);
  for (const Vec& x : samples.points())
    if (!(eg(x) == g(x))) {
      f.push_back("e*F != F at " + to_string(x));
      break;
    }
}

void criterion_4(Failures& f) {
  for (GContext ctx : {GContext::scalar(), GContext::pointwise(4)}) {
    const Space& sp = ctx.space();
    SampleSet samples = SampleSet::make(sp, {SampleKind::Mixed, 100}, 210);
    Rng rng(211);
    int ops = 500;  // 500 here and 500 on the other context: 1e3 total
    for (int k = 0; k < ops; ++k) {
      NlOperator op = seeded_profile(sp, rng);
      AbsParts parts = abs_parts(op, ctx);
      for (const Vec& x : samples.points()) {
        if (!(sp.alg_mul(parts.abs(x), parts.abs(x)) ==
              sp.alg_mul(op(x), op(x)))) {
          f.push_back("|F|^2 != F^2 (op " + std::to_string(k) + ")");
          return;
        }
        if (!sp.alg_mul(parts.plus(x), parts.minus(x)).is_zero()) {
          f.push_back("F+ . F- != 0 (op " + std::to_string(k) + ")");
          return;
        }
      }
      if (k < 50) {
        // The null-set identities, exact pointwise.
        ProjectionSet s(
            [op, ctx](const Vec& x) {
              return definite_value(op, ctx, x) < 0.0 || op(x).is_zero();
            },
            "null_plus");
        for (const Vec& x : samples.points()) {
          Vec ind = s.indicate(x, sp);
          Vec full = sp.unit();
          bool ok = sp.alg_mul(parts.plus(x), ind).is_zero() &&
                    sp.alg_mul(parts.minus(x), ind) == parts.minus(x) &&
                    sp.alg_mul(op(x), ind) == -parts.minus(x) &&
                    sp.alg_mul(op(x), full - ind) == parts.plus(x);
          if (!ok) {
            f.push_back("null-set identities failed at " + to_string(x));
            return;
          }
        }
      }
    }
  }
}

void criterion_5(Failures& f) {
  GContext ctx = GContext::scalar();
  const Space& sp = ctx.space();
  SampleSet samples = SampleSet::make(sp, {SampleKind::Mixed, 1000}, 212);

  // Residual within 200 iterations on unit-box operands.
  NlOperator boxed = NlOperator::blackbox(
      sp,
      [sp](const Vec& x) {
        return (0.25 + 0.25 * (1.0 + std::sin(x[0]))) * sp.unit();
      },
      sp.zero(), "boxed");
  NlOperator root = alg_sqrt(boxed, ctx, 1e-8, 200);
  double resid = alg_sqrt_residual(boxed, root, ctx, samples);
  expect(f, resid <= 1e-8, "alg_sqrt residual " + fmt("%.3e", resid));

  NlOperator clamped = NlOperator::blackbox(
      sp, [](const Vec& x) { return Vec{std::min(std::fabs(x[0]), 1.0)}; },
      sp.zero(), "clamped");
  NlOperator rc = alg_sqrt(clamped, ctx, 1e-8, 200);
  expect(f, std::fabs(rc(Vec{0.25})[0] - 0.5) <= 1e-7,
         "sqrt of the clamp at 0.25");

  // Uniqueness: two damping schedules agree.
  NlOperator ra = alg_sqrt(boxed, ctx, 1e-10, 400, SqrtSchedule::HalfStep);
  NlOperator rb = alg_sqrt(boxed, ctx, 1e-10, 400, SqrtSchedule::ThirdStep);
  double gap = 0.0;
  for (const Vec& x : samples.points())
    gap = std::max(gap, std::fabs(ra(x)[0] - rb(x)[0]));
  expect(f, gap <= 1e-8, "schedule disagreement " + fmt("%.3e", gap));

  // Star root of the unit is the unit.
  NlOperator e = NlOperator::star_unit(sp);
  NlOperator re = star_sqrt(e, ctx, 1e-10, 300);
  double su = star_sqrt_residual(e, re, ctx, samples);
  double drift = 0.0;
  for (const Vec& x : samples.points())
    drift = std::max(drift, std::fabs(re(x)[0] - sp.norm(x)) /
                                std::max(1.0, sp.norm(x)));
  expect(f, su <= 1e-8 && drift <= 1e-8, "star_sqrt(e) != e");

  // The value-9 fixture refuses to converge.
  NlOperator nine = NlOperator::blackbox(
      sp, [](const Vec&) { return Vec{9.0}; }, sp.zero(), "nine");
  bool threw = false;
  try {
    alg_sqrt(nine, ctx, 1e-8, 200)(Vec{1.0});
  } catch (const NonConvergenceError&) {
    threw = true;
  }
  expect(f, threw, "value-9 fixture converged unexpectedly");
}

void criterion_6(Failures& f) {
  GContext ctx = GContext::scalar();
  SampleSet samples = SampleSet::make(ctx.space(), {SampleKind::Mixed, 200}, 213);
  Rng rng(214);
  for (int k = 0; k < 1000; ++k) {
    NlOperator a = seeded_gpos(ctx.space(), rng);
    NlOperator b = seeded_gpos(ctx.space(), rng);
    PositivityVerdict v = is_g_positive(pointwise_mul(a, b), ctx, samples);
    if (!v.consistent) {
      f.push_back("product lost positivity at pair " + std::to_string(k));
      return;
    }
  }
}

void criterion_7(Failures& f) {
  GContext ctx = GContext::scalar();
  const Space& sp = ctx.space();
  SampleSet samples = SampleSet::make(sp, {SampleKind::Mixed, 1000}, 215);
  NlOperator op = scalar_sine(ctx);
  Bracket br = bracket(op, ctx, samples);

  // (a) monotone indicators along a lambda ladder.
  for (int k = 0; k + 1 < 12; ++k) {
    double lo = br.m + (br.M - br.m) * k / 12.0;
    double hi = br.m + (br.M - br.m) * (k + 1) / 12.0;
    ProjectionSet a = indicator(op, ctx, lo), b = indicator(op, ctx, hi);
    for (const Vec& x : samples.points())
      if (a.contains(x) && !b.contains(x)) {
        f.push_back("indicator not monotone at " + to_string(x));
        return;
      }
  }
  // (b) endpoints: empty at m (off zero), full at M.
  ProjectionSet bottom = indicator(op, ctx, br.m);
  ProjectionSet top = indicator(op, ctx, br.M);
  for (const Vec& x : samples.points()) {
    if (bottom.contains(x)) {
      f.push_back("bottom indicator nonzero at " + to_string(x));
      return;
    }
    if (!top.contains(x)) {
      f.push_back("top indicator not full at " + to_string(x));
      return;
    }
  }
  // (c) sandwich on every cell and sample.
  Partition part = Partition::uniform(br, 25);
  for (int j = 1; j <= part.cells(); ++j) {
    double lo = part.knots()[j - 1], hi = part.knots()[j];
    ProjectionSet band = band_indicator(op, ctx, lo, hi);
    for (const Vec& x : samples.points()) {
      Vec ex = band.project(x);
      Vec ind = band.indicate(x, sp);
      double left = lo * ctx.pair_g(ctx.gamma()(ex), x);
      double mid = ctx.pair_g(sp.alg_mul(op(x), ind), x);
      double right = hi * ctx.pair_g(ctx.gamma()(ex), x);
      double scale = std::max({1.0, std::fabs(left), std::fabs(right)});
      if (left > mid + 1e-12 * scale || mid > right + 1e-12 * scale) {
        f.push_back("sandwich violated in cell " + std::to_string(j));
        return;
      }
    }
  }
}

void criterion_8(Failures& f) {
  GContext ctx = GContext::scalar();
  SampleSet samples = SampleSet::make(ctx.space(), {SampleKind::Mixed, 1000}, 216);
  NlOperator op = scalar_sine(ctx);
  Bracket br = bracket(op, ctx, samples);
  double worst = 0.0;
  for (const Vec& x : samples.points()) {
    double fv = ctx.pair_g(op(x), x);
    double lam = rayleigh(op, ctx, x);
    double gg = ctx.pair_g(ctx.gamma()(x), x);
    worst = std::max(worst, std::fabs(fv - lam * gg) / tol_scale({fv, lam * gg}));
  }
  expect(f, worst <= 1e-9, "scalar identity residual " + fmt("%.3e", worst));

  // First-order Riemann-Stieltjes convergence: per-sample bound at each n
  // plus the sup shrinking with the mesh.
  double sup50 = 0.0, sup400 = 0.0;
  for (int n : {50, 400}) {
    Partition part = Partition::uniform(br, n);
    double sup = 0.0;
    for (const Vec& x : samples.points()) {
      double rs = stieltjes_scalar(op, ctx, x, part);
      double fv = ctx.pair_g(op(x), x);
      double gg = ctx.pair_g(ctx.gamma()(x), x);
      double err = std::fabs(rs - fv);
      if (err > part.mesh() * gg * (1 + 1e-9)) {
        f.push_back("RS sum beyond one mesh at n=" + std::to_string(n));
        return;
      }
      sup = std::max(sup, err / gg);
    }
    (n == 50 ? sup50 : sup400) = sup;
  }
  expect(f, sup400 <= 0.3 * sup50,
         "RS sup error did not shrink with the mesh: " + fmt("%.3e", sup400) +
             " vs " + fmt("%.3e", sup50));
}

void criterion_9(Failures& f) {
  auto start = std::chrono::steady_clock::now();
  {
    GContext ctx = GContext::scalar();
    SampleSet samples = SampleSet::make(ctx.space(), {SampleKind::Mixed, 2000}, 217);
    SpectralDecomposition dec =
        decompose(scalar_sine(ctx), ctx, {25, 50, 100, 200, 400}, samples);
    expect(f, dec.resolution_converged, "scalar sine did not converge");
    for (std::size_t i = 0; i < dec.sums.size(); ++i) {
      expect(f, dec.sums[i].sup_error <= ctx.k2_max() * dec.sums[i].mesh * (1 + 1e-9),
             "scalar error above the mesh bound at n=" + std::to_string(dec.sums[i].n));
      if (i > 0)
        expect(f, dec.sums[i].sup_error <= 1.2 * dec.sums[i - 1].sup_error / 2.0,
               "scalar halving failed at n=" + std::to_string(dec.sums[i].n));
    }
    // Emit the full table the way the harness does.
    SuiteReport rep;
    rep.config_id = "acceptance_scalar_sine";
    ConvergenceTable table;
    table.label = "convergence_sine";
    for (const auto& s : dec.sums) table.rows.push_back({s.n, s.mesh, s.sup_error});
    rep.tables.push_back(table);
    auto written = emit(rep, "csv", "acceptance_artifacts");
    expect(f, written.size() == 1, "table emission failed");
  }
  {
    GContext ctx = GContext::pointwise(16);
    const Space& sp = ctx.space();
    SampleSet samples = SampleSet::make(sp, {SampleKind::Mixed, 1500}, 218);
    NlOperator op = NlOperator::profile(
        sp, [sp](const Vec& x) { return std::sin(x[0] + sp.norm(x)); },
        Carrier::GammaCanonical, std::make_pair(-1.0, 1.0), "wave16");
    SpectralDecomposition dec = decompose(op, ctx, {25, 50, 100, 200, 400}, samples);
    expect(f, dec.resolution_converged, "wave16 did not converge");
    for (std::size_t i = 1; i < dec.sums.size(); ++i)
      expect(f, dec.sums[i].sup_error <= 1.2 * dec.sums[i - 1].sup_error / 2.0,
             "wave16 halving failed at n=" + std::to_string(dec.sums[i].n));
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  expect(f, secs < 10.0, "convergence tables took " + fmt("%.1f", secs) + " s");
}

void criterion_10(Failures& f) {
  GContext ctx = GContext::scalar();
  SampleSet samples = SampleSet::make(ctx.space(), {SampleKind::Mixed, 800}, 219);
  NlOperator op = scalar_sine(ctx);
  const double tol = 5e-4;
  CalcResult res = cont_calculus(op, ctx, func_exp(), tol, samples, true);
  const double half_pi = 1.5707963267948966;
  double oracle = half_pi * std::exp(1.0);  // independent scalar computation
  double got = res.op(Vec{half_pi})[0];
  expect(f, std::fabs(got - oracle) <= 1e-6,
         "exp value at pi/2: " + fmt("%.9f", got) + " vs " + fmt("%.9f", oracle));
  expect(f, res.norm_ratio <= 1.0 + 1e-9,
         "continuous norm ratio " + fmt("%.12f", res.norm_ratio));
  expect(f, res.cheb_agreement && *res.cheb_agreement <= 2.0 * tol,
         "route independence gap " +
             fmt("%.3e", res.cheb_agreement.value_or(-1.0)));

  // Polynomial bound with the canonical gauge.
  Bracket br = bracket(op, ctx, samples);
  PolySpec p{{0.25, -1.5, 0.0, 1.0}};
  double sup_p = sup_abs_on([&](double t) { return p.eval(t); }, br.m, br.M);
  double ratio = sampled_ratio_norm(star_poly(op, p), samples) / sup_p;
  expect(f, ratio <= 1.0 + 1e-9, "polynomial norm ratio " + fmt("%.12f", ratio));
}

void criterion_11(Failures& f) {
  Space sp = Space::sup_plain(2, {1.0, 1.0});
  auto psi = [](const Vec& x) { return (1.0 + std::sin(x[0])) / 2.0; };
  SpectralProjection e = SpectralProjection::profile(sp, psi, -1e-9, 1.0);
  SampleSet samples = SampleSet::make(sp, {SampleKind::Mixed, 1000}, 220);
  Partition part = Partition::uniform(Bracket{-1e-9, 1.0, 0.0, 0.0}, 400);

  // Oracle error below the modulus-of-continuity bound (exp is monotone, so
  // the bound is exact).
  FuncSpec fexp = func_exp();
  NlOperator integral = sp_integral(e, fexp, part);
  double w = std::exp(1.0) * (1.0 - std::exp(-part.mesh()));
  for (const Vec& x : samples.points()) {
    double err = sp.norm(integral(x) - fexp.eval(psi(x)) * x) / sp.norm(x);
    if (err > w * (1 + 1e-9)) {
      f.push_back("oracle error " + fmt("%.3e", err) + " above the modulus");
      break;
    }
  }

  SpAxiomReport ax = sp_axiom_check(e, samples, 221);
  expect(f, ax.all_pass(), "profile projection axioms failed");

  auto broken = [sp, psi](const IntervalUnion& a, const Vec& x) {
    if (a.is_empty()) return sp.zero();
    double lo = a.parts().front().first, hi = a.parts().back().second;
    return psi(x) <= 0.5 * (lo + hi) ? x : sp.zero();
  };
  SpectralProjection bad = SpectralProjection::raw(sp, broken, -1e-9, 1.0);
  SpAxiomReport bad_rep = sp_axiom_check(bad, samples, 222);
  const SpAxiomEntry* mult = bad_rep.find("multiplicativity");
  expect(f, mult && !mult->pass && mult->witness.has_value(),
         "broken raw fixture slipped through");

  // Linearity on the matched partition.
  NlOperator combo = sp_class_combine(e, 2.0, func_identity(), func_const(1.0), part);
  FuncSpec combined{[](double t) { return 2.0 * t + 1.0; }, {}, "2id+1"};
  NlOperator direct = sp_integral(e, combined, part);
  double lin_gap = sampled_op_distance(combo, direct, samples);
  expect(f, lin_gap <= 1e-12, "combination gap " + fmt("%.3e", lin_gap));

  // Cauchy correspondence on a constructed sequence.
  Partition fine = Partition::uniform(Bracket{-1e-9, 1.0, 0.0, 0.0}, 4000);
  auto limit_eval = [](double t) { return std::exp(t); };
  NlOperator op_limit = sp_integral(e, FuncSpec{limit_eval, {}, "exp"}, fine);
  for (int n : {4, 16, 64}) {
    FuncSpec fn{[n, limit_eval](double t) {
                  return limit_eval(t) + std::sin(n * t) / n;
                },
                {},
                "fn"};
    NlOperator op_n = sp_integral(e, fn, fine);
    double fn_gap = 1.0 / n;  // |sin(nt)/n| <= 1/n
    double op_gap = sampled_op_distance(op_n, op_limit, samples);
    expect(f, op_gap <= fn_gap * (1 + 1e-9),
           "operator gap above the function gap at n=" + std::to_string(n));
  }
}

void criterion_12(Failures& f) {
  std::string path = std::string(QSPEC_CONFIG_DIR) + "/scalar_showcase.json";
  RunConfig cfg = RunConfig::load(path);
  SuiteReport a = run_suite(cfg);
  SuiteReport b = run_suite(cfg);
  expect(f, a.all_expected_pass(), "scalar_showcase has failing checks");
  expect(f, a.to_json_text_no_timing() == b.to_json_text_no_timing(),
         "statuses or margins changed between identical runs");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Failures&)> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "quasi-product axioms on 1e4 pairs for all five pairings", criterion_1},
      {2, "capability matrix: scalar certified, weighted refuted", criterion_2},
      {3, "operator-space laws and the exact unit", criterion_3},
      {4, "split identities exact on 1e3 seeded operators", criterion_4},
      {5, "square roots: residuals, uniqueness, non-convergence", criterion_5},
      {6, "products of g-positive pairs stay g-positive (scalar)", criterion_6},
      {7, "indicator monotonicity, endpoints and the sandwich", criterion_7},
      {8, "scalar spectral identity and first-order RS sums", criterion_8},
      {9, "operator convergence tables halve with the mesh", criterion_9},
      {10, "continuous calculus: pinned value, bounds, two routes", criterion_10},
      {11, "spectral projections: oracle, axioms, linearity, Cauchy", criterion_11},
      {12, "verification runs are deterministic", criterion_12},
  };
  int failures = 0;
  auto t0 = std::chrono::steady_clock::now();
  for (const Criterion& c : criteria) {
    Failures fs;
    auto s0 = std::chrono::steady_clock::now();
    try {
      c.body(fs);
    } catch (const std::exception& e) {
      fs.push_back(std::string("exception: ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - s0)
                    .count();
    if (fs.empty()) {
      std::printf("[PASS] criterion %2d: %s (%.0f ms)\n", c.id, c.title, ms);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %2d: %s (%.0f ms)\n", c.id, c.title, ms);
      for (const std::string& m : fs) std::printf("         - %s\n", m.c_str());
    }
  }
  double total = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  std::printf("%d/%zu criteria passed in %.1f s\n",
              static_cast<int>(criteria.size()) - failures, criteria.size(),
              total);
  return failures == 0 ? 0 : 1;
}
