#include "qspec/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qspec/calculus.hpp"
#include "qspec/errors.hpp"
#include "qspec/expr.hpp"
#include "qspec/spectral.hpp"
#include "qspec/spectral_ops.hpp"

namespace qspec {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok)
      throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
  }
}

NormKind parse_norm(const std::string& s) {
  if (s == "sup") return NormKind::Sup;
  if (s == "one") return NormKind::One;
  if (s == "two") return NormKind::Two;
  throw ConfigError("space.norm must be sup|one|two, got '" + s + "'");
}

std::string norm_name(NormKind k) {
  switch (k) {
    case NormKind::Sup: return "sup";
    case NormKind::One: return "one";
    case NormKind::Two: return "two";
  }
  return "?";
}

QpKind parse_qp_kind(const std::string& s) {
  if (s == "scalar_product") return QpKind::ScalarProduct;
  if (s == "scaled_inner") return QpKind::ScaledInner;
  if (s == "integral_pair") return QpKind::IntegralPair;
  if (s == "integral_sup") return QpKind::IntegralSup;
  if (s == "weighted_sum") return QpKind::WeightedSum;
  throw ConfigError("unknown quasi_product.kind '" + s + "'");
}

SampleKind parse_sample_kind(const std::string& s) {
  if (s == "sphere_grid") return SampleKind::SphereGrid;
  if (s == "ball_random") return SampleKind::BallRandom;
  if (s == "mixed") return SampleKind::Mixed;
  throw ConfigError("samples.kind must be sphere_grid|ball_random|mixed");
}

std::string sample_kind_name(SampleKind k) {
  switch (k) {
    case SampleKind::SphereGrid: return "sphere_grid";
    case SampleKind::BallRandom: return "ball_random";
    case SampleKind::Mixed: return "mixed";
  }
  return "?";
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::EvidenceOnly: return "evidence-only";
  }
  return "?";
}

}  // namespace

namespace {
RunConfig config_from_json(const json& j);
}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
}

namespace {

RunConfig config_from_json(const json& j) {
  reject_unknown(j, "config",
                 {"id", "seed", "space", "quasi_product", "operators", "samples",
                  "partition_schedule", "tolerances", "suites"});
  RunConfig cfg;
  cfg.id = j.value("id", "run");
  cfg.seed = j.value("seed", 0ULL);
  if (j.contains("space")) {
    const json& s = j["space"];
    reject_unknown(s, "space", {"dim", "norm", "weights", "algebra"});
    cfg.dim = s.value("dim", 1u);
    cfg.norm = parse_norm(s.value("norm", "sup"));
    if (s.contains("weights")) cfg.weights = s["weights"].get<std::vector<double>>();
    std::string alg = s.value("algebra", "pointwise_unital");
    if (alg == "pointwise_unital")
      cfg.algebra = AlgebraKind::PointwiseUnital;
    else if (alg == "none")
      cfg.algebra = AlgebraKind::None;
    else
      throw ConfigError("space.algebra must be none|pointwise_unital");
  }
  if (j.contains("quasi_product")) {
    const json& q = j["quasi_product"];
    reject_unknown(q, "quasi_product", {"kind", "param", "weights", "flags"});
    cfg.qp_kind = parse_qp_kind(q.value("kind", "scalar_product"));
    cfg.qp_param = q.value("param", 0.0);
    if (q.contains("weights"))
      cfg.qp_weights = q["weights"].get<std::vector<double>>();
    if (q.contains("flags")) {
      for (auto it = q["flags"].begin(); it != q["flags"].end(); ++it)
        cfg.flag_overrides[it.key()] = it.value().get<bool>();
    }
  }
  if (j.contains("operators")) {
    for (const json& o : j["operators"]) {
      reject_unknown(o, "operator", {"name", "phi", "range", "shift"});
      OperatorSpec spec;
      spec.name = o.value("name", "F");
      spec.phi = o.at("phi").get<std::string>();
      if (o.contains("range")) {
        auto r = o["range"].get<std::vector<double>>();
        if (r.size() != 2) throw ConfigError("operator.range needs two entries");
        spec.range = {r[0], r[1]};
      }
      if (o.contains("shift"))
        spec.shift = o["shift"].get<std::vector<double>>();
      cfg.operators.push_back(std::move(spec));
    }
  }
  if (j.contains("samples")) {
    const json& s = j["samples"];
    reject_unknown(s, "samples", {"kind", "count"});
    cfg.samples.kind = parse_sample_kind(s.value("kind", "mixed"));
    cfg.samples.count = s.value("count", 256u);
  }
  if (j.contains("partition_schedule"))
    cfg.partition_schedule = j["partition_schedule"].get<std::vector<int>>();
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    reject_unknown(t, "tolerances", {"axiom", "exact", "calculus", "sqrt"});
    cfg.tolerances.axiom = t.value("axiom", 1e-9);
    cfg.tolerances.exact = t.value("exact", 1e-12);
    cfg.tolerances.calculus = t.value("calculus", 1e-3);
    cfg.tolerances.sqrt = t.value("sqrt", 1e-8);
  }
  if (j.contains("suites"))
    cfg.suites = j["suites"].get<std::vector<std::string>>();
  return cfg;
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig cfg = from_json_text(buf.str());
  if (const char* env = std::getenv("QSPEC_SEED"))
    cfg.seed = std::strtoull(env, nullptr, 10);
  return cfg;
}

std::string RunConfig::to_json_text() const {
  json j;
  j["id"] = id;
  j["seed"] = seed;
  j["space"] = {{"dim", dim},
                {"norm", norm_name(norm)},
                {"weights", weights.empty() ? std::vector<double>(dim, 1.0) : weights},
                {"algebra", algebra == AlgebraKind::PointwiseUnital
                                ? "pointwise_unital"
                                : "none"}};
  json q;
  q["kind"] = to_string(qp_kind);
  q["param"] = qp_param;
  q["weights"] = qp_weights;
  json fo = json::object();
  for (const auto& [k, v] : flag_overrides) fo[k] = v;
  q["flags"] = fo;
  j["quasi_product"] = q;
  j["operators"] = json::array();
  for (const auto& op : operators) {
    json o;
    o["name"] = op.name;
    o["phi"] = op.phi;
    if (op.range) o["range"] = {op.range->first, op.range->second};
    if (op.shift) o["shift"] = *op.shift;
    j["operators"].push_back(o);
  }
  j["samples"] = {{"kind", sample_kind_name(samples.kind)},
                  {"count", samples.count}};
  j["partition_schedule"] = partition_schedule;
  j["tolerances"] = {{"axiom", tolerances.axiom},
                     {"exact", tolerances.exact},
                     {"calculus", tolerances.calculus},
                     {"sqrt", tolerances.sqrt}};
  j["suites"] = suites;
  return j.dump(2);
}

Space RunConfig::make_space() const {
  return Space(id + ".space", dim, norm,
               weights.empty() ? std::vector<double>(dim, 1.0) : weights, algebra);
}

QuasiProduct RunConfig::make_qp() const {
  Space sp = make_space();
  QuasiProduct qp = [&] {
    switch (qp_kind) {
      case QpKind::ScalarProduct: return QuasiProduct::scalar_product(sp);
      case QpKind::ScaledInner: return QuasiProduct::scaled_inner(sp, qp_param);
      case QpKind::IntegralPair: return QuasiProduct::integral_pair(sp);
      case QpKind::IntegralSup: return QuasiProduct::integral_sup(sp);
      case QpKind::WeightedSum: return QuasiProduct::weighted_sum(sp, qp_weights);
    }
    throw ConfigError("bad quasi-product kind");
  }();
  QpFlags& fl = qp.mutable_flags();
  for (const auto& [k, v] : flag_overrides) {
    if (k == "symmetric") fl.symmetric = v;
    else if (k == "quasi_symmetric") fl.quasi_symmetric = v;
    else if (k == "left_integral_domain") fl.left_integral_domain = v;
    else if (k == "preserves_positivity") fl.preserves_positivity = v;
    else if (k == "norm_compat") fl.norm_compat = v;
    else throw ConfigError("unknown flag override '" + k + "'");
  }
  return qp;
}

GContext RunConfig::make_context() const {
  Space sp = make_space();
  if (!sp.has_algebra())
    throw ConfigError(
        "the definite/spectral suites need the pointwise algebra space");
  NlOperator g = NlOperator::profile(
      sp, [](const Vec&) { return 1.0; }, Carrier::GammaCanonical,
      std::make_pair(1.0, 1.0), "gamma");
  return GContext(sp, make_qp(), g, g);
}

SampleSet RunConfig::make_samples() const {
  return SampleSet::make(make_space(), samples, seed);
}

NlOperator RunConfig::make_operator(const OperatorSpec& spec) const {
  Space sp = make_space();
  Expr expr = Expr::parse(spec.phi, sp);
  NlOperator base = NlOperator::profile(
      sp, [expr](const Vec& x) { return expr.eval(x); },
      Carrier::GammaCanonical, spec.range, spec.name);
  if (spec.shift) {
    if (spec.shift->size() != sp.dim())
      throw ConfigError("operator.shift dimension mismatch");
    return NlOperator::shifted(base, Vec(*spec.shift));
  }
  return base;
}

bool SuiteReport::all_expected_pass() const {
  for (const Check& c : checks)
    if (c.status == CheckStatus::Fail) return false;
  return true;
}

namespace {

json report_to_json(const SuiteReport& rep, bool with_timing) {
  json j;
  j["meta"] = {{"config_id", rep.config_id},
               {"seed", rep.seed},
               {"version", rep.version}};
  j["checks"] = json::array();
  for (const Check& c : rep.checks) {
    json e;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["status"] = status_name(c.status);
    e["margin"] = c.margin;
    if (!c.witness.empty()) e["witness"] = c.witness;
    if (with_timing) e["timing_ms"] = c.timing_ms;
    j["checks"].push_back(e);
  }
  j["tables"] = json::array();
  for (const ConvergenceTable& t : rep.tables) {
    json rows = json::array();
    for (const auto& r : t.rows)
      rows.push_back({{"n", r.n}, {"mesh", r.mesh}, {"sup_error", r.sup_error}});
    j["tables"].push_back({{"label", t.label}, {"rows", rows}});
  }
  if (with_timing) j["timing"] = {{"total_ms", rep.total_ms}};
  return j;
}

class CheckTimer {
 public:
  explicit CheckTimer(SuiteReport& rep) : rep_(rep) {}
  void add(std::string name, std::string anchor, CheckStatus status,
           double margin, std::string witness = "") {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    rep_.checks.push_back(
        {std::move(name), std::move(anchor), status, margin, std::move(witness), ms});
  }

 private:
  SuiteReport& rep_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

bool wants(const RunConfig& cfg, const std::string& suite) {
  for (const auto& s : cfg.suites)
    if (s == suite) return true;
  return false;
}

void run_axioms_suite(const RunConfig& cfg, SuiteReport& rep, CheckTimer& timer) {
  (void)rep;
  QuasiProduct qp = cfg.make_qp();
  SampleSet samples = cfg.make_samples();
  AxiomReport ax = qp_check_axioms(qp, samples, cfg.tolerances.axiom,
                                   std::min<std::size_t>(10000, samples.size() * 64));
  for (const AxiomEntry& e : ax.entries) {
    std::string witness;
    if (e.witness)
      witness = to_string(e.witness->first) + ", " + to_string(e.witness->second);
    timer.add("axioms." + e.name, "quasi-product/" + e.name,
              e.pass ? CheckStatus::Pass : CheckStatus::Fail, e.margin, witness);
  }
  if (qp.space().has_algebra()) {
    GContext ctx = cfg.make_context();
    CapabilityReport caps =
        qp_check_capabilities(qp, ctx.g(), samples, cfg.tolerances.axiom);
    for (const CapabilityEntry& e : caps.entries) {
      if (e.status == CapabilityStatus::NotApplicable) continue;
      bool consistent = (e.status == CapabilityStatus::Consistent) == e.declared;
      std::string witness;
      if (e.witness) {
        for (const Vec& v : e.witness->vectors) {
          if (!witness.empty()) witness += " ";
          witness += to_string(v);
        }
        if (!e.witness->note.empty()) witness += " (" + e.witness->note + ")";
      }
      timer.add("capability." + e.name, "capability/" + e.name,
                consistent ? CheckStatus::Pass : CheckStatus::Fail,
                e.empirical_k, witness);
    }
  }
}

void run_definite_suite(const RunConfig& cfg, SuiteReport& rep, CheckTimer& timer) {
  GContext ctx = cfg.make_context();
  SampleSet samples = cfg.make_samples();
  const Space& sp = ctx.space();
  Rng rng(cfg.seed ^ 0xdef1ULL);

  // Split identities on seeded profile operators; exact by construction.
  double worst = 0.0;
  bool split_ok = true;
  for (int k = 0; k < 32 && split_ok; ++k) {
    double a = rng.uniform(-1.0, 1.0), b = rng.uniform(0.5, 2.0);
    double c = rng.uniform(-3.0, 3.0);
    NlOperator f = NlOperator::profile(
        sp, [a, b, c](const Vec& x) { return a + std::sin(b * x[0] + c); },
        Carrier::GammaCanonical, std::nullopt, "seeded");
    AbsParts parts = abs_parts(f, ctx);
    for (const Vec& x : samples.points()) {
      Vec lhs = sp.alg_mul(parts.abs(x), parts.abs(x));
      Vec rhs = sp.alg_mul(f(x), f(x));
      if (!(lhs == rhs)) split_ok = false;
      if (!sp.alg_mul(parts.plus(x), parts.minus(x)).is_zero()) split_ok = false;
      worst = std::max(worst, sp.norm(lhs - rhs));
    }
  }
  timer.add("definite.abs_split", "definite/abs-split",
            split_ok ? CheckStatus::Pass : CheckStatus::Fail, worst);

  // Product positivity: with the preservation capability the product of
  // g-positive operators must stay g-positive; without it a counterexample
  // demonstrates the hypothesis is sharp.
  bool hypothesis = ctx.qp().flags().preserves_positivity.value_or(false) ||
                    (ctx.qp().flags().square_bounded_below.has_value() &&
                     ctx.qp().flags().left_integral_domain.value_or(false));
  bool violation = false;
  Vec violation_at = sp.zero();
  for (int k = 0; k < 64 && !violation; ++k) {
    double b1 = rng.uniform(0.0, 1.0), b2 = rng.uniform(0.0, 1.0);
    double c1 = rng.uniform(-3.0, 3.0), c2 = rng.uniform(-3.0, 3.0);
    NlOperator f = NlOperator::profile(
        sp, [b1, c1](const Vec& x) { return 1.0 + b1 * std::sin(x[0] + c1); },
        Carrier::GammaCanonical, std::nullopt, "gpos1");
    NlOperator h = NlOperator::profile(
        sp, [b2, c2](const Vec& x) { return 1.0 + b2 * std::cos(x[0] + c2); },
        Carrier::GammaCanonical, std::nullopt, "gpos2");
    PositivityVerdict v = is_g_positive(pointwise_mul(f, h), ctx, samples);
    if (!v.consistent) {
      violation = true;
      violation_at = *v.counterexample;
    }
  }
  if (hypothesis) {
    timer.add("definite.product_positivity", "definite/product-positivity",
              violation ? CheckStatus::Fail : CheckStatus::Pass, 0.0,
              violation ? to_string(violation_at) : "");
  } else {
    // Canonical-profile pairs stay positive structurally even when the
    // pairing lacks the capability; record the capability witness instead.
    bool witnessed = false;
    std::string note;
    for (const QpWitness& w : ctx.qp().witnesses()) {
      if (w.flag == "preserves_positivity" && w.vectors.size() == 3) {
        Vec x = w.vectors[0];
        double a = ctx.pair_g(w.vectors[1], x);
        double b = ctx.pair_g(w.vectors[2], x);
        double p = ctx.pair_g(sp.alg_mul(w.vectors[1], w.vectors[2]), x);
        witnessed = a >= 0.0 && b >= 0.0 && p < 0.0;
        note = "pair values " + std::to_string(a) + ", " + std::to_string(b) +
               " -> product " + std::to_string(p);
      }
    }
    timer.add("definite.product_positivity", "definite/product-positivity",
              witnessed ? CheckStatus::Pass : CheckStatus::EvidenceOnly, 0.0, note);
  }

  // Square root spot check on an operator with values inside the unit box.
  NlOperator f01 = NlOperator::blackbox(
      sp,
      [sp](const Vec& x) {
        return (0.25 + 0.25 * (1.0 + std::sin(x[0]))) * sp.unit();
      },
      sp.zero(), "boxed");
  NlOperator root = alg_sqrt(f01, ctx, cfg.tolerances.sqrt, 200);
  double resid = alg_sqrt_residual(f01, root, ctx, samples);
  timer.add("definite.alg_sqrt", "definite/square-root",
            resid <= cfg.tolerances.sqrt * 2.0 ? CheckStatus::Pass
                                               : CheckStatus::Fail,
            resid);
  (void)rep;
}

void run_spectral_suite(const RunConfig& cfg, SuiteReport& rep, CheckTimer& timer) {
  GContext ctx = cfg.make_context();
  SampleSet samples = cfg.make_samples();
  GammaReport gr = validate_gamma(ctx.gamma(), ctx, samples);
  timer.add("spectral.gauge", "spectral/gauge-validation",
            gr.pass ? CheckStatus::Pass : CheckStatus::Fail, gr.k1_min,
            gr.witness ? to_string(*gr.witness) : "");

  for (const OperatorSpec& spec : cfg.operators) {
    NlOperator f = cfg.make_operator(spec);
    if (!f.vanishes_at_zero()) continue;  // shifted operators go through calculus
    ProfileCheck pc = verify_profile(f, ctx, samples, cfg.tolerances.axiom);
    timer.add("spectral.profile." + spec.name, "operator/profile-contract",
              pc.ok ? CheckStatus::Pass : CheckStatus::Fail, pc.worst,
              pc.witness ? to_string(*pc.witness) : "");
    SpectralDecomposition dec =
        decompose(f, ctx, cfg.partition_schedule, samples);
    timer.add("spectral.scalar_identity." + spec.name, "spectral/scalar-identity",
              dec.scalar_identity_residual <= cfg.tolerances.axiom
                  ? CheckStatus::Pass
                  : CheckStatus::Fail,
              dec.scalar_identity_residual);
    timer.add("spectral.convergence." + spec.name, "spectral/operator-convergence",
              dec.resolution_converged ? CheckStatus::Pass : CheckStatus::Fail,
              dec.sums.empty() ? 0.0 : dec.sums.back().sup_error,
              dec.condition_holds
                  ? ""
                  : "condition fails; convergence is structural (profile)");
    ConvergenceTable table;
    table.label = "convergence_" + spec.name;
    for (const auto& s : dec.sums) table.rows.push_back({s.n, s.mesh, s.sup_error});
    rep.tables.push_back(std::move(table));

    // Indicator monotonicity along a small ladder.
    bool mono = true;
    Bracket br = dec.brkt;
    for (int k = 0; k + 1 < 8 && mono; ++k) {
      double lo = br.m + (br.M - br.m) * k / 8.0;
      double hi = br.m + (br.M - br.m) * (k + 1) / 8.0;
      ProjectionSet a = indicator(f, ctx, lo), b = indicator(f, ctx, hi);
      for (const Vec& x : samples.points())
        if (a.contains(x) && !b.contains(x)) mono = false;
    }
    timer.add("spectral.indicator_monotone." + spec.name,
              "spectral/indicator-monotone",
              mono ? CheckStatus::Pass : CheckStatus::Fail, 0.0);
  }
}

void run_calculus_suite(const RunConfig& cfg, SuiteReport& rep, CheckTimer& timer) {
  GContext ctx = cfg.make_context();
  SampleSet samples = cfg.make_samples();
  for (const OperatorSpec& spec : cfg.operators) {
    NlOperator f = cfg.make_operator(spec);
    if (!f.vanishes_at_zero()) continue;
    CalcResult res = cont_calculus(f, ctx, func_exp(), cfg.tolerances.calculus,
                                   samples, /*cross_check=*/true);
    timer.add("calculus.limit." + spec.name, "calculus/limit", CheckStatus::Pass,
              static_cast<double>(res.degree));
    timer.add("calculus.norm_bound." + spec.name, "calculus/norm-bound",
              res.norm_ratio <= 1.0 + 1e-9 ? CheckStatus::Pass : CheckStatus::Fail,
              res.norm_ratio);
    double agree = res.cheb_agreement.value_or(
        std::numeric_limits<double>::quiet_NaN());
    timer.add("calculus.route_independence." + spec.name,
              "calculus/route-independence",
              res.cheb_agreement && agree <= 2.0 * cfg.tolerances.calculus
                  ? CheckStatus::Pass
                  : CheckStatus::Fail,
              agree);
  }
  (void)rep;
}

void run_spectral_ops_suite(const RunConfig& cfg, SuiteReport& rep,
                            CheckTimer& timer) {
  if (cfg.operators.empty()) return;
  GContext ctx = cfg.make_context();
  SampleSet samples = cfg.make_samples();
  const Space& sp = ctx.space();
  const OperatorSpec& spec = cfg.operators.front();
  NlOperator f = cfg.make_operator(spec);
  const ProfileInfo* prof = f.profile_info();
  if (!prof || !prof->range || !f.vanishes_at_zero()) return;
  double lo = prof->range->first, hi = prof->range->second;
  double pad = std::max(1e-3 * (hi - lo), 1e-9);
  auto phi = prof->phi;
  SpectralProjection e = SpectralProjection::profile(sp, phi, lo - pad, hi);

  SpAxiomReport ax = sp_axiom_check(e, samples, cfg.seed ^ 0xfeedULL);
  timer.add("spectral_ops.axioms", "spectral-op/axioms",
            ax.all_pass() ? CheckStatus::Pass : CheckStatus::Fail, 0.0);

  Partition part = Partition::uniform(Bracket{lo - pad, hi, pad, 0.0}, 400);
  FuncSpec fn = func_exp();
  NlOperator integral = sp_integral(e, fn, part);
  double wbound = modulus_of_continuity(fn.eval, lo - pad, hi, part.mesh());
  double worst = 0.0;
  for (const Vec& x : samples.points()) {
    double err = sp.norm(integral(x) - fn.eval(phi(x)) * x) / sp.norm(x);
    worst = std::max(worst, err);
  }
  timer.add("spectral_ops.integral_oracle", "spectral-op/integral-oracle",
            worst <= wbound * (1.0 + 1e-9) ? CheckStatus::Pass : CheckStatus::Fail,
            worst);

  NlOperator lincomb = sp_class_combine(e, 2.0, func_identity(), func_const(1.0), part);
  FuncSpec combined{[](double t) { return 2.0 * t + 1.0; }, {}, "2id+1"};
  NlOperator direct = sp_integral(e, combined, part);
  double lin_gap = sampled_op_distance(lincomb, direct, samples);
  timer.add("spectral_ops.linearity", "spectral-op/linearity",
            lin_gap <= cfg.tolerances.exact ? CheckStatus::Pass : CheckStatus::Fail,
            lin_gap);

  NondegeneracyReport nd = sp_nondegeneracy_check(
      e, samples.points(), 100);
  timer.add("spectral_ops.nondegeneracy", "spectral-op/nondegeneracy",
            CheckStatus::EvidenceOnly,
            static_cast<double>(nd.gaps_witnessed) /
                static_cast<double>(nd.gaps_probed));
  (void)rep;
}

}  // namespace

SuiteReport run_suite(const RunConfig& cfg) {
  SuiteReport rep;
  rep.config_id = cfg.id;
  rep.seed = cfg.seed;
  auto start = std::chrono::steady_clock::now();
  CheckTimer timer(rep);
  if (wants(cfg, "axioms")) run_axioms_suite(cfg, rep, timer);
  if (wants(cfg, "definite")) run_definite_suite(cfg, rep, timer);
  if (wants(cfg, "spectral")) run_spectral_suite(cfg, rep, timer);
  if (wants(cfg, "calculus")) run_calculus_suite(cfg, rep, timer);
  if (wants(cfg, "spectral_ops")) run_spectral_ops_suite(cfg, rep, timer);
  rep.total_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return rep;
}

std::string SuiteReport::to_json_text() const {
  return report_to_json(*this, true).dump(2);
}

std::string SuiteReport::to_json_text_no_timing() const {
  return report_to_json(*this, false).dump(2);
}

std::vector<std::string> emit(const SuiteReport& report, const std::string& format,
                              const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  if (format == "json") {
    fs::path p = fs::path(out_dir) / "report.json";
    std::ofstream out(p);
    if (!out) throw Error("cannot write " + p.string());
    out << report.to_json_text() << "\n";
    written.push_back(p.string());
  } else if (format == "csv") {
    for (const ConvergenceTable& t : report.tables) {
      std::string name = t.label;
      for (char& c : name)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
      fs::path p = fs::path(out_dir) / (name + ".csv");
      std::ofstream out(p);
      if (!out) throw Error("cannot write " + p.string());
      out << "n,mesh,sup_error\n";
      out.precision(17);
      for (const auto& r : t.rows)
        out << r.n << "," << r.mesh << "," << r.sup_error << "\n";
      written.push_back(p.string());
    }
  } else {
    throw ConfigError("emit format must be json or csv");
  }
  return written;
}

}  // namespace qspec
