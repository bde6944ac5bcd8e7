#include "qspec/quasi_product.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qspec/errors.hpp"
#include "qspec/operator_space.hpp"

namespace qspec {

const char* to_string(QpKind k) {
  switch (k) {
    case QpKind::ScalarProduct: return "scalar_product";
    case QpKind::ScaledInner: return "scaled_inner";
    case QpKind::IntegralPair: return "integral_pair";
    case QpKind::IntegralSup: return "integral_sup";
    case QpKind::WeightedSum: return "weighted_sum";
  }
  return "?";
}

double tol_scale(std::initializer_list<double> magnitudes) {
  double s = 1.0;
  for (double m : magnitudes) s = std::max(s, std::fabs(m));
  return s;
}

QuasiProduct QuasiProduct::scalar_product(Space space) {
  if (space.dim() != 1)
    throw StructuralError("scalar_product lives on a one-dimensional space");
  QuasiProduct qp(QpKind::ScalarProduct, std::move(space));
  qp.c_bar_ = 1.0;
  qp.flags_.symmetric = true;
  qp.flags_.quasi_symmetric = true;
  qp.flags_.left_integral_domain = true;
  qp.flags_.preserves_positivity = true;
  qp.flags_.square_bounded_below = 1.0;
  qp.flags_.norm_compat = true;
  return qp;
}

QuasiProduct QuasiProduct::scaled_inner(Space space, double k) {
  if (space.norm_kind() != NormKind::Two)
    throw StructuralError("scaled_inner needs the two-norm space");
  if (!(k > 0.0)) throw PreconditionError("scaled_inner needs k > 0");
  QuasiProduct qp(QpKind::ScaledInner, std::move(space));
  qp.k_ = k;
  qp.c_bar_ = 1.0 + k;  // sup of c(y) = ||y||/(||y||+1) + k
  qp.flags_.symmetric = false;
  // c(y)/c(x) is a positive factor bounded in [k/(1+k), (1+k)/k].
  qp.flags_.quasi_symmetric = true;
  qp.flags_.norm_compat = true;  // d(y) = c(y)
  const Space& sp = qp.space_;
  if (sp.dim() >= 1) {
    Vec e1 = Vec::axis(sp.dim(), 0);
    qp.witnesses_.push_back(
        {"symmetric", {e1, 2.0 * e1}, "c(2e1)<e1,2e1> != c(e1)<2e1,e1>"});
  }
  return qp;
}

QuasiProduct QuasiProduct::integral_pair(Space space) {
  if (space.norm_kind() != NormKind::One)
    throw StructuralError("integral_pair needs the weighted one-norm space");
  QuasiProduct qp(QpKind::IntegralPair, std::move(space));
  qp.c_bar_ = 1.0;  // |sum x h| <= ||x||_1,h
  qp.flags_.symmetric = true;
  qp.flags_.quasi_symmetric = true;
  qp.flags_.norm_compat = false;  // [x,x] vanishes on the kernel of the functional
  if (qp.space_.dim() >= 2) {
    Vec x = Vec::zeros(qp.space_.dim());
    x[0] = 1.0 / qp.space_.weights()[0];
    x[1] = -1.0 / qp.space_.weights()[1];
    qp.witnesses_.push_back({"norm_compat", {x}, "[x,x] = 0 with x != 0"});
  }
  return qp;
}

QuasiProduct QuasiProduct::integral_sup(Space space) {
  if (space.norm_kind() != NormKind::Sup)
    throw StructuralError("integral_sup needs the sup-norm space");
  QuasiProduct qp(QpKind::IntegralSup, std::move(space));
  double hsum = std::accumulate(qp.space_.weights().begin(),
                                qp.space_.weights().end(), 0.0);
  qp.c_bar_ = hsum;
  qp.flags_.symmetric = false;
  qp.flags_.quasi_symmetric = false;
  qp.flags_.norm_compat = false;
  if (qp.space_.dim() >= 2) {
    // In-domain asymmetry witness and a ratio-collapse pair showing no
    // bounded quasi-symmetry factor exists.
    Vec x1 = Vec::axis(qp.space_.dim(), 0);
    Vec y1 = Vec::zeros(qp.space_.dim());
    y1[0] = 2.0;
    y1[1] = 1.0;
    qp.witnesses_.push_back({"symmetric", {x1, y1}, "[x,y] != [y,x] in the domain"});
    Vec x2 = Vec::zeros(qp.space_.dim());
    x2[0] = 1.0 / qp.space_.weights()[0];
    x2[1] = -(1.0 - 1e-9) / qp.space_.weights()[1];
    qp.witnesses_.push_back(
        {"quasi_symmetric", {x2, x1}, "[x,y]/[y,x] collapses toward 0"});
  }
  return qp;
}

QuasiProduct QuasiProduct::weighted_sum(Space space, std::vector<double> w) {
  if (!space.has_algebra())
    throw StructuralError("weighted_sum ships on the pointwise algebra");
  QuasiProduct qp(QpKind::WeightedSum, std::move(space));
  if (w.empty()) w.assign(qp.space_.dim(), 1.0 / static_cast<double>(qp.space_.dim()));
  if (w.size() != qp.space_.dim())
    throw StructuralError("weighted_sum weight length mismatch");
  for (double wi : w)
    if (!(wi > 0.0)) throw StructuralError("weighted_sum weights must be positive");
  qp.weights_ = std::move(w);
  double wsum = std::accumulate(qp.weights_.begin(), qp.weights_.end(), 0.0);
  double wmin = *std::min_element(qp.weights_.begin(), qp.weights_.end());
  qp.c_bar_ = wsum;
  qp.flags_.symmetric = true;
  qp.flags_.quasi_symmetric = true;
  qp.flags_.square_bounded_below = wmin;
  qp.flags_.norm_compat = true;  // d(y) = sum w y^2 / ||y||^2 in [wmin, wsum]
  if (qp.space_.dim() >= 2) {
    qp.flags_.left_integral_domain = false;
    qp.flags_.preserves_positivity = false;
    std::size_t d = qp.space_.dim();
    Vec ker = Vec::zeros(d);
    ker[0] = 1.0 / qp.weights_[0];
    ker[1] = -1.0 / qp.weights_[1];
    qp.witnesses_.push_back(
        {"left_integral_domain", {Vec::ones(d), ker}, "[y, g(x)] = 0 with y != 0"});
    const double eps = 0.125;
    Vec y1 = Vec::zeros(d);
    y1[0] = 1.0;
    y1[1] = -eps;
    Vec y2 = Vec::zeros(d);
    y2[0] = -eps;
    y2[1] = 1.0;
    qp.witnesses_.push_back({"preserves_positivity",
                             {Vec::ones(d), y1, y2},
                             "[y1,g],[y2,g] >= 0 but [y1 y2, g] < 0"});
  } else {
    qp.flags_.left_integral_domain = true;
    qp.flags_.preserves_positivity = true;
  }
  return qp;
}

bool QuasiProduct::in_domain(const Vec& x) const {
  if (!restricted_domain()) return true;
  if (x.is_zero()) return true;
  return space_.weighted_sum(x) > 0.0;
}

Vec QuasiProduct::to_domain(const Vec& x) const {
  if (in_domain(x)) return x;
  Vec flipped = -x;
  if (!in_domain(flipped))
    throw DomainError("point sits on the domain boundary (zero weighted sum)");
  return flipped;
}

double QuasiProduct::scale_c(const Vec& y) const {
  if (kind_ != QpKind::ScaledInner) return 1.0;
  double ny = space_.norm(y);
  return ny / (ny + 1.0) + k_;
}

double QuasiProduct::norm_compat_d(const Vec& y) const {
  if (!flags_.norm_compat)
    throw UnsupportedError(std::string(to_string(kind_)) +
                           " has no norm-compatibility witness d");
  switch (kind_) {
    case QpKind::ScalarProduct: return 1.0;
    case QpKind::ScaledInner: return scale_c(y);
    case QpKind::WeightedSum: {
      if (y.is_zero()) return 1.0;
      double num = 0.0;
      for (std::size_t i = 0; i < y.dim(); ++i)
        num += weights_[i] * y[i] * y[i];
      double n = space_.norm(y);
      return num / (n * n);
    }
    default: break;
  }
  return 1.0;
}

double QuasiProduct::eval(const Vec& x, const Vec& y) const {
  space_.check_member(x);
  space_.check_member(y);
  if (restricted_domain() && (!in_domain(x) || !in_domain(y)))
    throw DomainError("integral_sup pairing evaluated outside its domain");
  switch (kind_) {
    case QpKind::ScalarProduct:
      return x[0] * y[0];
    case QpKind::ScaledInner:
      return scale_c(y) * dot(x, y);
    case QpKind::IntegralPair:
      return space_.weighted_sum(x) * space_.weighted_sum(y);
    case QpKind::IntegralSup: {
      double mx = -std::numeric_limits<double>::infinity();
      for (double v : y.c) mx = std::max(mx, v);
      return space_.weighted_sum(x) * mx;
    }
    case QpKind::WeightedSum: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.dim(); ++i) s += weights_[i] * x[i] * y[i];
      return s;
    }
  }
  return 0.0;
}

double qp_eval(const QuasiProduct& qp, const Vec& x, const Vec& y) {
  return qp.eval(x, y);
}

bool AxiomReport::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

const AxiomEntry* AxiomReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

AxiomReport qp_check_axioms(const QuasiProduct& qp, const SampleSet& samples,
                            double tol, std::size_t pair_count) {
  AxiomReport report;
  const Space& sp = qp.space();
  auto cond = [&](const Vec& v) { return qp.restricted_domain() ? qp.to_domain(v) : v; };

  auto pairs = samples.pair_indices(pair_count, /*salt=*/1);
  report.pairs_tested = pairs.size();

  AxiomEntry diag{"diagonal_nonneg", true, 0.0, 1.0, std::nullopt};
  AxiomEntry bound{"bound", true, 0.0, 1.0, std::nullopt};
  AxiomEntry lin{"left_linearity", true, 0.0, 1.0, std::nullopt};

  Rng rng(samples.seed() ^ 0xa71a5ULL);
  for (auto [i, j] : pairs) {
    Vec x = cond(samples[i]);
    Vec y = cond(samples[j]);
    double nx = sp.norm(x), ny = sp.norm(y);

    double dxx = qp.eval(x, x);
    double dscale = tol_scale({qp.c_bar() * nx * nx});
    double dmargin = dxx / dscale;
    if (dmargin < diag.margin) {
      diag.margin = dmargin;
      if (dmargin < -tol) {
        diag.pass = false;
        diag.witness = {x, x};
      }
    }
    diag.scale = std::max(diag.scale, dscale);

    double v = qp.eval(x, y);
    double bscale = tol_scale({qp.c_bar() * nx * ny});
    double bmargin = (std::fabs(v) - qp.c_bar() * nx * ny) / bscale;
    if (bmargin > bound.margin) {
      bound.margin = bmargin;
      if (bmargin > tol) {
        bound.pass = false;
        bound.witness = {x, y};
      }
    }

    // Left-linearity with random coefficients; combinations are conditioned
    // into the domain when the pairing is restricted (and skipped when the
    // combination cannot be conditioned, i.e. sits on the boundary).
    double alpha = rng.uniform(-2.0, 2.0);
    double beta = rng.uniform(-2.0, 2.0);
    Vec combo = alpha * x + beta * y;
    bool combo_ok = !qp.restricted_domain() || qp.in_domain(combo);
    if (combo_ok) {
      double lhs = qp.eval(combo, y);
      double rhs = alpha * qp.eval(x, y) + beta * qp.eval(y, y);
      double lscale = tol_scale({lhs, rhs, qp.c_bar() * sp.norm(combo) * ny});
      double resid = std::fabs(lhs - rhs) / lscale;
      if (resid > lin.margin) {
        lin.margin = resid;
        if (resid > tol) {
          lin.pass = false;
          lin.witness = {combo, y};
        }
      }
    }
  }
  // Zero vector: [0, y] = 0 from linearity with alpha = 0.
  if (!qp.restricted_domain() || qp.in_domain(samples.zero())) {
    Vec y0 = cond(samples[0]);
    double z = qp.eval(samples.zero(), y0);
    if (std::fabs(z) > tol) {
      lin.pass = false;
      lin.margin = std::max(lin.margin, std::fabs(z));
      lin.witness = {samples.zero(), y0};
    }
  }
  report.entries.push_back(diag);
  report.entries.push_back(bound);
  report.entries.push_back(lin);

  // Symmetry flags. Declared-true flags are verified; declared-false flags
  // must come with a stored witness that actually violates the property.
  const QpFlags& fl = qp.flags();
  if (fl.symmetric) {
    AxiomEntry sym{"symmetric", true, 0.0, 1.0, std::nullopt};
    for (auto [i, j] : samples.pair_indices(std::min<std::size_t>(pair_count, 2000), 2)) {
      Vec x = cond(samples[i]), y = cond(samples[j]);
      double a = qp.eval(x, y), b = qp.eval(y, x);
      double resid = std::fabs(a - b) / tol_scale({a, b});
      if (resid > sym.margin) sym.margin = resid;
      if (resid > tol) {
        sym.pass = false;
        sym.witness = {x, y};
      }
    }
    report.entries.push_back(sym);
  } else {
    AxiomEntry sym{"symmetric_refuted", false, 0.0, 1.0, std::nullopt};
    for (const auto& w : qp.witnesses()) {
      if (w.flag != "symmetric" || w.vectors.size() < 2) continue;
      double a = qp.eval(w.vectors[0], w.vectors[1]);
      double b = qp.eval(w.vectors[1], w.vectors[0]);
      sym.margin = std::fabs(a - b) / tol_scale({a, b});
      sym.pass = sym.margin > tol;  // witness really separates the two sides
      sym.witness = {w.vectors[0], w.vectors[1]};
    }
    report.entries.push_back(sym);
  }
  if (!fl.symmetric && fl.quasi_symmetric) {
    // A positive bounded factor q(x,y) with [x,y] = q [y,x] must exist:
    // matching zero sets, matching signs, ratios bounded both ways.
    AxiomEntry q{"quasi_symmetric", true, 0.0, 1.0, std::nullopt};
    for (auto [i, j] :
         samples.pair_indices(std::min<std::size_t>(pair_count, 2000), 4)) {
      Vec x = cond(samples[i]), y = cond(samples[j]);
      double a = qp.eval(x, y), b = qp.eval(y, x);
      if (a == 0.0 && b == 0.0) continue;
      double ratio = b != 0.0 ? a / b : std::numeric_limits<double>::infinity();
      bool ok = ratio > 1e-6 && ratio < 1e6;
      q.margin = std::max(q.margin, ratio);
      if (!ok) {
        q.pass = false;
        q.witness = {x, y};
      }
    }
    report.entries.push_back(q);
  }
  if (!fl.symmetric && !fl.quasi_symmetric) {
    AxiomEntry q{"quasi_symmetric_refuted", false, 0.0, 1.0, std::nullopt};
    for (const auto& w : qp.witnesses()) {
      if (w.flag != "quasi_symmetric" || w.vectors.size() < 2) continue;
      double a = qp.eval(w.vectors[0], w.vectors[1]);
      double b = qp.eval(w.vectors[1], w.vectors[0]);
      // Either a sign mismatch or a ratio far outside any bounded factor.
      double ratio = (b != 0.0) ? a / b : std::numeric_limits<double>::infinity();
      q.margin = ratio;
      q.pass = ratio <= 1e-6 || ratio >= 1e6 || ratio < 0.0;
      q.witness = {w.vectors[0], w.vectors[1]};
    }
    report.entries.push_back(q);
  }
  return report;
}

const CapabilityEntry* CapabilityReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

bool CapabilityReport::consistent_with_declarations() const {
  for (const auto& e : entries) {
    if (e.status == CapabilityStatus::NotApplicable) continue;
    bool empirically_ok = e.status == CapabilityStatus::Consistent;
    if (e.declared != empirically_ok) return false;
  }
  return true;
}

CapabilityReport qp_check_capabilities(const QuasiProduct& qp,
                                       const NlOperator& g,
                                       const SampleSet& samples, double tol) {
  const Space& sp = qp.space();
  // g must be nonvanishing off zero before any capability makes sense.
  for (const Vec& x : samples.points()) {
    Vec gx = g(x);
    if (sp.norm(gx) == 0.0)
      throw PreconditionError("g vanishes at the nonzero point " + to_string(x));
  }
  CapabilityReport report;
  const QpFlags& fl = qp.flags();
  auto cond = [&](const Vec& v) { return qp.restricted_domain() ? qp.to_domain(v) : v; };

  std::size_t nx = std::min<std::size_t>(samples.size(), 64);

  // Left integral domain: [y, g(x)] = 0 must force y = 0. Direct hits are
  // scanned, and kernel candidates are built from sample pairs through the
  // exact left-linearity of the pairing.
  {
    CapabilityEntry e;
    e.name = "left_integral_domain";
    e.declared = fl.left_integral_domain.value_or(false);
    e.status = CapabilityStatus::Consistent;
    if (!fl.left_integral_domain.has_value()) {
      e.status = CapabilityStatus::NotApplicable;
    } else {
      for (std::size_t xi = 0; xi < nx && e.status == CapabilityStatus::Consistent; ++xi) {
        Vec x = cond(samples[xi]);
        Vec gx = g(x);
        double ngx = sp.norm(gx);
        for (std::size_t yi = 0; yi < samples.size(); ++yi) {
          Vec y = cond(samples[yi]);
          double v = qp.eval(y, gx);
          double scale = tol_scale({qp.c_bar() * sp.norm(y) * ngx});
          if (std::fabs(v) <= tol * scale && sp.norm(y) > tol) {
            e.status = CapabilityStatus::Refuted;
            e.witness = QpWitness{"left_integral_domain", {x, y}, "direct kernel hit"};
            break;
          }
          if (yi + 1 < samples.size()) {
            Vec y2 = cond(samples[yi + 1]);
            double v2 = qp.eval(y2, gx);
            Vec ker = v2 * y + (-v) * y2;
            double nk = sp.norm(ker);
            double kscale = std::fabs(v2) * sp.norm(y) + std::fabs(v) * sp.norm(y2);
            if (nk > 1e-6 * tol_scale({kscale})) {
              double kv = qp.eval(ker, gx);
              if (std::fabs(kv) <= 1e-9 * tol_scale({qp.c_bar() * nk * ngx})) {
                e.status = CapabilityStatus::Refuted;
                e.witness =
                    QpWitness{"left_integral_domain", {x, ker}, "constructed kernel"};
                break;
              }
            }
          }
        }
      }
    }
    report.entries.push_back(std::move(e));
  }

  // Positivity preservation: products of pairing-nonnegative elements stay
  // nonnegative. Needs the algebra product.
  {
    CapabilityEntry e;
    e.name = "preserves_positivity";
    e.declared = fl.preserves_positivity.value_or(false);
    if (!sp.has_algebra() || !fl.preserves_positivity.has_value()) {
      e.status = CapabilityStatus::NotApplicable;
    } else {
      e.status = CapabilityStatus::Consistent;
      auto pairs = samples.pair_indices(samples.size() * 4, 3);
      for (std::size_t xi = 0; xi < nx && e.status == CapabilityStatus::Consistent; ++xi) {
        Vec x = cond(samples[xi]);
        Vec gx = g(x);
        double ngx = sp.norm(gx);
        for (auto [i, j] : pairs) {
          Vec y1 = cond(samples[i]), y2 = cond(samples[j]);
          double a = qp.eval(y1, gx), b = qp.eval(y2, gx);
          if (a < 0.0 || b < 0.0) continue;
          double p = qp.eval(sp.alg_mul(y1, y2), gx);
          double scale = tol_scale({qp.c_bar() * sp.norm(y1) * sp.norm(y2) * ngx});
          if (p < -tol * scale) {
            e.status = CapabilityStatus::Refuted;
            e.witness = QpWitness{"preserves_positivity", {x, y1, y2}, ""};
            break;
          }
        }
      }
    }
    report.entries.push_back(std::move(e));
  }

  // Square bounded below: [y^2, g(x)] >= k ||y||^2 ||g(x)||; the empirical
  // constant is the minimum of the ratio over the sampled pairs.
  {
    CapabilityEntry e;
    e.name = "square_bounded_below";
    e.declared = fl.square_bounded_below.has_value();
    if (!sp.has_algebra()) {
      e.status = CapabilityStatus::NotApplicable;
    } else {
      double kmin = std::numeric_limits<double>::infinity();
      for (std::size_t xi = 0; xi < nx; ++xi) {
        Vec x = cond(samples[xi]);
        Vec gx = g(x);
        double ngx = sp.norm(gx);
        for (const Vec& yv : samples.points()) {
          Vec y = cond(yv);
          double ny = sp.norm(y);
          double ratio = qp.eval(sp.alg_mul(y, y), gx) / (ny * ny * ngx);
          kmin = std::min(kmin, ratio);
        }
        // Axis probes drive the ratio to its sharp minimum.
        for (std::size_t ax = 0; ax < sp.dim(); ++ax) {
          Vec y = Vec::axis(sp.dim(), ax);
          double ratio = qp.eval(sp.alg_mul(y, y), gx) / ngx;
          kmin = std::min(kmin, ratio);
        }
      }
      e.empirical_k = kmin;
      if (fl.square_bounded_below.has_value()) {
        bool ok = kmin > 0.0 && *fl.square_bounded_below <= kmin + tol;
        e.status = ok ? CapabilityStatus::Consistent : CapabilityStatus::Refuted;
      } else {
        e.status = kmin > 0.0 ? CapabilityStatus::Consistent : CapabilityStatus::Refuted;
      }
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace qspec
