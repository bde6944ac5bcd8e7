#include "qspec/operator_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qspec/errors.hpp"

namespace qspec {

struct NlOperator::Impl {
  Space in;
  Space out;
  MapFn map;
  Vec at_zero;
  std::string name;
  std::optional<ProfileInfo> profile;
  std::optional<LinearInfo> linear;
  std::shared_ptr<const NlOperator> shift_base;
  std::optional<Vec> shift_s0;
  bool star_unit = false;
  bool zero_op = false;

  Impl(Space i, Space o) : in(std::move(i)), out(std::move(o)) {}
};

NlOperator NlOperator::blackbox(Space space, MapFn map, Vec value_at_zero,
                                std::string name) {
  return blackbox_between(space, space, std::move(map), std::move(value_at_zero),
                          std::move(name));
}

NlOperator NlOperator::blackbox_between(Space in, Space out, MapFn map,
                                        Vec value_at_zero, std::string name) {
  auto impl = std::make_shared<Impl>(std::move(in), std::move(out));
  impl->map = std::move(map);
  impl->at_zero = std::move(value_at_zero);
  impl->name = std::move(name);
  impl->out.check_member(impl->at_zero);
  return NlOperator(std::move(impl));
}

NlOperator NlOperator::profile(Space space, std::function<double(const Vec&)> phi,
                               Carrier carrier,
                               std::optional<std::pair<double, double>> range,
                               std::string name) {
  if (carrier == Carrier::GammaCanonical && !space.has_algebra())
    throw UnsupportedError("canonical carrier needs the algebra unit");
  auto impl = std::make_shared<Impl>(space, space);
  ProfileInfo info;
  info.phi = phi;
  info.carrier = carrier;
  info.range = range;
  impl->profile = std::move(info);
  impl->at_zero = space.zero();
  impl->name = std::move(name);
  if (carrier == Carrier::GammaCanonical) {
    impl->map = [space, phi](const Vec& x) {
      return (phi(x) * space.norm(x)) * space.unit();
    };
  } else {
    impl->map = [phi](const Vec& x) { return phi(x) * x; };
  }
  return NlOperator(std::move(impl));
}

NlOperator NlOperator::linear(Space in, Space out,
                              std::vector<std::vector<double>> matrix,
                              std::string name) {
  if (matrix.size() != out.dim())
    throw StructuralError("matrix row count must match the output dimension");
  for (const auto& row : matrix)
    if (row.size() != in.dim())
      throw StructuralError("matrix column count must match the input dimension");
  auto impl = std::make_shared<Impl>(in, out);
  impl->linear = LinearInfo{matrix};
  impl->at_zero = out.zero();
  impl->name = std::move(name);
  impl->map = [matrix, out](const Vec& x) {
    Vec y = out.zero();
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < matrix[i].size(); ++j) s += matrix[i][j] * x[j];
      y[i] = s;
    }
    return y;
  };
  return NlOperator(std::move(impl));
}

NlOperator NlOperator::zero(Space space) {
  auto z = profile(
      space, [](const Vec&) { return 0.0; }, Carrier::Identity,
      std::make_pair(0.0, 0.0), "0");
  auto impl = std::make_shared<Impl>(*z.impl_);
  impl->zero_op = true;
  return NlOperator(std::move(impl));
}

NlOperator NlOperator::identity(Space space) {
  return profile(
      space, [](const Vec&) { return 1.0; }, Carrier::Identity,
      std::make_pair(1.0, 1.0), "I");
}

NlOperator NlOperator::star_unit(Space space) {
  if (!space.has_algebra())
    throw UnsupportedError("the star unit needs the algebra unit");
  auto impl = std::make_shared<Impl>(space, space);
  impl->at_zero = space.unit();
  impl->name = "e";
  impl->star_unit = true;
  impl->map = [space](const Vec& x) { return space.norm(x) * space.unit(); };
  return NlOperator(std::move(impl));
}

NlOperator NlOperator::shifted(NlOperator base, Vec s0) {
  const Space& sp = base.space_in();
  if (!sp.has_algebra())
    throw UnsupportedError("shifted operators need the algebra unit");
  if (!base.vanishes_at_zero())
    throw PreconditionError("shift base must vanish at the origin");
  sp.check_member(s0);
  auto impl = std::make_shared<Impl>(sp, sp);
  impl->at_zero = s0;
  impl->name = base.name() + "+shift";
  impl->shift_base = std::make_shared<const NlOperator>(base);
  impl->shift_s0 = s0;
  impl->map = [base, s0, sp](const Vec& x) {
    return base(x) + sp.norm(x) * s0;
  };
  return NlOperator(std::move(impl));
}

Vec NlOperator::operator()(const Vec& x) const {
  impl_->in.check_member(x);
  if (x.is_zero()) return impl_->at_zero;
  return impl_->map(x);
}

const Space& NlOperator::space_in() const { return impl_->in; }
const Space& NlOperator::space_out() const { return impl_->out; }
const Vec& NlOperator::at_zero() const { return impl_->at_zero; }
const std::string& NlOperator::name() const { return impl_->name; }

const ProfileInfo* NlOperator::profile_info() const {
  return impl_->profile ? &*impl_->profile : nullptr;
}
const LinearInfo* NlOperator::linear_info() const {
  return impl_->linear ? &*impl_->linear : nullptr;
}
const NlOperator* NlOperator::shift_base() const {
  return impl_->shift_base ? impl_->shift_base.get() : nullptr;
}
const Vec* NlOperator::shift_offset() const {
  return impl_->shift_s0 ? &*impl_->shift_s0 : nullptr;
}
bool NlOperator::is_star_unit() const { return impl_->star_unit; }
bool NlOperator::is_zero_op() const { return impl_->zero_op; }

namespace {

void require_same_space(const NlOperator& a, const NlOperator& b) {
  if (a.space_in() != b.space_in() || a.space_out() != b.space_out())
    throw StructuralError("operator spaces do not match");
}

}  // namespace

NlOperator operator+(const NlOperator& a, const NlOperator& b) {
  require_same_space(a, b);
  const ProfileInfo* pa = a.profile_info();
  const ProfileInfo* pb = b.profile_info();
  if (pa && pb && pa->carrier == pb->carrier) {
    auto fa = pa->phi;
    auto fb = pb->phi;
    std::optional<std::pair<double, double>> range;
    if (pa->range && pb->range) {
      // Exact only when one side is constant; the interval sum is otherwise
      // just an enclosure and would corrupt exact norm estimates.
      if (pa->range->first == pa->range->second)
        range = {pa->range->first + pb->range->first,
                 pa->range->first + pb->range->second};
      else if (pb->range->first == pb->range->second)
        range = {pa->range->first + pb->range->first,
                 pa->range->second + pb->range->first};
    }
    return NlOperator::profile(
        a.space_in(), [fa, fb](const Vec& x) { return fa(x) + fb(x); },
        pa->carrier, range, a.name() + "+" + b.name());
  }
  return NlOperator::blackbox_between(
      a.space_in(), a.space_out(),
      [a, b](const Vec& x) { return a(x) + b(x); }, a.at_zero() + b.at_zero(),
      a.name() + "+" + b.name());
}

NlOperator operator-(const NlOperator& a, const NlOperator& b) {
  return a + (-1.0 * b);
}

NlOperator operator*(double s, const NlOperator& a) {
  if (const ProfileInfo* p = a.profile_info()) {
    auto f = p->phi;
    std::optional<std::pair<double, double>> range;
    if (p->range) {
      double lo = s * p->range->first, hi = s * p->range->second;
      range = {std::min(lo, hi), std::max(lo, hi)};
    }
    return NlOperator::profile(
        a.space_in(), [f, s](const Vec& x) { return s * f(x); }, p->carrier,
        range, "scaled " + a.name());
  }
  return NlOperator::blackbox_between(
      a.space_in(), a.space_out(), [a, s](const Vec& x) { return s * a(x); },
      s * a.at_zero(), "scaled " + a.name());
}

NlOperator pointwise_mul(const NlOperator& a, const NlOperator& b) {
  require_same_space(a, b);
  const Space sp = a.space_in();
  if (!sp.has_algebra())
    throw UnsupportedError("pointwise operator product needs the algebra");
  return NlOperator::blackbox(
      sp, [a, b, sp](const Vec& x) { return sp.alg_mul(a(x), b(x)); },
      sp.alg_mul(a.at_zero(), b.at_zero()), a.name() + "." + b.name());
}

NlOperator compose(const NlOperator& b, const NlOperator& a) {
  if (a.space_out() != b.space_in())
    throw StructuralError("composition spaces do not chain");
  return NlOperator::blackbox_between(
      a.space_in(), b.space_out(), [a, b](const Vec& x) { return b(a(x)); },
      b(a.at_zero()), b.name() + "o" + a.name());
}

NlOperator star_mul(const NlOperator& f1, const NlOperator& f2) {
  require_same_space(f1, f2);
  const Space sp = f1.space_in();
  if (!sp.has_algebra())
    throw UnsupportedError("star multiplication needs the algebra");
  // Unit law holds exactly, by construction.
  if (f1.is_star_unit()) return f2;
  if (f2.is_star_unit()) return f1;
  if (f1.is_zero_op() || f2.is_zero_op()) return NlOperator::zero(sp);
  return NlOperator::blackbox(
      sp,
      [f1, f2, sp](const Vec& x) {
        return (1.0 / sp.norm(x)) * sp.alg_mul(f1(x), f2(x));
      },
      sp.alg_mul(f1.at_zero(), f2.at_zero()), f1.name() + "*" + f2.name());
}

double sampled_ratio_norm(const NlOperator& f, const SampleSet& samples) {
  const Space& in = f.space_in();
  const Space& out = f.space_out();
  double best = out.norm(f.at_zero());
  for (const Vec& x : samples.points())
    best = std::max(best, out.norm(f(x)) / in.norm(x));
  return best;
}

double sampled_op_distance(const NlOperator& f, const NlOperator& g,
                           const SampleSet& samples) {
  const Space& in = f.space_in();
  const Space& out = f.space_out();
  double best = out.norm(f.at_zero() - g.at_zero());
  for (const Vec& x : samples.points())
    best = std::max(best, out.norm(f(x) - g(x)) / in.norm(x));
  return best;
}

namespace {

// Exact induced norm for the closed-form cases; nullopt otherwise.
std::optional<double> exact_linear_norm(const LinearInfo& lin, const Space& in,
                                        const Space& out) {
  const auto& a = lin.matrix;
  std::size_t rows = a.size(), cols = in.dim();
  auto out_norm = [&](const Vec& v) { return out.norm(v); };
  if (in.norm_kind() == NormKind::One) {
    // Columns scaled by the input weights.
    double best = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      Vec col = Vec::zeros(rows);
      for (std::size_t i = 0; i < rows; ++i) col[i] = a[i][j];
      best = std::max(best, out_norm(col) / in.weights()[j]);
    }
    return best;
  }
  if (in.norm_kind() == NormKind::Sup) {
    if (cols > 16) return std::nullopt;
    // Maximum over sign vertices of the unit sup ball.
    double best = 0.0;
    for (std::size_t mask = 0; mask < (1u << cols); ++mask) {
      Vec v = Vec::zeros(rows);
      for (std::size_t i = 0; i < rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j)
          s += a[i][j] * ((mask >> j) & 1 ? 1.0 : -1.0);
        v[i] = s;
      }
      best = std::max(best, out_norm(v));
    }
    return best;
  }
  if (in.norm_kind() == NormKind::Two) {
    if (rows == 1 || out.norm_kind() == NormKind::Sup) {
      // sup norm out: the max row two-norm attains the supremum.
      double best = 0.0;
      for (std::size_t i = 0; i < rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j) s += a[i][j] * a[i][j];
        best = std::max(best, std::sqrt(s));
      }
      return best;
    }
  }
  return std::nullopt;
}

bool scalar_multiple_of_unit(const Vec& v, double& c) {
  c = v[0];
  for (double x : v.c)
    if (x != c) return false;
  return true;
}

// Detects ratio blow-up along shrinking or growing magnitudes.
bool diverges(const NlOperator& f, const SampleSet& samples) {
  const Space& in = f.space_in();
  const Space& out = f.space_out();
  std::size_t dirs = std::min<std::size_t>(samples.size(), 6);
  for (std::size_t d = 0; d < dirs; ++d) {
    Vec dir = (1.0 / in.norm(samples[d])) * samples[d];
    for (double sign : {-1.0, 1.0}) {
      double prev = 0.0;
      bool monotone = true;
      double last = 0.0;
      for (int t = 0; t <= 6; ++t) {
        double mag = std::pow(10.0, sign * 2.0 * t);
        Vec x = mag * dir;
        double ratio = out.norm(f(x)) / in.norm(x);
        if (t > 0 && ratio < prev * 1.5) monotone = false;
        prev = ratio;
        last = ratio;
      }
      if (monotone && last > 1e9) return true;
    }
  }
  return false;
}

}  // namespace

NormEstimate op_norm(const NlOperator& f, const SampleSet& samples) {
  const Space& in = f.space_in();
  const Space& out = f.space_out();
  NormEstimate est;
  double zero_part = out.norm(f.at_zero());

  if (f.is_star_unit()) {
    est.value = 1.0;
    est.exact = true;
    est.witness = samples.size() ? std::optional<Vec>(samples[0]) : std::nullopt;
    return est;
  }
  if (const ProfileInfo* p = f.profile_info(); p && p->range) {
    est.value = std::max({std::fabs(p->range->first), std::fabs(p->range->second),
                          zero_part});
    est.exact = true;
    double best = -1.0;
    for (const Vec& x : samples.points()) {
      double v = std::fabs(p->phi(x));
      if (v > best) {
        best = v;
        est.witness = x;
      }
    }
    return est;
  }
  if (const LinearInfo* lin = f.linear_info()) {
    if (auto v = exact_linear_norm(*lin, in, out)) {
      est.value = std::max(*v, zero_part);
      est.exact = true;
      return est;
    }
  }
  if (const NlOperator* base = f.shift_base()) {
    const Vec& s0 = *f.shift_offset();
    double c;
    if (base->is_zero_op()) {
      est.value = out.norm(s0);
      est.exact = true;
      return est;
    }
    const ProfileInfo* bp = base->profile_info();
    if (bp && bp->range && bp->carrier == Carrier::GammaCanonical &&
        scalar_multiple_of_unit(s0, c)) {
      double lo = bp->range->first + c, hi = bp->range->second + c;
      est.value = std::max({std::fabs(lo), std::fabs(hi), std::fabs(c)});
      est.exact = true;
      return est;
    }
  }

  // Sampled lower bound with divergence scans.
  if (diverges(f, samples)) {
    est.infinite = true;
    est.value = std::numeric_limits<double>::infinity();
    return est;
  }
  double best = zero_part;
  for (const Vec& x : samples.points()) {
    double r = out.norm(f(x)) / in.norm(x);
    if (r > best) {
      best = r;
      est.witness = x;
    }
  }
  est.value = best;
  est.exact = false;
  return est;
}

ComposeReport compose_bound_check(const NlOperator& f1, const NlOperator& f2,
                                  const SampleSet& samples) {
  if (!f1.vanishes_at_zero() || !f2.vanishes_at_zero())
    throw PreconditionError(
        "composition bound needs F1(0) = F2(0) = 0; the bound fails for "
        "operators with an offset at the origin");
  ComposeReport rep;
  NormEstimate p1 = op_norm(f1, samples);
  NormEstimate p2 = op_norm(f2, samples);
  rep.norm_product = p1.value * p2.value;
  rep.product_exact = p1.exact && p2.exact;

  rep.pointwise_ok = true;
  rep.worst_margin = 0.0;
  const Space& in = f1.space_in();
  const Space& mid = f1.space_out();
  for (const Vec& x : samples.points()) {
    double lhs = mid.norm(f1(x));
    double rhs = p1.value * in.norm(x);
    double margin = (rhs - lhs) / tol_scale({rhs});
    rep.worst_margin = std::min(rep.worst_margin, margin);
    if (margin < -1e-12) rep.pointwise_ok = false;
  }
  NlOperator comp = compose(f2, f1);
  rep.composed_sampled_norm = sampled_ratio_norm(comp, samples);
  rep.bound_ok = rep.composed_sampled_norm <= rep.norm_product * (1.0 + 1e-12) + 1e-15;
  return rep;
}

namespace {

// Norm-one linear functional attaining |F_x(x)| = ||x||, per norm kind.
std::vector<double> attaining_row(const Space& space, const Vec& x) {
  std::vector<double> row(space.dim(), 0.0);
  switch (space.norm_kind()) {
    case NormKind::Sup: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < space.dim(); ++i)
        if (std::fabs(x[i]) > std::fabs(x[best])) best = i;
      row[best] = x[best] >= 0.0 ? 1.0 : -1.0;
      break;
    }
    case NormKind::One:
      for (std::size_t i = 0; i < space.dim(); ++i)
        row[i] = (x[i] >= 0.0 ? 1.0 : -1.0) * space.weights()[i];
      break;
    case NormKind::Two: {
      double n = space.norm(x);
      for (std::size_t i = 0; i < space.dim(); ++i) row[i] = x[i] / n;
      break;
    }
  }
  return row;
}

}  // namespace

DualityReport dual_pairing(const Space& space, const Vec& x,
                           const std::vector<NlOperator>& probes,
                           const SampleSet& samples) {
  if (x.is_zero()) throw PreconditionError("duality needs x != 0");
  space.check_member(x);
  DualityReport rep;
  double nx = space.norm(x);
  for (const NlOperator& f : probes) {
    DualityReport::ProbeEntry entry;
    entry.name = f.name();
    entry.norm = op_norm(f, samples);
    if (entry.norm.infinite)
      throw PreconditionError("probe '" + f.name() + "' has no finite norm");
    Vec fx = f(x);
    entry.value_at_x = fx[0];
    double rhs = entry.norm.value * nx;
    entry.margin = (rhs - std::fabs(entry.value_at_x)) / tol_scale({rhs});
    entry.inequality_ok = entry.margin >= -1e-12;
    rep.probes.push_back(std::move(entry));
  }
  Space scalar_out = Space::scalar();
  NlOperator witness = NlOperator::linear(space, scalar_out,
                                          {attaining_row(space, x)}, "F_x");
  rep.witness_value = witness(x)[0];
  NormEstimate wn = op_norm(witness, samples);
  rep.witness_norm = wn.value;
  rep.sup_attained = std::fabs(std::fabs(rep.witness_value) - nx) <=
                         1e-12 * tol_scale({nx}) &&
                     std::fabs(rep.witness_norm - 1.0) <= 1e-12;
  return rep;
}

NlOperator represent_form(
    const std::function<double(const Vec&, const Vec&)>& h,
    const QuasiProduct& qp, const SampleSet& basis_probe, double tol,
    double c_bar_hint) {
  if (!qp.flags().norm_compat)
    throw UnsupportedError(
        std::string("form representation needs the diagonal witness d with "
                    "[y,y] = d(y)||y||^2; ") +
        to_string(qp.kind()) + " has none");
  if (qp.kind() != QpKind::ScalarProduct && qp.kind() != QpKind::ScaledInner)
    throw UnsupportedError(
        "form representation is solvable in closed form only for the "
        "inner-product backed pairings");
  const Space sp = qp.space();
  const std::size_t d = sp.dim();

  // Hypothesis (a): |h(x,y)| <= c ||x|| ||y|| over the probes.
  for (const Vec& x : basis_probe.points()) {
    for (std::size_t j = 0; j < d; ++j) {
      Vec y = Vec::axis(d, j);
      double v = h(x, y);
      if (std::fabs(v) > c_bar_hint * sp.norm(x) * sp.norm(y))
        throw HypothesisError("form is unbounded against ||x|| ||y||");
    }
  }

  auto solve = [qp, h, sp, d](const Vec& x, double alpha) {
    Vec z = Vec::zeros(d);
    for (std::size_t j = 0; j < d; ++j) {
      Vec y = Vec::axis(d, j, alpha);
      // [z, y] = c(y) alpha z_j for the inner-product backed pairings.
      z[j] = h(x, y) / (qp.scale_c(y) * alpha);
    }
    return z;
  };

  // Residual and uniqueness sweep over the probe set.
  std::size_t nx = std::min<std::size_t>(basis_probe.size(), 48);
  for (std::size_t xi = 0; xi < nx; ++xi) {
    const Vec& x = basis_probe[xi];
    Vec z = solve(x, 1.0);
    Vec z2 = solve(x, 0.7);
    for (std::size_t j = 0; j < d; ++j)
      if (std::fabs(z[j] - z2[j]) > tol * tol_scale({z[j], z2[j]}))
        throw NotRepresentableError(
            "basis re-solve disagrees: the form is not linear in y");
    std::size_t ny = std::min<std::size_t>(basis_probe.size(), 32);
    for (std::size_t yi = 0; yi < ny; ++yi) {
      const Vec& y = basis_probe[yi];
      double resid = std::fabs(h(x, y) - qp.eval(z, y));
      double scale = tol_scale({h(x, y), qp.c_bar() * sp.norm(z) * sp.norm(y)});
      if (resid > tol * scale)
        throw NotRepresentableError(
            "representation residual above tolerance at " + to_string(x));
    }
  }

  return NlOperator::blackbox(
      sp, [solve](const Vec& x) { return solve(x, 1.0); }, sp.zero(),
      "represented_form");
}

}  // namespace qspec
