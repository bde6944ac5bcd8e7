#include "qspec/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

#include "qspec/errors.hpp"

namespace qspec {

IntervalUnion::IntervalUnion(double a, double b) {
  if (b > a) parts_.push_back({a, b});
}

IntervalUnion IntervalUnion::of(std::vector<std::pair<double, double>> parts) {
  IntervalUnion u;
  for (auto [a, b] : parts)
    if (b > a) u.parts_.push_back({a, b});
  u.normalize();
  return u;
}

void IntervalUnion::normalize() {
  std::sort(parts_.begin(), parts_.end());
  std::vector<std::pair<double, double>> merged;
  for (auto [a, b] : parts_) {
    // Half-open intervals merge whenever they touch: (a,b] u (b,c] = (a,c].
    if (!merged.empty() && a <= merged.back().second)
      merged.back().second = std::max(merged.back().second, b);
    else
      merged.push_back({a, b});
  }
  parts_ = std::move(merged);
}

bool IntervalUnion::contains(double lambda) const {
  for (auto [a, b] : parts_)
    if (a < lambda && lambda <= b) return true;
  return false;
}

bool IntervalUnion::subset_of(double m, double M) const {
  for (auto [a, b] : parts_)
    if (a < m || b > M) return false;
  return true;
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& o) const {
  std::vector<std::pair<double, double>> all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return of(std::move(all));
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& o) const {
  std::vector<std::pair<double, double>> out;
  for (auto [a, b] : parts_)
    for (auto [c, d] : o.parts_) {
      double lo = std::max(a, c), hi = std::min(b, d);
      if (hi > lo) out.push_back({lo, hi});
    }
  return of(std::move(out));
}

bool IntervalUnion::disjoint_from(const IntervalUnion& o) const {
  return intersect(o).is_empty();
}

bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
  return a.parts() == b.parts();
}

SpectralProjection SpectralProjection::profile(
    Space space, std::function<double(const Vec&)> psi, double m, double M) {
  SpectralProjection e(std::move(space), m, M);
  e.psi_ = std::move(psi);
  return e;
}

SpectralProjection SpectralProjection::raw(
    Space space, std::function<Vec(const IntervalUnion&, const Vec&)> set_function,
    double m, double M) {
  SpectralProjection e(std::move(space), m, M);
  e.raw_ = std::move(set_function);
  return e;
}

double SpectralProjection::psi(const Vec& x) const {
  if (!psi_) throw UnsupportedError("raw spectral projection has no psi field");
  return psi_(x);
}

Vec SpectralProjection::apply(const IntervalUnion& a, const Vec& x) const {
  if (!a.subset_of(m_, M_))
    throw DomainError("interval set leaves the projection bracket");
  space_.check_member(x);
  if (x.is_zero()) return space_.zero();
  if (psi_) return a.contains(psi_(x)) ? x : space_.zero();
  Vec out = raw_(a, x);
  if (!(out == x) && !out.is_zero())
    throw StructuralError("raw set function broke the projection shape");
  return out;
}

bool SpAxiomReport::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

const SpAxiomEntry* SpAxiomReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

SpAxiomReport sp_axiom_check(const SpectralProjection& e,
                             const SampleSet& samples,
                             std::uint64_t interval_fuzz_seed, int fuzz_rounds) {
  SpAxiomReport rep;
  double m = e.m(), M = e.M();

  SpAxiomEntry empty_full{"empty_full", true, std::nullopt, ""};
  SpAxiomEntry mult{"multiplicativity", true, std::nullopt, ""};
  SpAxiomEntry addv{"disjoint_additivity", true, std::nullopt, ""};
  SpAxiomEntry shape{"projection_shape", true, std::nullopt, ""};

  IntervalUnion full(m, M);
  for (const Vec& x : samples.points()) {
    if (!(e.apply(IntervalUnion::empty(), x).is_zero())) {
      empty_full.pass = false;
      empty_full.witness = x;
      empty_full.detail = "E{empty} != 0";
    }
    if (!(e.apply(full, x) == x)) {
      empty_full.pass = false;
      empty_full.witness = x;
      empty_full.detail = "E{(m,M]} != I";
    }
  }

  Rng rng(interval_fuzz_seed);
  for (int round = 0; round < fuzz_rounds; ++round) {
    double a1 = rng.uniform(m, M), b1 = rng.uniform(m, M);
    double a2 = rng.uniform(m, M), b2 = rng.uniform(m, M);
    if (a1 > b1) std::swap(a1, b1);
    if (a2 > b2) std::swap(a2, b2);
    IntervalUnion A(a1, b1), B(a2, b2);
    if (A.is_empty() || B.is_empty()) continue;
    IntervalUnion AB = A.intersect(B);
    for (const Vec& x : samples.points()) {
      Vec lhs = e.apply(AB, x);
      Vec r1 = e.apply(A, e.apply(B, x));
      Vec r2 = e.apply(B, e.apply(A, x));
      if (!(lhs == r1) || !(lhs == r2)) {
        mult.pass = false;
        mult.witness = x;
        mult.detail = "E{A n B} != E{A} o E{B}";
      }
      Vec ea = e.apply(A, x);
      if (!(ea == x) && !ea.is_zero()) {
        shape.pass = false;
        shape.witness = x;
      }
    }
    // Disjoint pairs from a split of A.
    if (b1 - a1 > 1e-12) {
      double mid = 0.5 * (a1 + b1);
      IntervalUnion L(a1, mid), R(mid, b1);
      for (const Vec& x : samples.points()) {
        Vec sum = e.apply(L, x) + e.apply(R, x);
        if (!(e.apply(A, x) == sum)) {
          addv.pass = false;
          addv.witness = x;
          addv.detail = "E{L u R} != E{L} + E{R}";
        }
      }
    }
  }
  rep.entries = {empty_full, mult, addv, shape};
  return rep;
}

namespace {

double cell_rep_for(const Partition& partition, double value, BinChoice choice) {
  int j = partition.cell_of(value);
  return cell_representative(partition, j, choice);
}

}  // namespace

NlOperator sp_integral(const SpectralProjection& e, const FuncSpec& fn,
                       const Partition& partition, BinChoice choice) {
  const Space sp = e.space();
  if (std::fabs(partition.m() - e.m()) > 1e-12 ||
      std::fabs(partition.M() - e.M()) > 1e-12)
    throw BracketError("partition does not span the projection bracket");
  auto eval = fn.eval;
  if (e.is_profile()) {
    return NlOperator::blackbox(
        sp,
        [e, eval, partition, choice](const Vec& x) {
          return eval(cell_rep_for(partition, e.psi(x), choice)) * x;
        },
        sp.zero(), "int_" + fn.name + "_dE");
  }
  return NlOperator::blackbox(
      sp,
      [e, eval, partition, choice](const Vec& x) {
        Vec acc = Vec::zeros(x.dim());
        for (int j = 1; j <= partition.cells(); ++j) {
          IntervalUnion cell(partition.knots()[j - 1], partition.knots()[j]);
          acc += eval(cell_representative(partition, j, choice)) *
                 e.apply(cell, x);
        }
        return acc;
      },
      sp.zero(), "int_" + fn.name + "_dE");
}

NlOperator sp_weighted_integral(const SpectralProjection& e, const NlOperator& r,
                                const FuncSpec& fn, const Partition& partition,
                                BinChoice choice) {
  const Space sp = e.space();
  if (!r.vanishes_at_zero())
    throw PreconditionError("the weight operator must vanish at the origin");
  auto eval = fn.eval;
  if (e.is_profile()) {
    return NlOperator::blackbox(
        sp,
        [e, eval, partition, choice, r](const Vec& x) {
          return eval(cell_rep_for(partition, e.psi(x), choice)) * r(x);
        },
        sp.zero(), "int_" + fn.name + "_d(roE)");
  }
  return NlOperator::blackbox(
      sp,
      [e, eval, partition, choice, r](const Vec& x) {
        Vec acc = Vec::zeros(x.dim());
        for (int j = 1; j <= partition.cells(); ++j) {
          IntervalUnion cell(partition.knots()[j - 1], partition.knots()[j]);
          acc += eval(cell_representative(partition, j, choice)) *
                 r(e.apply(cell, x));
        }
        return acc;
      },
      sp.zero(), "int_" + fn.name + "_d(roE)");
}

NlOperator sp_class_combine(const SpectralProjection& e, double alpha,
                            const FuncSpec& f1, const FuncSpec& f2,
                            const Partition& partition, BinChoice choice) {
  NlOperator a = sp_integral(e, f1, partition, choice);
  NlOperator b = sp_integral(e, f2, partition, choice);
  return alpha * a + b;
}

SpectralOperatorClass::SpectralOperatorClass(SpectralProjection e,
                                             Partition partition,
                                             BinChoice choice)
    : e_(std::move(e)), partition_(std::move(partition)), choice_(choice) {}

const NlOperator& SpectralOperatorClass::member(const FuncSpec& f) {
  for (const auto& [name, op] : members_)
    if (name == f.name) return op;
  members_.emplace_back(f.name, sp_integral(e_, f, partition_, choice_));
  return members_.back().second;
}

NlOperator SpectralOperatorClass::combine(double alpha, const FuncSpec& f1,
                                          const FuncSpec& f2) {
  return alpha * member(f1) + member(f2);
}

const NondegeneracyReport& SpectralOperatorClass::nondegeneracy(
    const std::vector<Vec>& probes, int grid) {
  if (!nondegeneracy_)
    nondegeneracy_ = sp_nondegeneracy_check(e_, probes, grid);
  return *nondegeneracy_;
}

NondegeneracyReport sp_nondegeneracy_check(const SpectralProjection& e,
                                           const std::vector<Vec>& probes,
                                           int grid) {
  NondegeneracyReport rep;
  double m = e.m(), M = e.M();
  rep.gaps_probed = static_cast<std::size_t>(grid);
  for (int i = 0; i < grid; ++i) {
    double lo = m + (M - m) * static_cast<double>(i) / grid;
    double hi = m + (M - m) * static_cast<double>(i + 1) / grid;
    IntervalUnion gap(lo, hi);
    bool witnessed = false;
    for (const Vec& x : probes) {
      if (x.is_zero()) continue;
      if (!e.apply(gap, x).is_zero()) {
        witnessed = true;
        break;
      }
    }
    if (witnessed)
      ++rep.gaps_witnessed;
    else if (!rep.unwitnessed)
      rep.unwitnessed = {lo, hi};
  }
  rep.nondegenerate = rep.gaps_witnessed == rep.gaps_probed;
  return rep;
}

}  // namespace qspec
