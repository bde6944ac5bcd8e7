#include <cmath>

#include "doctest.h"
#include "qspec/definite.hpp"
#include "qspec/errors.hpp"
#include "qspec/operator_space.hpp"
#include "qspec/quasi_product.hpp"

using namespace qspec;

namespace {

QuasiProduct make_integral_pair() {
  return QuasiProduct::integral_pair(Space::weighted_one({1.0, 1.0, 1.0, 1.0}));
}

NlOperator canonical_g(const Space& sp) {
  return NlOperator::profile(
      sp, [](const Vec&) { return 1.0; }, Carrier::GammaCanonical,
      std::make_pair(1.0, 1.0), "g");
}

}  // namespace

TEST_SUITE_BEGIN("quasi_product");

TEST_CASE("pinned evaluations") {
  QuasiProduct ip = make_integral_pair();
  CHECK(ip.eval(Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}) == 1.0);
  // Degenerate diagonal: the pairing has a kernel.
  Vec x{1, -1, 0, 0};
  CHECK(ip.eval(x, x) == 0.0);
  CHECK(!x.is_zero());

  QuasiProduct si = QuasiProduct::scaled_inner(Space::euclidean(4), 1.0);
  Vec e1 = Vec::axis(4, 0);
  CHECK(si.eval(e1, e1) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(si.c_bar() == doctest::Approx(2.0));

  QuasiProduct sp = QuasiProduct::scalar_product(Space::scalar());
  CHECK(sp.eval(Vec{-2.0}, Vec{3.0}) == -6.0);
}

TEST_CASE("integral_sup domain restriction") {
  QuasiProduct is = QuasiProduct::integral_sup(Space::sup_plain(2, {1.0, 1.0}));
  Vec in{1.0, 0.5};
  Vec out{-1.0, 0.5};  // weighted sum -0.5
  CHECK(is.in_domain(in));
  CHECK(!is.in_domain(out));
  CHECK_THROWS_AS(is.eval(out, in), DomainError);
  CHECK(is.to_domain(out) == Vec{1.0, -0.5});
  // (sum x h)(max y): in-domain values.
  CHECK(is.eval(Vec{1.0, 0.0}, Vec{2.0, 1.0}) == 2.0);
  CHECK(is.eval(Vec{2.0, 1.0}, Vec{1.0, 0.0}) == 3.0);
}

TEST_CASE("axioms pass for every shipped pairing") {
  struct Fixture {
    QuasiProduct qp;
    SampleSet samples;
  };
  std::vector<Fixture> fixtures;
  {
    Space s = Space::scalar();
    fixtures.push_back({QuasiProduct::scalar_product(s),
                        SampleSet::make(s, {SampleKind::Mixed, 200}, 21)});
  }
  {
    Space s = Space::euclidean(4);
    fixtures.push_back({QuasiProduct::scaled_inner(s, 1.0),
                        SampleSet::make(s, {SampleKind::Mixed, 200}, 22)});
  }
  {
    Space s = Space::weighted_one({0.5, 0.5, 1.0, 2.0});
    fixtures.push_back({QuasiProduct::integral_pair(s),
                        SampleSet::make(s, {SampleKind::Mixed, 200}, 23)});
  }
  {
    Space s = Space::sup_plain(3, {1.0, 0.5, 0.25});
    fixtures.push_back({QuasiProduct::integral_sup(s),
                        SampleSet::make(s, {SampleKind::Mixed, 200}, 24)});
  }
  {
    Space s = Space::pointwise(2);
    fixtures.push_back({QuasiProduct::weighted_sum(s, {0.5, 0.5}),
                        SampleSet::make(s, {SampleKind::Mixed, 200}, 25)});
  }
  for (const auto& fx : fixtures) {
    AxiomReport rep = qp_check_axioms(fx.qp, fx.samples, 1e-9, 2000);
    INFO("pairing ", to_string(fx.qp.kind()));
    CHECK(rep.all_pass());
    CHECK(rep.find("diagonal_nonneg")->margin >= -1e-9);
    CHECK(rep.find("bound")->margin <= 1e-9);
    CHECK(rep.find("left_linearity")->margin <= 1e-12);
  }
}

TEST_CASE("integral_sup symmetry refutation is recorded and verified") {
  Space s = Space::sup_plain(2, {1.0, 1.0});
  QuasiProduct is = QuasiProduct::integral_sup(s);
  CHECK(!is.flags().symmetric);
  CHECK(!is.flags().quasi_symmetric);
  SampleSet samples = SampleSet::make(s, {SampleKind::Mixed, 100}, 5);
  AxiomReport rep = qp_check_axioms(is, samples, 1e-9, 500);
  const AxiomEntry* sym = rep.find("symmetric_refuted");
  REQUIRE(sym != nullptr);
  CHECK(sym->pass);  // the stored witness really violates symmetry
  const AxiomEntry* q = rep.find("quasi_symmetric_refuted");
  REQUIRE(q != nullptr);
  CHECK(q->pass);  // ratio collapse witnessed
}

TEST_CASE("scaled_inner is quasi-symmetric but not symmetric") {
  Space s = Space::euclidean(3);
  QuasiProduct si = QuasiProduct::scaled_inner(s, 0.5);
  Vec x = Vec::axis(3, 0);
  Vec y = 2.0 * Vec::axis(3, 0);
  CHECK(si.eval(x, y) != si.eval(y, x));
  double q = si.eval(x, y) / si.eval(y, x);
  CHECK(q == doctest::Approx(si.scale_c(y) / si.scale_c(x)));
  CHECK(q > 0.0);

  // The axiom report carries both verdicts: symmetry refuted by the stored
  // witness, quasi-symmetry confirmed on sampled pairs.
  SampleSet samples = SampleSet::make(s, {SampleKind::Mixed, 200}, 6);
  AxiomReport rep = qp_check_axioms(si, samples, 1e-9, 1000);
  const AxiomEntry* sym = rep.find("symmetric_refuted");
  REQUIRE(sym);
  CHECK(sym->pass);
  const AxiomEntry* qs = rep.find("quasi_symmetric");
  REQUIRE(qs);
  CHECK(qs->pass);
  CHECK(rep.all_pass());
}

TEST_CASE("zero argument pairs to zero") {
  QuasiProduct ip = make_integral_pair();
  Vec z = Vec::zeros(4);
  CHECK(ip.eval(z, Vec{1, 2, 3, 4}) == 0.0);
}

TEST_CASE("capabilities: scalar context certifies all three") {
  Space s = Space::scalar();
  QuasiProduct qp = QuasiProduct::scalar_product(s);
  SampleSet samples = SampleSet::make(s, {SampleKind::Mixed, 300}, 31);
  CapabilityReport rep = qp_check_capabilities(qp, canonical_g(s), samples);
  CHECK(rep.consistent_with_declarations());
  const CapabilityEntry* lid = rep.find("left_integral_domain");
  REQUIRE(lid);
  CHECK(lid->status == CapabilityStatus::Consistent);
  const CapabilityEntry* pp = rep.find("preserves_positivity");
  REQUIRE(pp);
  CHECK(pp->status == CapabilityStatus::Consistent);
  const CapabilityEntry* sbb = rep.find("square_bounded_below");
  REQUIRE(sbb);
  CHECK(sbb->status == CapabilityStatus::Consistent);
  CHECK(std::fabs(sbb->empirical_k - 1.0) <= 1e-12);
}

TEST_CASE("capabilities: weighted_sum on dim 2 is refuted with witnesses") {
  Space s = Space::pointwise(2);
  QuasiProduct qp = QuasiProduct::weighted_sum(s, {0.5, 0.5});
  SampleSet samples = SampleSet::make(s, {SampleKind::Mixed, 500}, 33);
  CapabilityReport rep = qp_check_capabilities(qp, canonical_g(s), samples);
  const CapabilityEntry* lid = rep.find("left_integral_domain");
  REQUIRE(lid);
  CHECK(lid->status == CapabilityStatus::Refuted);
  CHECK(lid->witness.has_value());
  const CapabilityEntry* pp = rep.find("preserves_positivity");
  REQUIRE(pp);
  CHECK(pp->status == CapabilityStatus::Refuted);
  CHECK(pp->witness.has_value());
  // Declared flags are false, so refutation is consistent.
  CHECK(rep.consistent_with_declarations());
  const CapabilityEntry* sbb = rep.find("square_bounded_below");
  REQUIRE(sbb);
  CHECK(sbb->status == CapabilityStatus::Consistent);
  CHECK(sbb->empirical_k >= 0.5 - 1e-12);
  CHECK(sbb->empirical_k <= 1.0 + 1e-12);
}

TEST_CASE("persisted witnesses refute the false flags") {
  Space s = Space::pointwise(3);
  QuasiProduct qp = QuasiProduct::weighted_sum(s, {0.2, 0.3, 0.5});
  NlOperator g = canonical_g(s);
  bool saw_lid = false, saw_pp = false;
  for (const QpWitness& w : qp.witnesses()) {
    if (w.flag == "left_integral_domain") {
      REQUIRE(w.vectors.size() == 2);
      Vec gx = g(w.vectors[0]);
      CHECK(!w.vectors[1].is_zero());
      CHECK(qp.eval(w.vectors[1], gx) == 0.0);
      saw_lid = true;
    }
    if (w.flag == "preserves_positivity") {
      REQUIRE(w.vectors.size() == 3);
      Vec gx = g(w.vectors[0]);
      CHECK(qp.eval(w.vectors[1], gx) >= 0.0);
      CHECK(qp.eval(w.vectors[2], gx) >= 0.0);
      CHECK(qp.eval(s.alg_mul(w.vectors[1], w.vectors[2]), gx) < 0.0);
      saw_pp = true;
    }
  }
  CHECK(saw_lid);
  CHECK(saw_pp);
}

TEST_CASE("capabilities: identity g breaks positivity preservation") {
  Space s = Space::scalar();
  QuasiProduct qp = QuasiProduct::scalar_product(s);
  // With g = I the pairing sees signed values: y1 = y2 = -1 at x = -1 has
  // [y_i, g(x)] = 1 >= 0 but [y1 y2, g(x)] = -1.
  NlOperator ident = NlOperator::identity(s);
  SampleSet samples = SampleSet::make(s, {SampleKind::Mixed, 400}, 35);
  CapabilityReport rep = qp_check_capabilities(qp, ident, samples);
  const CapabilityEntry* pp = rep.find("preserves_positivity");
  REQUIRE(pp);
  CHECK(pp->status == CapabilityStatus::Refuted);

  // The pinned counterexample point itself.
  Vec x{-1.0}, y{-1.0};
  Vec gx = ident(x);
  CHECK(qp.eval(y, gx) == 1.0);
  CHECK(qp.eval(s.alg_mul(y, y), gx) == -1.0);
}

TEST_CASE("capability check validates g first") {
  Space s = Space::scalar();
  QuasiProduct qp = QuasiProduct::scalar_product(s);
  NlOperator vanishing = NlOperator::blackbox(
      s, [s](const Vec&) { return s.zero(); }, s.zero(), "bad_g");
  SampleSet samples = SampleSet::make(s, {SampleKind::Mixed, 10}, 1);
  CHECK_THROWS_AS(qp_check_capabilities(qp, vanishing, samples),
                  PreconditionError);
}

TEST_CASE("joint continuity proxy") {
  Space s = Space::euclidean(3);
  QuasiProduct si = QuasiProduct::scaled_inner(s, 1.0);
  SampleSet samples = SampleSet::make(s, {SampleKind::Mixed, 100}, 41);
  Rng rng(77);
  const double kappa = 4.0;  // joint-continuity module constant
  for (auto [i, j] : samples.pair_indices(300)) {
    const Vec& x = samples[i];
    const Vec& y = samples[j];
    Vec dx = Vec{rng.uniform(-1e-4, 1e-4), rng.uniform(-1e-4, 1e-4),
                 rng.uniform(-1e-4, 1e-4)};
    Vec dy = Vec{rng.uniform(-1e-4, 1e-4), rng.uniform(-1e-4, 1e-4),
                 rng.uniform(-1e-4, 1e-4)};
    double lhs = std::fabs(si.eval(x + dx, y + dy) - si.eval(x, y));
    double bound = si.c_bar() *
                   (s.norm(dx) * (s.norm(y) + s.norm(dy)) +
                    s.norm(x) * s.norm(dy)) *
                   kappa;
    CHECK(lhs <= bound + 1e-12);
  }
}

TEST_CASE("norm_compat d witnesses the diagonal") {
  Space s2 = Space::pointwise(2);
  QuasiProduct ws = QuasiProduct::weighted_sum(s2, {0.25, 0.75});
  SampleSet samples = SampleSet::make(s2, {SampleKind::Mixed, 100}, 43);
  for (const Vec& y : samples.points()) {
    double lhs = ws.eval(y, y);
    double rhs = ws.norm_compat_d(y) * s2.norm(y) * s2.norm(y);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  QuasiProduct ip = make_integral_pair();
  CHECK_THROWS_AS(ip.norm_compat_d(Vec{1, 0, 0, 0}), UnsupportedError);
}

TEST_SUITE_END();
