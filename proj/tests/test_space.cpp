#include <cmath>

#include "doctest.h"
#include "qspec/errors.hpp"
#include "qspec/sample.hpp"
#include "qspec/space.hpp"

using namespace qspec;

TEST_SUITE_BEGIN("space");

TEST_CASE("norm values match the pinned examples") {
  Space sup = Space::sup_plain(2, {1.0, 1.0});
  CHECK(sup.norm(Vec{3.0, -4.0}) == 4.0);

  Space one = Space::weighted_one({0.5, 0.5});
  CHECK(one.norm(Vec{3.0, -4.0}) == doctest::Approx(3.5).epsilon(1e-15));

  Space two = Space::euclidean(2);
  CHECK(two.norm(Vec{3.0, -4.0}) == doctest::Approx(5.0).epsilon(1e-15));

  for (const Space& sp : {sup, one, two}) CHECK(sp.norm(sp.zero()) == 0.0);
}

TEST_CASE("dimension mismatch is a structural error") {
  Space sp = Space::euclidean(3);
  CHECK_THROWS_AS(sp.norm(Vec{1.0, 2.0}), StructuralError);
  Space alg = Space::pointwise(2);
  CHECK_THROWS_AS(alg.alg_mul(Vec{1.0, 2.0}, Vec{1.0}), StructuralError);
}

TEST_CASE("norm axioms on random pairs") {
  for (Space sp : {Space::pointwise(4), Space::euclidean(4),
                   Space::weighted_one({0.3, 0.7, 1.1, 2.0})}) {
    SampleSet s = SampleSet::make(sp, {SampleKind::Mixed, 200}, 11);
    Rng rng(5);
    for (auto [i, j] : s.pair_indices(400)) {
      const Vec& x = s[i];
      const Vec& y = s[j];
      double alpha = rng.uniform(-3.0, 3.0);
      double lhs = sp.norm(alpha * x);
      double rhs = std::fabs(alpha) * sp.norm(x);
      CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
      CHECK(sp.norm(x + y) <= sp.norm(x) + sp.norm(y) + 1e-12);
      CHECK(sp.norm(x) > 0.0);
    }
    CHECK(sp.norm(sp.zero()) == 0.0);
  }
}

TEST_CASE("pointwise algebra laws") {
  Space sp = Space::pointwise(2);
  CHECK(sp.alg_mul(Vec{2.0, 3.0}, Vec{1.0, 0.0}) == Vec{2.0, 0.0});
  // Unit law.
  SampleSet s = SampleSet::make(sp, {SampleKind::Mixed, 100}, 3);
  for (const Vec& x : s.points()) CHECK(sp.alg_mul(sp.unit(), x) == x);
  // Zero divisors appear from dimension two up.
  CHECK(sp.alg_mul(Vec{1.0, 0.0}, Vec{0.0, 1.0}).is_zero());
  // Submultiplicative under the sup norm.
  for (auto [i, j] : s.pair_indices(300)) {
    const Vec& x = s[i];
    const Vec& y = s[j];
    CHECK(sp.norm(sp.alg_mul(x, y)) <= sp.norm(x) * sp.norm(y) * (1 + 1e-15));
  }
}

TEST_CASE("algebra requires the sup norm") {
  CHECK_THROWS_AS(
      Space("bad", 2, NormKind::One, {1.0, 1.0}, AlgebraKind::PointwiseUnital),
      StructuralError);
  Space plain = Space::euclidean(2);
  CHECK_THROWS_AS(plain.alg_mul(Vec{1.0, 1.0}, Vec{1.0, 1.0}), UnsupportedError);
  CHECK_THROWS_AS(plain.unit(), UnsupportedError);
}

TEST_CASE("scalar algebra is an integral domain") {
  Space sp = Space::scalar();
  SampleSet s = SampleSet::make(sp, {SampleKind::Mixed, 200}, 9);
  for (auto [i, j] : s.pair_indices(500)) {
    Vec p = sp.alg_mul(s[i], s[j]);
    if (p.is_zero()) CHECK((s[i].is_zero() || s[j].is_zero()));
  }
  CHECK(sp.alg_mul(sp.zero(), Vec{2.0}).is_zero());
}

TEST_CASE("weights must be strictly positive") {
  CHECK_THROWS_AS(Space::weighted_one({1.0, 0.0}), StructuralError);
  CHECK_THROWS_AS(Space::weighted_one({1.0, -2.0}), StructuralError);
}

TEST_CASE("sampling is deterministic and spans magnitudes") {
  Space sp = Space::scalar();
  SampleSet a = SampleSet::make(sp, {SampleKind::Mixed, 100}, 7);
  SampleSet b = SampleSet::make(sp, {SampleKind::Mixed, 100}, 7);
  REQUIRE(a.size() == 100);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

  double lo = 1e18, hi = 0.0;
  for (const Vec& x : a.points()) {
    CHECK(!x.is_zero());
    double n = sp.norm(x);
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  CHECK(lo >= 1e-3);
  CHECK(lo <= 2e-3);
  CHECK(hi >= 5.0);
  CHECK(hi <= 10.0);

  SampleSet c =
      SampleSet::make(Space::pointwise(16), {SampleKind::SphereGrid, 64}, 4);
  CHECK(c.distinct_magnitudes() >= 3);
  SampleSet d = SampleSet::make(Space::pointwise(16), {SampleKind::Mixed, 64}, 4);
  CHECK(d.distinct_magnitudes() >= 3);
}

TEST_CASE("different seeds give different clouds") {
  Space sp = Space::euclidean(3);
  SampleSet a = SampleSet::make(sp, {SampleKind::BallRandom, 32}, 1);
  SampleSet b = SampleSet::make(sp, {SampleKind::BallRandom, 32}, 2);
  bool all_equal = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) all_equal = false;
  CHECK(!all_equal);
  for (const Vec& x : a.points()) CHECK(sp.norm(x) <= 1.0 + 1e-12);
}

TEST_SUITE_END();
