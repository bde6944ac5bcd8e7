#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qspec/space.hpp"
#include "qspec/vec.hpp"

namespace qspec {

// Fully specified RNG: mt19937_64 raw draws with hand-rolled uniform and
// Box-Muller normal, so sequences are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next_u64();
  double uniform();                 // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  std::size_t index(std::size_t n);  // [0, n)

 private:
  std::uint64_t s_[4];  // xoshiro256** state, seeded via splitmix64
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class SampleKind { SphereGrid, BallRandom, Mixed };

struct SampleSpec {
  SampleKind kind = SampleKind::Mixed;
  std::size_t count = 256;
};

/// Deterministic point cloud on a space. All stored points are nonzero; the
/// zero vector is tracked separately. Mixed sampling stratifies magnitudes
/// over [1e-3, 10] so the set always spans several norm scales (operators
/// here are not homogeneous, so sphere-only sampling would be blind).
class SampleSet {
 public:
  static SampleSet make(const Space& space, SampleSpec spec, std::uint64_t seed);

  const std::vector<Vec>& points() const { return points_; }
  const Vec& zero() const { return zero_; }
  std::size_t size() const { return points_.size(); }
  const Vec& operator[](std::size_t i) const { return points_[i]; }
  std::uint64_t seed() const { return seed_; }
  const Space& space() const { return space_; }

  // Deterministic pair index stream derived from the set's seed and a salt.
  std::vector<std::pair<std::size_t, std::size_t>> pair_indices(
      std::size_t count, std::uint64_t salt = 0) const;

  // Number of distinct norm magnitudes (coarse, order-of-magnitude bins).
  std::size_t distinct_magnitudes() const;

 private:
  SampleSet(Space space, std::uint64_t seed)
      : space_(std::move(space)), seed_(seed), zero_(space_.zero()) {}
  Space space_;
  std::uint64_t seed_;
  Vec zero_;
  std::vector<Vec> points_;
};

}  // namespace qspec
