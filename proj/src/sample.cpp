#include "qspec/sample.hpp"

#include <cmath>
#include <set>

#include "qspec/errors.hpp"

namespace qspec {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t v, int k) {
  return (v << k) | (v >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

namespace {

Vec random_direction(const Space& space, Rng& rng) {
  for (;;) {
    Vec d = Vec::zeros(space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i) d[i] = rng.normal();
    double n = space.norm(d);
    if (n > 1e-12) {
      d *= 1.0 / n;
      return d;
    }
  }
}

}  // namespace

SampleSet SampleSet::make(const Space& space, SampleSpec spec, std::uint64_t seed) {
  if (spec.count == 0) throw PreconditionError("sample count must be positive");
  SampleSet set(space, seed);
  Rng rng(seed ^ 0x5eedab1e00c0ffeeULL);
  set.points_.reserve(spec.count);
  const std::size_t n = spec.count;
  for (std::size_t i = 0; i < n; ++i) {
    Vec dir = random_direction(space, rng);
    double mag = 1.0;
    switch (spec.kind) {
      case SampleKind::SphereGrid: {
        // Shells at a few fixed radii; first points pinned to signed axes so
        // the grid always contains the coordinate directions.
        static const double shells[3] = {0.5, 1.0, 2.0};
        mag = shells[i % 3];
        std::size_t axes = 2 * space.dim();
        if (i < axes) {
          Vec a = Vec::axis(space.dim(), (i / 2) % space.dim(),
                            (i % 2) ? -1.0 : 1.0);
          double an = space.norm(a);
          dir = (1.0 / an) * a;
        }
        break;
      }
      case SampleKind::BallRandom:
        mag = 1e-3 + (1.0 - 1e-3) * rng.uniform();
        break;
      case SampleKind::Mixed: {
        // Stratified log-magnitudes over [1e-3, 10] so every run spans the
        // full scale range.
        double t = (static_cast<double>(i) + rng.uniform()) /
                   static_cast<double>(n);
        mag = std::pow(10.0, -3.0 + 4.0 * t);
        break;
      }
    }
    set.points_.push_back(mag * dir);
  }
  return set;
}

std::vector<std::pair<std::size_t, std::size_t>> SampleSet::pair_indices(
    std::size_t count, std::uint64_t salt) const {
  Rng rng(seed_ ^ (salt * 0x9e3779b97f4a7c15ULL + 0x1234567ULL));
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    out.emplace_back(rng.index(points_.size()), rng.index(points_.size()));
  return out;
}

std::size_t SampleSet::distinct_magnitudes() const {
  std::set<long> bins;
  for (const Vec& p : points_) {
    double n = space_.norm(p);
    bins.insert(std::lround(2.0 * std::log10(n)));
  }
  return bins.size();
}

}  // namespace qspec
