#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qspec/calculus.hpp"
#include "qspec/spectral.hpp"

namespace qspec {

/// Disjoint union of half-open intervals (a, b], kept normalized (sorted,
/// touching runs merged). Closed under union and intersection.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  IntervalUnion(double a, double b);  // single (a, b]; empty when b <= a
  static IntervalUnion empty() { return {}; }
  static IntervalUnion of(std::vector<std::pair<double, double>> parts);

  bool is_empty() const { return parts_.empty(); }
  const std::vector<std::pair<double, double>>& parts() const { return parts_; }
  bool contains(double lambda) const;
  bool subset_of(double m, double M) const;
  IntervalUnion unite(const IntervalUnion& o) const;
  IntervalUnion intersect(const IntervalUnion& o) const;
  bool disjoint_from(const IntervalUnion& o) const;

 private:
  std::vector<std::pair<double, double>> parts_;
  void normalize();
};

bool operator==(const IntervalUnion& a, const IntervalUnion& b);

/// Interval-indexed spectral projection on (m, M]. The profile representation
/// is the level-set family of a scalar field psi (satisfies the projection
/// axioms by construction); the raw representation wraps an arbitrary set
/// function so that axiom violations can be expressed and caught.
class SpectralProjection {
 public:
  static SpectralProjection profile(Space space,
                                    std::function<double(const Vec&)> psi,
                                    double m, double M);
  static SpectralProjection raw(
      Space space,
      std::function<Vec(const IntervalUnion&, const Vec&)> set_function,
      double m, double M);

  const Space& space() const { return space_; }
  double m() const { return m_; }
  double M() const { return M_; }
  bool is_profile() const { return psi_ != nullptr; }
  double psi(const Vec& x) const;  // profile only

  // E{A}(x); throws DomainError when A is not inside the bracket. The raw
  // path validates the projection shape of the delegate's answer.
  Vec apply(const IntervalUnion& a, const Vec& x) const;

 private:
  SpectralProjection(Space space, double m, double M)
      : space_(std::move(space)), m_(m), M_(M) {}
  Space space_;
  double m_, M_;
  std::function<double(const Vec&)> psi_;
  std::function<Vec(const IntervalUnion&, const Vec&)> raw_;
};

struct SpAxiomEntry {
  std::string name;
  bool pass = false;
  std::optional<Vec> witness;
  std::string detail;
};

struct SpAxiomReport {
  std::vector<SpAxiomEntry> entries;
  bool all_pass() const;
  const SpAxiomEntry* find(const std::string& name) const;
};

// Fuzzes interval pairs and checks the projection axioms pointwise:
// empty/full normalization, multiplicativity through intersections,
// commutation, disjoint additivity and projection shape.
SpAxiomReport sp_axiom_check(const SpectralProjection& e,
                             const SampleSet& samples,
                             std::uint64_t interval_fuzz_seed,
                             int fuzz_rounds = 64);

/// Nonlinear spectral operator sum_j f(rep_j) E{(s_{j-1}, s_j]} for the
/// partition; for profile projections this is x -> f(rep(cell(psi(x)))) x
/// with the closed-form limit f(psi(x)) x.
NlOperator sp_integral(const SpectralProjection& e, const FuncSpec& fn,
                       const Partition& partition,
                       BinChoice choice = BinChoice::Right);

// Weighted variant sum_j f(rep_j) (r o E{...}); with r = gamma and psi the
// Rayleigh profile this reproduces the spectral resolution.
NlOperator sp_weighted_integral(const SpectralProjection& e, const NlOperator& r,
                                const FuncSpec& fn, const Partition& partition,
                                BinChoice choice = BinChoice::Right);

// alpha * integral(f1) + integral(f2), assembled on the matched partition.
NlOperator sp_class_combine(const SpectralProjection& e, double alpha,
                            const FuncSpec& f1, const FuncSpec& f2,
                            const Partition& partition,
                            BinChoice choice = BinChoice::Right);

struct NondegeneracyReport {
  bool nondegenerate = false;  // every probed gap carried a witness
  std::size_t gaps_probed = 0;
  std::size_t gaps_witnessed = 0;
  std::optional<std::pair<double, double>> unwitnessed;  // first gap with no probe
};

/// The family of spectral operators over one projection and one partition:
/// named members are built (and cached) as spectral integrals, combinations
/// stay inside the family, and the nondegeneracy evidence is recorded once.
class SpectralOperatorClass {
 public:
  SpectralOperatorClass(SpectralProjection e, Partition partition,
                        BinChoice choice = BinChoice::Right);
  const SpectralProjection& projection() const { return e_; }
  const Partition& partition() const { return partition_; }
  // Integral member for f, cached under f's name.
  const NlOperator& member(const FuncSpec& f);
  NlOperator combine(double alpha, const FuncSpec& f1, const FuncSpec& f2);
  std::size_t member_count() const { return members_.size(); }
  // Probes once and caches the verdict.
  const NondegeneracyReport& nondegeneracy(const std::vector<Vec>& probes,
                                           int grid = 1000);

 private:
  SpectralProjection e_;
  Partition partition_;
  BinChoice choice_;
  std::vector<std::pair<std::string, NlOperator>> members_;
  std::optional<NondegeneracyReport> nondegeneracy_;
};

// Probes E{(m, hi]} - E{(m, lo]} != 0 over a grid of gaps by searching the
// supplied probe points. Sampled evidence, not proof: the condition
// quantifies over all subintervals.
NondegeneracyReport sp_nondegeneracy_check(const SpectralProjection& e,
                                           const std::vector<Vec>& probes,
                                           int grid = 1000);

}  // namespace qspec
