#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qspec/sample.hpp"
#include "qspec/space.hpp"
#include "qspec/vec.hpp"

namespace qspec {

class NlOperator;  // operator_space.hpp

enum class QpKind {
  ScalarProduct,  // dim 1, [a,b] = a*b
  ScaledInner,    // [x,y] = c(y) <x,y> on the two-norm space, c(y) = ||y||/(||y||+1) + k
  IntegralPair,   // [x,y] = (sum x_i h_i)(sum y_i h_i) on the weighted one-norm space
  IntegralSup,    // [x,y] = (sum x_i h_i)(max_i y_i) on the sup-norm space, domain-restricted
  WeightedSum,    // [x,y] = sum w_i x_i y_i on the sup-norm pointwise algebra
};

const char* to_string(QpKind k);

// Capability flags relative to the canonical g of the pairing's context.
// `declared_*` values ship with the pairing; the checker either confirms them
// on samples or produces a counterexample. Flags that need the algebra
// product are absent on non-algebra spaces.
struct QpFlags {
  bool symmetric = false;
  bool quasi_symmetric = false;
  std::optional<bool> left_integral_domain;
  std::optional<bool> preserves_positivity;
  std::optional<double> square_bounded_below;  // declared lower constant
  bool norm_compat = false;  // [y,y] = d(y) ||y||^2 with d bounded away from 0
};

// A recorded refutation for a flag shipped as false.
struct QpWitness {
  std::string flag;
  std::vector<Vec> vectors;
  std::string note;
};

/// A pairing [.,.] on (a subset of) a normed space: nonnegative on the
/// diagonal, bounded by c_bar ||x|| ||y||, and exactly linear in the first
/// argument (the comparability factor of the linearity axiom is identically
/// one for every shipped instance).
class QuasiProduct {
 public:
  static QuasiProduct scalar_product(Space space);
  static QuasiProduct scaled_inner(Space space, double k);
  static QuasiProduct integral_pair(Space space);
  static QuasiProduct integral_sup(Space space);
  static QuasiProduct weighted_sum(Space space, std::vector<double> w);

  QpKind kind() const { return kind_; }
  const Space& space() const { return space_; }
  double c_bar() const { return c_bar_; }
  const QpFlags& flags() const { return flags_; }
  QpFlags& mutable_flags() { return flags_; }  // harness overrides for fixtures
  const std::vector<QpWitness>& witnesses() const { return witnesses_; }
  const std::vector<double>& pair_weights() const { return weights_; }
  double scale_param() const { return k_; }

  bool restricted_domain() const { return kind_ == QpKind::IntegralSup; }
  bool in_domain(const Vec& x) const;
  // Sign-flip conditioning into the domain (norm-preserving). Throws if the
  // point sits exactly on the domain boundary.
  Vec to_domain(const Vec& x) const;

  // [x, y]; throws DomainError when a restricted domain is violated.
  double eval(const Vec& x, const Vec& y) const;

  // d(y) with [y,y] = d(y)||y||^2, defined when norm_compat holds.
  double norm_compat_d(const Vec& y) const;
  // c(y) of the scaled-inner family (1 for every other kind).
  double scale_c(const Vec& y) const;

 private:
  QuasiProduct(QpKind kind, Space space) : kind_(kind), space_(std::move(space)) {}
  QpKind kind_;
  Space space_;
  double k_ = 0.0;
  std::vector<double> weights_;
  double c_bar_ = 1.0;
  QpFlags flags_;
  std::vector<QpWitness> witnesses_;
};

double qp_eval(const QuasiProduct& qp, const Vec& x, const Vec& y);

struct AxiomEntry {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // signed: worst slack toward violation, normalized by scale
  double scale = 1.0;
  std::optional<std::pair<Vec, Vec>> witness;
};

struct AxiomReport {
  std::vector<AxiomEntry> entries;
  std::size_t pairs_tested = 0;
  bool all_pass() const;
  const AxiomEntry* find(const std::string& name) const;
};

/// Checks axiom (a) nonnegative diagonal, (b) the c_bar bound, (c) exact
/// left-linearity, plus the declared (quasi-)symmetry flags. Failures land in
/// the report; nothing throws. Domain-restricted pairings have their sample
/// pairs conditioned into the domain first.
AxiomReport qp_check_axioms(const QuasiProduct& qp, const SampleSet& samples,
                            double tol = 1e-9,
                            std::size_t pair_count = 10000);

enum class CapabilityStatus { Consistent, Refuted, NotApplicable };

struct CapabilityEntry {
  std::string name;
  bool declared = false;
  CapabilityStatus status = CapabilityStatus::NotApplicable;
  std::optional<QpWitness> witness;
  double empirical_k = 0.0;  // square-bounded-below only
};

struct CapabilityReport {
  std::vector<CapabilityEntry> entries;
  const CapabilityEntry* find(const std::string& name) const;
  bool consistent_with_declarations() const;
};

/// Probes the left-integral-domain, positivity-preservation and
/// square-bounded-below properties of the pairing against the supplied g.
/// Kernel candidates are constructed from sample pairs via left-linearity,
/// so refutations do not rely on random exact zeros. Throws
/// PreconditionError (naming the point) if g vanishes at a nonzero sample.
CapabilityReport qp_check_capabilities(const QuasiProduct& qp,
                                       const NlOperator& g,
                                       const SampleSet& samples,
                                       double tol = 1e-9);

// max(1, |values|...) used by every scaled-tolerance comparison.
double tol_scale(std::initializer_list<double> magnitudes);

}  // namespace qspec
