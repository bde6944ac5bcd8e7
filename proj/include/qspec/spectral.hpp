#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qspec/definite.hpp"
#include "qspec/operator_space.hpp"

namespace qspec {

/// Membership predicate for a subset containing 0, together with the two
/// operators it induces: E_S(x) = x on S else 0, and 1_S(x) = 1_alg on S
/// else 0.
class ProjectionSet {
 public:
  ProjectionSet(std::function<bool(const Vec&)> predicate, std::string label);
  bool contains(const Vec& x) const;  // forced true at 0
  Vec project(const Vec& x) const;    // E_S
  Vec indicate(const Vec& x, const Space& space) const;  // 1_S
  NlOperator projector(Space space) const;
  const std::string& label() const { return label_; }

 private:
  std::function<bool(const Vec&)> pred_;
  std::string label_;
};

struct GammaReport {
  bool pass = false;
  double k1_min = 0.0, k1_max = 0.0;
  double k2_min = 0.0, k2_max = 0.0;
  bool g_positive = true;
  std::optional<Vec> witness;
};

// Checks [gamma(x), g(x)] = k1(x) ||x|| ||g(x)|| and ||gamma(x)|| = k2(x) ||x||
// with both factors bounded and bounded away from zero, plus g-positivity.
GammaReport validate_gamma(const NlOperator& gamma, const GContext& ctx,
                           const SampleSet& samples, double floor = 1e-6);

// The Rayleigh value lambda_x = [F(x), g(x)] / [gamma(x), g(x)], the unique
// root of [F(x) - lambda gamma(x), g(x)] = 0 under exact left-linearity.
double rayleigh(const NlOperator& f, const GContext& ctx, const Vec& x);

// Sublevel projection set {x : lambda_x <= lambda} (closed boundary, so
// lambda -> membership is right-continuous and the point's own Rayleigh
// value is always included).
ProjectionSet indicator(const NlOperator& f, const GContext& ctx, double lambda);

// Band set {x : lo < lambda_x <= hi} together with 0; realizes E_mu - E_lambda.
ProjectionSet band_indicator(const NlOperator& f, const GContext& ctx,
                             double lo, double hi);

struct Bracket {
  double m = 0.0;
  double M = 0.0;
  double pad = 0.0;         // left padding applied below the observed range
  double loose_bound = 0.0; // c_bar p(F) / k1_min, contains [m, M]
};

struct PadPolicy {
  double rel = 1e-3;      // pad = rel * span of the value range
  double min_abs = 1e-9;  // floor when the range is a single point
};

/// Spectral bracket [m, M]: the exact profile range when the operator carries
/// one (left end padded open so the bottom indicator vanishes off zero),
/// otherwise the sampled Rayleigh range with the same padding.
Bracket bracket(const NlOperator& f, const GContext& ctx,
                const SampleSet& samples, PadPolicy pad = {});

class Partition {
 public:
  static Partition uniform(const Bracket& br, int n);
  static Partition from_knots(std::vector<double> knots);
  const std::vector<double>& knots() const { return knots_; }
  double m() const { return knots_.front(); }
  double M() const { return knots_.back(); }
  int cells() const { return static_cast<int>(knots_.size()) - 1; }
  double mesh() const { return mesh_; }
  // 1-based cell index with lambda in (s_{j-1}, s_j]; throws BracketError
  // outside (m, M].
  int cell_of(double lambda) const;

 private:
  std::vector<double> knots_;
  double mesh_ = 0.0;
};

enum class BinChoice { Left, Right, Midpoint, Random };

double cell_representative(const Partition& p, int cell, BinChoice choice,
                           std::uint64_t seed = 0);

/// The Riemann-Stieltjes sum operator F_n(x) = rep(cell(lambda_x)) gamma(x),
/// equal to the sum of gamma-composed band projections over the partition.
NlOperator spectral_sum(const NlOperator& f, const GContext& ctx,
                        const Partition& partition,
                        BinChoice choice = BinChoice::Right,
                        std::uint64_t seed = 0);

// Scalar Riemann-Stieltjes integral of lambda against the step function
// w_x(lambda) = [(gamma o E_lambda)(x), g(x)].
double stieltjes_scalar(const NlOperator& f, const GContext& ctx, const Vec& x,
                        const Partition& partition,
                        BinChoice choice = BinChoice::Right);

struct SpectralDecomposition {
  Bracket brkt;
  struct Row {
    Vec x;
    double lambda = 0.0;
    double gamma_g = 0.0;  // [gamma(x), g(x)]
  };
  std::vector<Row> table;
  struct SumError {
    int n = 0;
    double mesh = 0.0;
    double sup_error = 0.0;  // sampled p-distance between F_n and F
  };
  std::vector<SumError> sums;
  double scalar_identity_residual = 0.0;  // worst |[F,g] - lambda [gamma,g]| / scale
  double stieltjes_residual = 0.0;        // worst RS deviation / jump, finest n
  bool condition_holds = false;           // uniform spectral representation condition
  bool convergence_structural = false;    // profile operator: F equals its resolution
  bool resolution_converged = false;      // operator errors decayed to the mesh bound
};

/// Runs the full resolution: tabulates Rayleigh values, verifies the scalar
/// spectral identity per sample, and measures the operator error of the
/// spectral sums along the partition schedule.
SpectralDecomposition decompose(const NlOperator& f, const GContext& ctx,
                                const std::vector<int>& n_schedule,
                                const SampleSet& samples,
                                BinChoice choice = BinChoice::Right);

}  // namespace qspec
