#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qspec/spectral.hpp"

namespace qspec {

struct PolySpec {
  std::vector<double> coeffs;  // a_0 ... a_d over the real field
  int degree() const;          // index of last nonzero coefficient (0 if none)
  double eval(double lambda) const;  // scalar Horner
};

struct FuncSpec {
  std::function<double(double)> eval;
  std::vector<int> approx_schedule = {16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  std::string name;
};

FuncSpec func_exp();
FuncSpec func_abs();
FuncSpec func_identity();
FuncSpec func_const(double c);
FuncSpec func_sin();

// Star polynomial p(F) = sum a_i F^{*i} with F^{*0} = e, evaluated by a
// pointwise star-Horner pass. Requires the algebra.
NlOperator star_poly(const NlOperator& f, const PolySpec& p);

// k-th star power.
NlOperator star_pow(const NlOperator& f, int k);

/// The spectral integral of a polynomial: the partition sum of p(rep gamma)
/// against the indicator increments. For the canonical gamma each term
/// collapses to ||x|| p(rep) 1_alg.
NlOperator poly_spectral_integral(const NlOperator& f, const GContext& ctx,
                                  const PolySpec& p, const Partition& partition,
                                  BinChoice choice = BinChoice::Right);

// Stable evaluator for the Bernstein polynomial of f on [m, M] of a given
// degree (binomial weights computed in log space; endpoint values exact).
class BernsteinPoly {
 public:
  BernsteinPoly(const std::function<double(double)>& f, double m, double M,
                int degree);
  double eval(double u) const;  // clamps excursions within 1e-9 span; throws beyond
  int degree() const { return static_cast<int>(fvals_.size()) - 1; }

 private:
  double m_, M_;
  std::vector<double> fvals_;
  std::vector<double> lgamma_;  // lgamma(k+1), k = 0..degree
};

// Chebyshev-node interpolant with barycentric evaluation; the independent
// polynomial route for the limit-uniqueness check.
class ChebPoly {
 public:
  ChebPoly(const std::function<double(double)>& f, double m, double M, int degree);
  double eval(double u) const;

 private:
  double m_, M_;
  std::vector<double> nodes_, vals_, w_;
};

struct CalcResult {
  NlOperator op;
  int degree = 0;  // approximant degree at the stopping step
  std::vector<std::pair<int, double>> cauchy_trace;  // degree -> gap to previous
  double f_sup = 0.0;         // ||f||_C([m,M]) on a dense grid
  double norm_ratio = 0.0;    // sampled p(f(F)) / ||f||_C
  std::optional<double> cheb_agreement;  // gap to the Chebyshev-route limit
};

/// Continuous calculus f(F): Bernstein approximants evaluated through the
/// star algebra along the degree schedule, stopping when consecutive sampled
/// operator distance falls under tol. With cross_check set, the Chebyshev
/// route is run as well and the gap between the two limits recorded.
/// Throws NonConvergenceError (with the Cauchy-gap trace in the message)
/// when the schedule is exhausted.
CalcResult cont_calculus(const NlOperator& f, const GContext& ctx,
                         const FuncSpec& fn, double tol,
                         const SampleSet& samples, bool cross_check = false);

/// Definition-7 sum for a continuous function: x -> ||x|| f(rep) 1_alg on the
/// cell of lambda_x (canonical gamma collapse of the polynomial limits).
NlOperator func_spectral_integral(const NlOperator& f, const GContext& ctx,
                                  const FuncSpec& fn, const Partition& partition,
                                  BinChoice choice = BinChoice::Right);

/// Shifted calculus for Ftilde = F + s0 (.) e with F(0) = 0: the partition
/// sum with argument rep gamma + Ftilde(0) e, using the base operator's
/// indicators. Requires the shift structure.
NlOperator shifted_poly_integral(const NlOperator& ftilde, const GContext& ctx,
                                 const PolySpec& p, const Partition& partition,
                                 BinChoice choice = BinChoice::Right);
NlOperator shifted_func_integral(const NlOperator& ftilde, const GContext& ctx,
                                 const FuncSpec& fn, const Partition& partition,
                                 BinChoice choice = BinChoice::Right);

// Numerical modulus of continuity of f over [m, M] at step h (dense grid).
double modulus_of_continuity(const std::function<double(double)>& f, double m,
                             double M, double h, int grid = 4096);

// sup |f| over [m, M] on a dense grid including both endpoints.
double sup_abs_on(const std::function<double(double)>& f, double m, double M,
                  int grid = 4096);

}  // namespace qspec
