#pragma once

#include <string>
#include <vector>

#include "qspec/vec.hpp"

namespace qspec {

enum class NormKind { Sup, One, Two };
enum class AlgebraKind { None, PointwiseUnital };

/// A concrete finite-dimensional normed space over the reals, optionally
/// carrying the pointwise unital algebra structure. The algebra is only
/// permitted under the sup norm, where the coordinatewise product is
/// submultiplicative. The one-norm is weighted: ||x|| = sum |x_i| h_i.
class Space {
 public:
  Space(std::string id, std::size_t dim, NormKind norm,
        std::vector<double> weights, AlgebraKind algebra);

  static Space scalar();                    // dim-1 sup-norm pointwise algebra
  static Space pointwise(std::size_t dim);  // sup-norm pointwise algebra
  static Space euclidean(std::size_t dim);  // two-norm, no algebra
  static Space weighted_one(std::vector<double> h, std::string id = "one_h");
  static Space sup_plain(std::size_t dim, std::vector<double> h,
                         std::string id = "sup");  // sup norm, no algebra

  const std::string& id() const { return id_; }
  std::size_t dim() const { return dim_; }
  NormKind norm_kind() const { return norm_; }
  AlgebraKind algebra() const { return algebra_; }
  bool has_algebra() const { return algebra_ == AlgebraKind::PointwiseUnital; }
  const std::vector<double>& weights() const { return weights_; }

  double norm(const Vec& x) const;
  Vec alg_mul(const Vec& x, const Vec& y) const;
  Vec unit() const;  // all-ones algebra unit
  Vec zero() const { return Vec::zeros(dim_); }

  // Weighted coordinate sum: sum x_i h_i. The integral-style pairings use it.
  double weighted_sum(const Vec& x) const;

  // Throws StructuralError on dimension mismatch or non-finite coordinates.
  void check_member(const Vec& x) const;

 private:
  std::string id_;
  std::size_t dim_;
  NormKind norm_;
  std::vector<double> weights_;
  AlgebraKind algebra_;
};

bool operator==(const Space& a, const Space& b);
inline bool operator!=(const Space& a, const Space& b) { return !(a == b); }

}  // namespace qspec
