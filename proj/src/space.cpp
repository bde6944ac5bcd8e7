#include "qspec/space.hpp"

#include <algorithm>
#include <cmath>

#include "qspec/errors.hpp"

namespace qspec {

Space::Space(std::string id, std::size_t dim, NormKind norm,
             std::vector<double> weights, AlgebraKind algebra)
    : id_(std::move(id)), dim_(dim), norm_(norm), weights_(std::move(weights)),
      algebra_(algebra) {
  if (dim_ == 0) throw StructuralError("space dimension must be positive");
  if (weights_.empty()) weights_.assign(dim_, 1.0);
  if (weights_.size() != dim_)
    throw StructuralError("weight vector length must match the dimension");
  for (double h : weights_)
    if (!(h > 0.0) || !std::isfinite(h))
      throw StructuralError("weights must be strictly positive");
  // Pointwise multiplication is submultiplicative for the sup norm only.
  if (algebra_ == AlgebraKind::PointwiseUnital && norm_ != NormKind::Sup)
    throw StructuralError("the pointwise algebra requires the sup norm");
}

Space Space::scalar() {
  return Space("scalar", 1, NormKind::Sup, {1.0}, AlgebraKind::PointwiseUnital);
}

Space Space::pointwise(std::size_t dim) {
  return Space("pointwise" + std::to_string(dim), dim, NormKind::Sup,
               std::vector<double>(dim, 1.0), AlgebraKind::PointwiseUnital);
}

Space Space::euclidean(std::size_t dim) {
  return Space("euclid" + std::to_string(dim), dim, NormKind::Two,
               std::vector<double>(dim, 1.0), AlgebraKind::None);
}

Space Space::weighted_one(std::vector<double> h, std::string id) {
  std::size_t dim = h.size();
  return Space(std::move(id), dim, NormKind::One, std::move(h), AlgebraKind::None);
}

Space Space::sup_plain(std::size_t dim, std::vector<double> h, std::string id) {
  return Space(std::move(id), dim, NormKind::Sup, std::move(h), AlgebraKind::None);
}

double Space::norm(const Vec& x) const {
  check_member(x);
  switch (norm_) {
    case NormKind::Sup: {
      double m = 0.0;
      for (double v : x.c) m = std::max(m, std::fabs(v));
      return m;
    }
    case NormKind::One: {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) s += std::fabs(x.c[i]) * weights_[i];
      return s;
    }
    case NormKind::Two: {
      double s = 0.0;
      for (double v : x.c) s += v * v;
      return std::sqrt(s);
    }
  }
  return 0.0;
}

Vec Space::alg_mul(const Vec& x, const Vec& y) const {
  if (!has_algebra())
    throw UnsupportedError("space '" + id_ + "' carries no algebra product");
  check_member(x);
  check_member(y);
  return hadamard(x, y);
}

Vec Space::unit() const {
  if (!has_algebra())
    throw UnsupportedError("space '" + id_ + "' has no algebra unit");
  return Vec::ones(dim_);
}

double Space::weighted_sum(const Vec& x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += x.c[i] * weights_[i];
  return s;
}

void Space::check_member(const Vec& x) const {
  if (x.dim() != dim_)
    throw StructuralError("dimension mismatch: vector of dim " +
                          std::to_string(x.dim()) + " in space '" + id_ +
                          "' of dim " + std::to_string(dim_));
  if (!x.all_finite())
    throw StructuralError("non-finite coordinate in space '" + id_ + "'");
}

bool operator==(const Space& a, const Space& b) {
  return a.id() == b.id() && a.dim() == b.dim() &&
         a.norm_kind() == b.norm_kind() && a.algebra() == b.algebra() &&
         a.weights() == b.weights();
}

}  // namespace qspec
