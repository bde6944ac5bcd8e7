#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace qspec {

// Dense coordinate vector. Structural checks (dimension, finiteness) happen
// at the space boundary, not here.
struct Vec {
  std::vector<double> c;

  Vec() = default;
  explicit Vec(std::vector<double> coords) : c(std::move(coords)) {}
  Vec(std::initializer_list<double> coords) : c(coords) {}

  static Vec zeros(std::size_t dim) { return Vec(std::vector<double>(dim, 0.0)); }
  static Vec ones(std::size_t dim) { return Vec(std::vector<double>(dim, 1.0)); }
  static Vec axis(std::size_t dim, std::size_t i, double v = 1.0);

  std::size_t dim() const { return c.size(); }
  double operator[](std::size_t i) const { return c[i]; }
  double& operator[](std::size_t i) { return c[i]; }
  bool is_zero() const;  // exact: every coordinate == 0.0
  bool all_finite() const;

  Vec& operator+=(const Vec& o);
  Vec& operator*=(double s);
};

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(double s, const Vec& a);
bool operator==(const Vec& a, const Vec& b);

// Coordinatewise product. Algebra-aware callers go through Space::alg_mul,
// which enforces that the space actually carries the algebra.
Vec hadamard(const Vec& a, const Vec& b);

// Euclidean dot product (used by the two-norm pairings).
double dot(const Vec& a, const Vec& b);

std::string to_string(const Vec& x);

}  // namespace qspec
