#include "qspec/vec.hpp"

#include <cmath>
#include <sstream>

namespace qspec {

Vec Vec::axis(std::size_t dim, std::size_t i, double v) {
  Vec out = zeros(dim);
  out.c[i] = v;
  return out;
}

bool Vec::is_zero() const {
  for (double v : c)
    if (v != 0.0) return false;
  return true;
}

bool Vec::all_finite() const {
  for (double v : c)
    if (!std::isfinite(v)) return false;
  return true;
}

Vec& Vec::operator+=(const Vec& o) {
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (double& v : c) v *= s;
  return *this;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec out = a;
  out += b;
  return out;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec out = a;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] -= b.c[i];
  return out;
}

Vec operator-(const Vec& a) {
  Vec out = a;
  for (double& v : out.c) v = -v;
  return out;
}

Vec operator*(double s, const Vec& a) {
  Vec out = a;
  out *= s;
  return out;
}

bool operator==(const Vec& a, const Vec& b) { return a.c == b.c; }

Vec hadamard(const Vec& a, const Vec& b) {
  Vec out = a;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] *= b.c[i];
  return out;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.c.size(); ++i) s += a.c[i] * b.c[i];
  return s;
}

std::string to_string(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.c.size(); ++i) {
    if (i) os << ", ";
    os << x.c[i];
  }
  os << ")";
  return os.str();
}

}  // namespace qspec
