#pragma once

// Independent reference computations and random generators for the tests.
// Nothing here calls into the library except for the plain value types.

#include "helico/spaceform.hpp"

#include <cmath>
#include <random>

namespace oracle {

using helico::Mat4;
using helico::Vec3;
using helico::Vec4;

// Matrix exponential by scaling and squaring with a degree-24 Taylor series.
inline Mat4 expm(const Mat4& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const Mat4 b = a / std::ldexp(1.0, squarings);
  Mat4 term = Mat4::Identity();
  Mat4 sum = Mat4::Identity();
  for (int k = 1; k <= 24; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline double kinner(int k, const Vec4& x, const Vec4& y) {
  return k * x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

// Hamilton product on (w, i, j, k) coordinates.
inline Vec4 qmul(const Vec4& a, const Vec4& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

inline Vec4 qconj(const Vec4& a) { return {a[0], -a[1], -a[2], -a[3]}; }

// Images of the great circle through p with velocity v: (v p*, p* v), as
// imaginary parts.
inline std::pair<Vec3, Vec3> phi(const Vec4& p, const Vec4& v) {
  const Vec4 x = qmul(v, qconj(p));
  const Vec4 y = qmul(qconj(p), v);
  return {x.tail<3>(), y.tail<3>()};
}

class Gen {
 public:
  explicit Gen(unsigned long long seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Vec3 unit3() {
    Vec3 v;
    do {
      v = {normal(), normal(), normal()};
    } while (v.norm() < 1e-3);
    return v.normalized();
  }

  Vec4 unit4() {
    Vec4 v;
    do {
      v = {normal(), normal(), normal(), normal()};
    } while (v.norm() < 1e-3);
    return v.normalized();
  }

  Vec3 box3(double r) { return {uniform(-r, r), uniform(-r, r), uniform(-r, r)}; }

  // Nonzero alpha with |alpha| in [lo, hi] and a random sign.
  double alpha(double lo, double hi) { return (coin() ? 1.0 : -1.0) * uniform(lo, hi); }

  // Point of M_k; hyperbolic points stay within distance ~r of e0.
  Vec4 point(int k, double r = 1.5) {
    if (k == 0) {
      const Vec3 y = box3(r);
      return {1.0, y[0], y[1], y[2]};
    }
    if (k == 1) return unit4();
    const Vec3 y = box3(r / std::sqrt(3.0));
    return {std::sqrt(1.0 + y.squaredNorm()), y[0], y[1], y[2]};
  }

  // Unit tangent vector at p.
  Vec4 tangent(int k, const Vec4& p) {
    Vec4 w = {0.0, normal(), normal(), normal()};
    if (k != 0) {
      w[0] = normal();
      w -= k * kinner(k, w, p) * p;
    }
    return w / std::sqrt(kinner(k, w, w));
  }

  // Unit tangent vector at p orthogonal to the unit tangent u.
  Vec4 tangent_orthogonal(int k, const Vec4& p, const Vec4& u) {
    Vec4 w = tangent(k, p);
    w -= kinner(k, w, u) * u;
    return w / std::sqrt(kinner(k, w, w));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
