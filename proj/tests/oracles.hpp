#pragma once

// Brute-force reference evaluations used only by the tests. They share no
// code with the library: momenta are rebuilt from n directly, sums run in
// long double in plain index order, and nothing is tabulated.

#include <cmath>
#include <numbers>

namespace oracle {

using real = long double;

inline constexpr real kPi = std::numbers::pi_v<long double>;

inline real momentum(int i, int l) { return 2 * kPi * (i - (l - 1) / 2.0L) / l; }

struct Spec {
  real eps;
  real delta;
  real e;
};

inline Spec spec(real jx, real jy, real jz, real qx, real qy) {
  const real eps = jx * std::cos(qx) + jy * std::cos(qy) + jz;
  const real delta = jx * std::sin(qx) + jy * std::sin(qy);
  return {eps, delta, std::hypot(eps, delta)};
}

inline real ground_energy(real jx, real jy, real jz, int l) {
  real sum = 0;
  for (int a = 0; a < l; ++a) {
    for (int b = 0; b < l; ++b) sum -= spec(jx, jy, jz, momentum(a, l), momentum(b, l)).e;
  }
  return sum;
}

inline real gap(real jx, real jy, real jz, int l) {
  real best = INFINITY;
  for (int a = 0; a < l; ++a) {
    for (int b = 0; b < l; ++b) {
      best = std::fmin(best, spec(jx, jy, jz, momentum(a, l), momentum(b, l)).e);
    }
  }
  return 2 * best;
}

inline real c2(real jx, real jy, real jz, int l) {
  real sum = 0;
  for (int a = 0; a < l; ++a) {
    for (int b = 0; b < l; ++b) {
      const Spec s = spec(jx, jy, jz, momentum(a, l), momentum(b, l));
      sum += s.eps / s.e;
    }
  }
  return sum / (static_cast<real>(l) * l);
}

/// (1/L^4) sum_{q1,q3} (A1 A3 - B1 B3)(cos[(q1 - q3).dr] - 1).
inline real c4_double_sum(real jx, real jy, real jz, int l, int d1, int d2) {
  real sum = 0;
  for (int a1 = 0; a1 < l; ++a1) {
    for (int b1 = 0; b1 < l; ++b1) {
      const real qx1 = momentum(a1, l);
      const real qy1 = momentum(b1, l);
      const Spec s1 = spec(jx, jy, jz, qx1, qy1);
      for (int a3 = 0; a3 < l; ++a3) {
        for (int b3 = 0; b3 < l; ++b3) {
          const real qx3 = momentum(a3, l);
          const real qy3 = momentum(b3, l);
          const Spec s3 = spec(jx, jy, jz, qx3, qy3);
          const real weight = (s1.delta * s3.delta - s1.eps * s3.eps) / (s1.e * s3.e);
          sum += weight * (std::cos((qx1 - qx3) * d1 + (qy1 - qy3) * d2) - 1);
        }
      }
    }
  }
  const real n = static_cast<real>(l) * l;
  return sum / (n * n);
}

inline real h(real x) { return x <= 0 ? 0 : -x * std::log2(x); }

inline real mi_two_site(real c) { return 2 - 2 * h((1 - c) / 4) - 2 * h((1 + c) / 4); }

inline real mi_two_bond(real c2, real c4) {
  return 4 * h((1 + c2) / 4) + 4 * h((1 - c2) / 4) - 8 * h((1 - c4) / 16) -
         4 * h((1 - 2 * c2 + c4) / 16) - 4 * h((1 + 2 * c2 + c4) / 16);
}

}  // namespace oracle
