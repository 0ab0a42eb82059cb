#pragma once

#include <algorithm>
#include <cmath>

#include "choreo/error.hpp"

namespace choreo {

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// Complete elliptic integral of the first kind, K(k), via the
/// arithmetic-geometric mean. Modulus convention: k (not m = k^2).
inline double complete_elliptic_k(double k) {
  if (!(k >= 0.0) || k >= 1.0) {
    raise(ErrorCode::ModulusOutOfRange, "K(k) needs 0 <= k < 1");
  }
  double a = 1.0;
  double b = std::sqrt(1.0 - k * k);
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return M_PI / (2.0 * a);
}

/// Jacobi elliptic functions sn, cn, dn by the descending Landen (AGM)
/// transformation. Modulus convention: k with 0 <= k < 1.
inline JacobiTriple jacobi_sn_cn_dn(double u, double k) {
  if (!(k >= 0.0) || k >= 1.0) {
    raise(ErrorCode::ModulusOutOfRange, "jacobi_sn_cn_dn needs 0 <= k < 1");
  }
  if (k == 0.0) {
    return {std::sin(u), std::cos(u), 1.0};
  }
  // Reduce the argument by the exact 4K period to keep the backward
  // amplitude recurrence well conditioned for large |u|.
  const double period = 4.0 * complete_elliptic_k(k);
  u -= period * std::floor(u / period);

  const double m = k * k;
  double a[32], c[32];
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > 1e-17 * a[n] && n < 30) {
    ++n;
    a[n] = 0.5 * (a[n - 1] + b);
    c[n] = 0.5 * (a[n - 1] - b);
    b = std::sqrt(a[n - 1] * b);
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i) {
    phi = 0.5 * (phi + std::asin(std::clamp(c[i] * std::sin(phi) / a[i], -1.0, 1.0)));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  const double dn = std::sqrt(std::fmax(1.0 - m * sn * sn, 0.0));
  return {sn, cn, dn};
}

}  // namespace choreo
