#pragma once

#include <cmath>
#include <utility>

#include "choreo/error.hpp"

namespace choreo {

/// Bisection on a bracketing interval [lo, hi] with f(lo), f(hi) of opposite
/// (or zero) sign. Converges to |hi - lo| <= xtol. Returns the midpoint.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 1e-14,
              int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    raise(ErrorCode::RootNotBracketed, "bisect: no sign change on interval");
  }
  for (int i = 0; i < max_iter && (hi - lo) > xtol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

/// Brent's method: bisection with inverse-quadratic/secant acceleration.
/// Requires a sign change on [a, b].
template <class F>
double brent(F&& f, double a, double b, double xtol = 1e-14,
             int max_iter = 200) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    raise(ErrorCode::RootNotBracketed, "brent: no sign change on interval");
  }
  if (std::abs(fa) < std::abs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = a, fc = fa, d = b - a, s = b;
  bool mflag = true;
  for (int i = 0; i < max_iter; ++i) {
    if (fb == 0.0 || std::abs(b - a) <= xtol) break;
    if (fa != fc && fb != fc) {
      s = a * fb * fc / ((fa - fb) * (fa - fc)) +
          b * fa * fc / ((fb - fa) * (fb - fc)) +
          c * fa * fb / ((fc - fa) * (fc - fb));
    } else {
      s = b - fb * (b - a) / (fb - fa);
    }
    const double t = 0.25 * (3.0 * a + b);
    const bool out_of_range = (s < std::fmin(t, b)) || (s > std::fmax(t, b));
    if (out_of_range || (mflag && std::abs(s - b) >= 0.5 * std::abs(b - c)) ||
        (!mflag && std::abs(s - b) >= 0.5 * std::abs(c - d)) ||
        (mflag && std::abs(b - c) < xtol) ||
        (!mflag && std::abs(c - d) < xtol)) {
      s = 0.5 * (a + b);
      mflag = true;
    } else {
      mflag = false;
    }
    const double fs = f(s);
    d = c;
    c = b;
    fc = fb;
    if ((fa > 0.0) != (fs > 0.0)) {
      b = s;
      fb = fs;
    } else {
      a = s;
      fa = fs;
    }
    if (std::abs(fa) < std::abs(fb)) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
  }
  return b;
}

/// Golden-section minimization of a unimodal scalar function on [a, b].
template <class F>
double golden_min(F&& f, double a, double b, double xtol = 1e-12,
                  int max_iter = 300) {
  constexpr double inv_phi = 0.6180339887498948482;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace choreo
