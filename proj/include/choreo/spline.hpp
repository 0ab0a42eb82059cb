#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "choreo/error.hpp"

namespace choreo {

/// Natural cubic spline, periodic end conditions, uniform knots on [0, 1).
/// Interpolates n samples y_i at u_i = i/n with y(u + 1) = y(u).
class PeriodicCubicSpline {
 public:
  PeriodicCubicSpline() = default;

  explicit PeriodicCubicSpline(std::vector<double> y) : y_(std::move(y)) {
    const std::size_t n = y_.size();
    if (n < 3) {
      raise(ErrorCode::DomainViolation,
            "periodic spline needs at least 3 samples");
    }
    solve_second_derivatives();
  }

  std::size_t size() const { return y_.size(); }

  double eval(double u) const { return piece(u, 0); }
  double deriv1(double u) const { return piece(u, 1); }
  double deriv2(double u) const { return piece(u, 2); }

 private:
  // Cyclic tridiagonal system for the knot second derivatives
  // (Sherman-Morrison on the standard spline equations).
  void solve_second_derivatives() {
    const std::size_t n = y_.size();
    const double h = 1.0 / static_cast<double>(n);
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double ym = y_[(i + n - 1) % n];
      const double yp = y_[(i + 1) % n];
      rhs[i] = 6.0 * (yp - 2.0 * y_[i] + ym) / (h * h);
    }
    // System: m[i-1] + 4 m[i] + m[i+1] = rhs[i] (cyclic).
    m_ = solve_cyclic_tridiagonal(1.0, 4.0, 1.0, rhs);
  }

  static std::vector<double> solve_cyclic_tridiagonal(double a, double b,
                                                      double c,
                                                      const std::vector<double>& r) {
    const std::size_t n = r.size();
    const double gamma = -b;
    std::vector<double> bb(n, b);
    bb[0] -= gamma;
    bb[n - 1] -= a * c / gamma;
    std::vector<double> x = solve_tridiagonal(a, bb, c, r);
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = a;
    std::vector<double> z = solve_tridiagonal(a, bb, c, u);
    const double fact =
        (x[0] + c * x[n - 1] / gamma) / (1.0 + z[0] + c * z[n - 1] / gamma);
    for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
    return x;
  }

  static std::vector<double> solve_tridiagonal(double a,
                                               const std::vector<double>& b,
                                               double c,
                                               const std::vector<double>& r) {
    const std::size_t n = r.size();
    std::vector<double> x(n), cp(n);
    double beta = b[0];
    x[0] = r[0] / beta;
    for (std::size_t i = 1; i < n; ++i) {
      cp[i] = c / beta;
      beta = b[i] - a * cp[i];
      x[i] = (r[i] - a * x[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
      x[i] -= cp[i + 1] * x[i + 1];
    }
    return x;
  }

  double piece(double u, int order) const {
    const std::size_t n = y_.size();
    const double h = 1.0 / static_cast<double>(n);
    double w = u - std::floor(u);
    std::size_t i = static_cast<std::size_t>(w * n);
    if (i >= n) i = n - 1;
    const double t = w - static_cast<double>(i) * h;  // in [0, h)
    const double ya = y_[i], yb = y_[(i + 1) % n];
    const double ma = m_[i], mb = m_[(i + 1) % n];
    const double A = (h - t), B = t;
    switch (order) {
      case 0:
        return (ma * A * A * A + mb * B * B * B) / (6.0 * h) +
               (ya / h - ma * h / 6.0) * A + (yb / h - mb * h / 6.0) * B;
      case 1:
        return (-ma * A * A + mb * B * B) / (2.0 * h) + (yb - ya) / h -
               (mb - ma) * h / 6.0;
      case 2:
        return (ma * A + mb * B) / h;
      default:
        raise(ErrorCode::DomainViolation, "spline derivative order must be 0..2");
    }
  }

  std::vector<double> y_;
  std::vector<double> m_;
};

/// Monotone-input piecewise cubic Hermite interpolant on arbitrary nodes.
/// Used for arc-length tables and time maps where exact slopes are known.
class HermiteTable {
 public:
  HermiteTable() = default;
  HermiteTable(std::vector<double> x, std::vector<double> y,
               std::vector<double> dy)
      : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)) {}

  double front_x() const { return x_.front(); }
  double back_x() const { return x_.back(); }
  double front_y() const { return y_.front(); }
  double back_y() const { return y_.back(); }

  double eval(double x) const {
    const std::size_t i = cell(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return y_[i] * (2 * t3 - 3 * t2 + 1) + dy_[i] * h * (t3 - 2 * t2 + t) +
           y_[i + 1] * (-2 * t3 + 3 * t2) + dy_[i + 1] * h * (t3 - t2);
  }

  double deriv(double x) const {
    const std::size_t i = cell(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    return (y_[i] * (6 * t2 - 6 * t) / h + dy_[i] * (3 * t2 - 4 * t + 1) +
            y_[i + 1] * (-6 * t2 + 6 * t) / h + dy_[i + 1] * (3 * t2 - 2 * t));
  }

  /// Inverse of a strictly monotone increasing table: x with eval(x) = y.
  double invert(double y) const {
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (y_[mid] <= y) lo = mid; else hi = mid;
    }
    double a = x_[lo], b = x_[hi];
    // Newton polished by bisection safeguards.
    double x = a + (b - a) * (y - y_[lo]) / (y_[hi] - y_[lo] + 1e-300);
    for (int it = 0; it < 100; ++it) {
      const double fy = eval(x) - y;
      if (fy > 0) b = x; else a = x;
      const double d = deriv(x);
      double step = (d != 0.0) ? fy / d : 0.0;
      double xn = x - step;
      if (!(xn > a) || !(xn < b)) xn = 0.5 * (a + b);
      if (std::abs(xn - x) < 1e-15 * (1.0 + std::abs(x))) return xn;
      x = xn;
    }
    return x;
  }

 private:
  std::size_t cell(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_.back()) return x_.size() - 2;
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (x_[mid] <= x) lo = mid; else hi = mid;
    }
    return lo;
  }

  std::vector<double> x_, y_, dy_;
};

}  // namespace choreo
