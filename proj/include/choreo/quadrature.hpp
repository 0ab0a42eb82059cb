#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "choreo/error.hpp"

namespace choreo {

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (QUADPACK values).
struct GK15 {
  static constexpr std::array<double, 8> xk = {
      0.991455371120812639206854697526329,
      0.949107912342758524526189684047851,
      0.864864423359769072789712788640926,
      0.741531185599394439863864773280788,
      0.586087235467691130294144838258730,
      0.405845151377397166906606412076961,
      0.207784955007898467600689403773245,
      0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk = {
      0.022935322010529224963732008058970,
      0.063092092629978553290700663189204,
      0.104790010322250183839876322541518,
      0.140653259715525918745189590510238,
      0.169004726639267902826583426598550,
      0.190350578064785409913256402421014,
      0.204432940075298892414161999234649,
      0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082,
      0.279705391489276667901467771423780,
      0.381830050505118944950369775488975,
      0.417959183673469387755102040816327};
};

template <class F>
inline void gk15(F&& f, double a, double b, double& result, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int j = 0; j < 7; ++j) {
    const double x = GK15::xk[j] * h;
    const double fv = f(c - x) + f(c + x);
    resk += GK15::wk[j] * fv;
    if (j % 2 == 1) resg += GK15::wg[j / 2] * fv;
  }
  const double fc = f(c);
  resk += GK15::wk[7] * fc;
  resg += GK15::wg[3] * fc;
  result = resk * h;
  err = std::abs((resk - resg) * h);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a, b] to absolute
/// tolerance abstol. Throws QuadratureFailure past max bisection depth.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abstol = 1e-12,
                          int max_depth = 52) {
  if (a == b) return 0.0;
  struct Seg {
    double a, b, tol;
    int depth;
  };
  std::vector<Seg> stack{{a, b, abstol, 0}};
  double total = 0.0;
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    double r, e;
    detail::gk15(f, s.a, s.b, r, e);
    if (e <= s.tol || e <= 1e-17 * std::abs(r)) {
      total += r;
      continue;
    }
    if (s.depth >= max_depth) {
      raise(ErrorCode::QuadratureFailure,
            "adaptive quadrature did not converge at max depth");
    }
    const double m = 0.5 * (s.a + s.b);
    stack.push_back({s.a, m, 0.5 * s.tol, s.depth + 1});
    stack.push_back({m, s.b, 0.5 * s.tol, s.depth + 1});
  }
  return total;
}

/// Cumulative integral of a sampled integrand on a uniform grid:
/// trapezoid sums at spacing h combined with the 2h sums (one Richardson
/// step, so the node values carry O(h^4) error).
/// `values` holds f at nodes x0, x0+h, ..., x0+(n-1)h; output[i] is the
/// integral from node 0 to node i. n must be odd-indexed-compatible
/// (every other node used for the coarse pass); for odd i the coarse sum
/// uses a trapezoid half-step correction.
inline std::vector<double> cumulative_trapezoid_richardson(
    const std::vector<double>& values, double h) {
  const std::size_t n = values.size();
  std::vector<double> fine(n, 0.0), out(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    fine[i] = fine[i - 1] + 0.5 * h * (values[i - 1] + values[i]);
  }
  // Coarse pass at spacing 2h over even nodes.
  std::vector<double> coarse(n, 0.0);
  for (std::size_t i = 2; i < n; i += 2) {
    coarse[i] = coarse[i - 2] + h * (values[i - 2] + values[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      out[i] = fine[i] + (fine[i] - coarse[i]) / 3.0;
    } else {
      // Richardson-correct the enclosing even node, then add the local
      // trapezoid step; the half-step keeps the O(h^4) profile in practice
      // because adjacent corrections are smooth.
      const double corr_prev = (i >= 1) ? (fine[i - 1] - coarse[i - 1]) / 3.0 : 0.0;
      const double corr_next =
          (i + 1 < n) ? (fine[i + 1] - coarse[i + 1]) / 3.0 : corr_prev;
      out[i] = fine[i] + 0.5 * (corr_prev + corr_next);
    }
  }
  return out;
}

}  // namespace choreo
