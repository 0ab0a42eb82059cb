#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <unordered_map>
#include <vector>

#include "choreo/curves.hpp"
#include "choreo/error.hpp"
#include "choreo/geometry.hpp"
#include "choreo/rootfind.hpp"

namespace choreo {

enum class PairKind { Trivial, NonTrivial };

/// The pairs {q1, q2} found for a given q3 with the centre of mass at the
/// origin. Every emitted pair satisfies the (mass-weighted) sum constraint
/// and lies on its curve(s).
struct PairSolution {
  struct Pair {
    Vec2 q1, q2;
    PairKind kind = PairKind::NonTrivial;
    bool collinear = false;
    bool degenerate = false;  // trivial/non-trivial coincidence at a0
  };
  Vec2 q3;
  std::vector<Pair> pairs;
  bool q3_on_curve = true;
  bool negative_mass = false;
};

struct MassTriple {
  double m1, m2, m3;
  MassTriple(double m1_, double m2_, double m3_) : m1(m1_), m2(m2_), m3(m3_) {
    if (m1 == 0.0 || m2 == 0.0 || m3 == 0.0) {
      raise(ErrorCode::DomainViolation, "masses must be non-zero");
    }
  }
  bool equal() const { return m1 == m2 && m2 == m3; }
  bool any_negative() const { return m1 < 0.0 || m2 < 0.0 || m3 < 0.0; }
};

// ---------------------------------------------------------------------------
// Appendix-B machinery for eight-shaped curves
// ---------------------------------------------------------------------------

/// Branch-difference function g(x, a) = f(-x) - f(x+a) + f(a), defined on
/// 0 < a <= 1, -a <= x <= 0. Its interior zeros locate non-trivial pairs.
inline double g_function(const EightProfile& p, double x, double a) {
  if (!(a > 0.0) || a > 1.0 || x < -a - 1e-12 || x > 1e-12) {
    raise(ErrorCode::DomainViolation,
          "g(x,a) needs 0 < a <= 1 and -a <= x <= 0");
  }
  x = std::clamp(x, -a, 0.0);
  return p.f(-x) - p.f(x + a) + p.f(a);
}

/// The interior zero x0(a) of g(., a) in (-a, 0): none for a <= a0 (the zero
/// at x = 0 becomes a double root at a = a0), the unique root in (-a/2, 0)
/// for a > a0, found by bracketed bisection.
inline std::optional<double> x0_of_a(const EightProfile& p, double a,
                                     double a0) {
  if (!(a > 0.0) || a > 1.0) {
    raise(ErrorCode::DomainViolation, "x0_of_a needs 0 < a <= 1");
  }
  if (a <= a0 + 1e-9) return std::nullopt;
  auto g = [&](double x) { return p.f(-x) - p.f(x + a) + p.f(a); };
  const double lo = -0.5 * a;
  const double glo = g(lo);
  if (glo <= 0.0) {
    // Case a = 1: g(-a/2) = 0 and -a/2 is the root itself.
    if (std::abs(glo) <= 1e-14) return lo;
    raise(ErrorCode::RootNotBracketed,
          "g(-a/2) < 0: profile violates the Appendix-B structure");
  }
  // Shrink toward 0 until g goes negative; the root lies between.
  double d = 0.25 * a;
  while (g(-d) >= 0.0) {
    d *= 0.5;
    if (d < 1e-14) {
      raise(ErrorCode::RootNotBracketed,
            "no interior sign change of g despite a > a0");
    }
  }
  return brent(g, lo, -d, 1e-15);
}

inline std::optional<double> x0_of_a(const EightProfile& p, double a) {
  return x0_of_a(p, a, critical_a0(p));
}

/// Pairs on an eight-shaped curve for q3 = (a, f(a)) on the first-quadrant
/// arc (other quadrants are reached through the curve's symmetry maps).
/// Always reports the trivial pair {O, -q3}; reports the non-trivial pair
/// from x0(a) when a > a0. Inside the degeneracy window around a0 the
/// coincident pairs are reported once, flagged degenerate.
inline PairSolution solve_eight_pair(const EightProfile& p, double a) {
  if (!(a > 0.0) || a > 1.0) {
    raise(ErrorCode::DomainViolation, "solve_eight_pair needs 0 < a <= 1");
  }
  const double a0 = critical_a0(p);
  PairSolution sol;
  const Vec2 q3{a, p.f(a)};
  sol.q3 = q3;

  PairSolution::Pair trivial;
  trivial.q1 = {0.0, 0.0};
  trivial.q2 = -q3;
  trivial.kind = PairKind::Trivial;
  trivial.collinear = true;
  trivial.degenerate = std::abs(a - a0) < 1e-6;
  sol.pairs.push_back(trivial);

  if (a > a0 && !trivial.degenerate) {
    const auto x0 = x0_of_a(p, a, a0);
    if (x0) {
      PairSolution::Pair nt;
      nt.q1 = {*x0, p.f(-*x0)};  // left lobe, upper branch
      nt.q2 = star_map(nt.q1, q3);
      nt.kind = PairKind::NonTrivial;
      nt.collinear = false;
      sol.pairs.push_back(nt);
    }
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Star-shaped indicator and the symmetric-pair solver (Theorem 1 route)
// ---------------------------------------------------------------------------

/// Signed inside/outside indicator of a closed curve that is star-shaped
/// about the origin, via radial comparison. Negative inside.
class StarShapedIndicator {
 public:
  explicit StarShapedIndicator(const Curve& c, int table_size = 2048)
      : curve_(&c) {
    u_.resize(table_size + 1);
    theta_.resize(table_size + 1);
    double prev = 0.0;
    for (int i = 0; i <= table_size; ++i) {
      u_[i] = static_cast<double>(i) / table_size;
      const Vec2 q = c.position(u_[i]);
      double th = std::atan2(q.y, q.x);
      if (i > 0) {
        while (th < prev - M_PI) th += 2.0 * M_PI;
        while (th > prev + M_PI) th -= 2.0 * M_PI;
        if (th <= prev) {
          raise(ErrorCode::ConditionViolated,
                "curve is not star-shaped about the origin (angle not monotone)");
        }
      }
      theta_[i] = th;
      prev = th;
    }
    if (std::abs((theta_.back() - theta_.front()) - 2.0 * M_PI) > 1e-9) {
      raise(ErrorCode::ConditionViolated,
            "curve winding about the origin is not one turn");
    }
  }

  /// Curve parameter whose position lies at polar angle theta.
  double param_at_angle(double theta) const {
    const double lo = theta_.front();
    double th = theta - 2.0 * M_PI * std::floor((theta - lo) / (2.0 * M_PI));
    const auto it = std::upper_bound(theta_.begin(), theta_.end(), th);
    auto hi = static_cast<std::size_t>(it - theta_.begin());
    hi = std::clamp<std::size_t>(hi, 1, theta_.size() - 1);
    const double ua = u_[hi - 1], ub = u_[hi];
    auto delta = [&](double u) {
      const Vec2 q = curve_->position(u);
      double d = std::atan2(q.y, q.x) - th;
      while (d < -M_PI) d += 2.0 * M_PI;
      while (d > M_PI) d -= 2.0 * M_PI;
      return d;
    };
    return bisect(delta, ua, ub, 1e-15);
  }

  double radius_at_angle(double theta) const {
    return curve_->position(param_at_angle(theta)).norm();
  }

  double indicator(Vec2 p) const {
    const double r = p.norm();
    if (r < 1e-15) {
      // The origin: inside by star-shapedness.
      return -radius_at_angle(0.0);
    }
    return r - radius_at_angle(std::atan2(p.y, p.x));
  }

  const Curve& curve() const { return *curve_; }

 private:
  const Curve* curve_;
  std::vector<double> u_, theta_;
};

namespace detail {
inline bool pair_is_trivial(Vec2 q1, Vec2 q2, Vec2 q3, double tol = 1e-8) {
  const Vec2 o{0.0, 0.0};
  const Vec2 mq3 = -q3;
  const bool direct = (q1 - o).norm() < tol && (q2 - mq3).norm() < tol;
  const bool swapped = (q2 - o).norm() < tol && (q1 - mq3).norm() < tol;
  return direct || swapped;
}
}  // namespace detail

/// Pair solver for point-symmetric curves: the two crossings of gamma with
/// its translate gamma - q3 (Theorem 1), located by a seeded scan of the
/// inside/outside indicator along the translate, each bracket polished by
/// bisection. For convex curves exactly one pair exists (Theorem 3).
class SymmetricPairSolver {
 public:
  explicit SymmetricPairSolver(const Curve& c, int seeds = 512)
      : indicator_(c), seeds_(seeds) {
    if (c.symmetry() != Symmetry::PointSymmetric) {
      raise(ErrorCode::ConditionViolated,
            "solve_symmetric_pair needs a point-symmetric curve");
    }
  }

  /// Crossing parameters v of the translated curve: indicator(pos(v) - q3) = 0.
  std::vector<double> crossing_params(Vec2 q3) const {
    const Curve& c = indicator_.curve();
    auto eta = [&](double v) { return indicator_.indicator(c.position(v) - q3); };
    std::vector<double> roots;
    double prev_v = 0.0, prev_e = eta(0.0);
    for (int j = 1; j <= seeds_; ++j) {
      const double v = static_cast<double>(j) / seeds_;
      const double e = eta(v);
      if (prev_e == 0.0) {
        roots.push_back(prev_v);
      } else if ((prev_e > 0.0) != (e > 0.0)) {
        roots.push_back(bisect(eta, prev_v, v, 1e-13));
      }
      prev_v = v;
      prev_e = e;
    }
    // Dedupe parameters that found the same geometric point.
    std::vector<double> unique;
    for (double r : roots) {
      bool dup = false;
      for (double u : unique) {
        if ((c.position(r) - c.position(u)).norm() < 1e-9) dup = true;
      }
      if (!dup) unique.push_back(r);
    }
    return unique;
  }

  PairSolution solve(Vec2 q3) const {
    if (!q3.finite()) {
      raise(ErrorCode::DomainViolation, "q3 must be finite");
    }
    const Curve& c = indicator_.curve();
    const auto roots = crossing_params(q3);
    if (roots.size() != 2) {
      raise(ErrorCode::CrossingCountUnexpected,
            "expected 2 crossings of gamma and its translate, found " +
                std::to_string(roots.size()));
    }
    const Vec2 p0 = c.position(roots[0]) - q3;
    const Vec2 p1 = c.position(roots[1]) - q3;
    if ((star_map(p0, q3) - p1).norm() > 1e-6) {
      raise(ErrorCode::CrossingCountUnexpected,
            "crossings are not star-map partners; curve symmetry is broken");
    }
    PairSolution sol;
    sol.q3 = q3;
    sol.q3_on_curve = std::abs(indicator_.indicator(q3)) < 1e-8;
    PairSolution::Pair pr;
    // Deterministic order: q1 on the positive-orientation side of q3.
    if (cross(q3, p0) >= cross(q3, p1)) {
      pr.q1 = p0;
      pr.q2 = p1;
    } else {
      pr.q1 = p1;
      pr.q2 = p0;
    }
    pr.kind = detail::pair_is_trivial(pr.q1, pr.q2, q3) ? PairKind::Trivial
                                                        : PairKind::NonTrivial;
    pr.collinear =
        std::abs(cross(pr.q1 - q3, pr.q2 - q3)) < 1e-10 * (1.0 + q3.norm2());
    sol.pairs.push_back(pr);
    return sol;
  }

  const StarShapedIndicator& indicator() const { return indicator_; }

 private:
  StarShapedIndicator indicator_;
  int seeds_;
};

inline PairSolution solve_symmetric_pair(const Curve& c, Vec2 q3) {
  return SymmetricPairSolver(c).solve(q3);
}

// ---------------------------------------------------------------------------
// General masses / two curves (Theorem 2 route)
// ---------------------------------------------------------------------------

namespace detail {

struct SegmentHit {
  std::size_t i, j;
  double s, t;  // local segment parameters
};

inline bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1, double& s,
                               double& t) {
  const Vec2 r = a1 - a0;
  const Vec2 d = b1 - b0;
  const double den = cross(r, d);
  if (std::abs(den) < 1e-300) return false;
  const Vec2 w = b0 - a0;
  s = cross(w, d) / den;
  t = cross(w, r) / den;
  return s >= -1e-12 && s <= 1.0 + 1e-12 && t >= -1e-12 && t <= 1.0 + 1e-12;
}

}  // namespace detail

/// All pairs {q1, q2} with q1 on curve1, q2 on curve2 and
/// m1 q1 + m2 q2 + m3 q3 = 0 (Theorem 2 with the mass-scaling remark):
/// crossings of m1*gamma1 with the star image of m2*gamma2 relative to
/// m3*q3. Zero, one, or many pairs may come back; with equal masses on a
/// single point-symmetric curve this reduces to solve_symmetric_pair.
inline PairSolution solve_general_pair(const Curve& curve1, const Curve& curve2,
                                       Vec2 q3, const MassTriple& masses,
                                       int samples = 4096) {
  if (&curve1 == &curve2 && masses.equal() &&
      curve1.symmetry() == Symmetry::PointSymmetric) {
    PairSolution sol = solve_symmetric_pair(curve1, q3);
    sol.negative_mass = masses.any_negative();
    return sol;
  }

  const Vec2 tq3 = masses.m3 * q3;
  auto A = [&](double u) { return masses.m1 * curve1.position(u); };
  auto B = [&](double v) { return star_map(masses.m2 * curve2.position(v), tq3); };
  auto dA = [&](double u) { return masses.m1 * curve1.derivative(u, 1); };
  auto dB = [&](double v) { return -masses.m2 * curve2.derivative(v, 1); };

  const int n = samples;
  std::vector<Vec2> pa(n + 1), pb(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double u = static_cast<double>(i) / n;
    pa[i] = A(u);
    pb[i] = B(u);
  }

  // Uniform grid over B's segments keeps the sweep near-linear.
  double cell = 0.0;
  for (int i = 0; i < n; ++i) {
    cell = std::fmax(cell, (pb[i + 1] - pb[i]).norm());
    cell = std::fmax(cell, (pa[i + 1] - pa[i]).norm());
  }
  cell = std::fmax(cell * 2.0, 1e-12);
  auto key = [cell](Vec2 p) {
    return std::pair<std::int64_t, std::int64_t>{
        static_cast<std::int64_t>(std::floor(p.x / cell)),
        static_cast<std::int64_t>(std::floor(p.y / cell))};
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const {
      const auto h1 = static_cast<std::uint64_t>(k.first) * 0x9E3779B97F4A7C15ull;
      const auto h2 = static_cast<std::uint64_t>(k.second) * 0xC2B2AE3D27D4EB4Full;
      return static_cast<std::size_t>(h1 ^ (h2 >> 1));
    }
  };
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<int>,
                     KeyHash>
      buckets;
  for (int j = 0; j < n; ++j) {
    const auto k0 = key(pb[j]);
    const auto k1 = key(pb[j + 1]);
    for (auto kx : {k0.first, k1.first}) {
      for (auto ky : {k0.second, k1.second}) {
        auto& v = buckets[{kx, ky}];
        if (v.empty() || v.back() != j) v.push_back(j);
      }
    }
  }

  std::vector<std::pair<double, double>> seeds;
  for (int i = 0; i < n; ++i) {
    const auto k0 = key(pa[i]);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto it = buckets.find({k0.first + dx, k0.second + dy});
        if (it == buckets.end()) continue;
        for (int j : it->second) {
          double s, t;
          if (detail::segments_intersect(pa[i], pa[i + 1], pb[j], pb[j + 1], s, t)) {
            seeds.emplace_back((i + s) / n, (j + t) / n);
          }
        }
      }
    }
  }

  PairSolution sol;
  sol.q3 = q3;
  sol.negative_mass = masses.any_negative();
  for (auto [u, v] : seeds) {
    // Newton on F(u, v) = m1 q1(u) + m2 q2(v) + m3 q3 = 0.
    bool ok = false;
    for (int it = 0; it < 40; ++it) {
      const Vec2 F = A(u) - B(v);
      if (F.norm() < 1e-13 * (1.0 + tq3.norm())) {
        ok = true;
        break;
      }
      const Vec2 c1 = dA(u), c2 = -1.0 * dB(v);
      const double det = cross(c1, c2);
      if (std::abs(det) < 1e-14) break;
      const double du = cross(F, c2) / det;
      const double dv = cross(c1, F) / det;
      u -= du;
      v -= dv;
    }
    if (!ok) continue;
    PairSolution::Pair pr;
    pr.q1 = curve1.position(u);
    pr.q2 = curve2.position(v);
    pr.kind = detail::pair_is_trivial(pr.q1, pr.q2, q3) ? PairKind::Trivial
                                                        : PairKind::NonTrivial;
    pr.collinear =
        std::abs(cross(pr.q1 - q3, pr.q2 - q3)) < 1e-10 * (1.0 + q3.norm2());
    bool dup = false;
    for (const auto& e : sol.pairs) {
      const bool same = (e.q1 - pr.q1).norm() < 1e-9 && (e.q2 - pr.q2).norm() < 1e-9;
      const bool swapped = &curve1 == &curve2 && masses.m1 == masses.m2 &&
                           (e.q1 - pr.q2).norm() < 1e-9 &&
                           (e.q2 - pr.q1).norm() < 1e-9;
      if (same || swapped) {
        dup = true;
        break;
      }
    }
    if (!dup) sol.pairs.push_back(pr);
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Brute-force crossing-count oracle (Appendix A checks)
// ---------------------------------------------------------------------------

/// Number of connected near-coincidence clusters between two dense point
/// samplings: the test-side stand-in for "number of crossings".
/// A degenerate full overlap (most of A within tol of B) returns -1.
inline int count_crossings_oracle(const std::vector<Vec2>& a,
                                  const std::vector<Vec2>& b, double tol) {
  if (a.empty() || b.empty()) return 0;
  const double cell = tol;
  auto key = [cell](Vec2 p) {
    return std::pair<std::int64_t, std::int64_t>{
        static_cast<std::int64_t>(std::floor(p.x / cell)),
        static_cast<std::int64_t>(std::floor(p.y / cell))};
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const {
      const auto h1 = static_cast<std::uint64_t>(k.first) * 0x9E3779B97F4A7C15ull;
      const auto h2 = static_cast<std::uint64_t>(k.second) * 0xC2B2AE3D27D4EB4Full;
      return static_cast<std::size_t>(h1 ^ (h2 >> 1));
    }
  };
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<int>,
                     KeyHash>
      grid;
  for (std::size_t j = 0; j < b.size(); ++j) {
    grid[key(b[j])].push_back(static_cast<int>(j));
  }
  std::vector<char> near(a.size(), 0);
  std::size_t marked = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto k = key(a[i]);
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t dx = -1; dx <= 1 && best >= tol; ++dx) {
      for (std::int64_t dy = -1; dy <= 1 && best >= tol; ++dy) {
        const auto it = grid.find({k.first + dx, k.second + dy});
        if (it == grid.end()) continue;
        for (int j : it->second) {
          best = std::fmin(best, (a[i] - b[j]).norm());
          if (best < tol) break;
        }
      }
    }
    if (best < tol) {
      near[i] = 1;
      ++marked;
    }
  }
  if (marked > a.size() / 2) return -1;
  int clusters = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t prev = (i + a.size() - 1) % a.size();
    if (near[i] && !near[prev]) ++clusters;
  }
  if (clusters == 0 && marked > 0) clusters = 1;  // all marked contiguous ring
  return clusters;
}

}  // namespace choreo
