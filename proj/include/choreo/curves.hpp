#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "choreo/error.hpp"
#include "choreo/geometry.hpp"
#include "choreo/quadrature.hpp"
#include "choreo/rootfind.hpp"
#include "choreo/spline.hpp"

namespace choreo {

enum class CurveKind { Ellipse, LemniscateBernoulli, EightFromProfile, GeneralParametric };
enum class Symmetry { PointSymmetric, AxisSymmetric, None };

/// A closed planar curve with a periodic parameterization u in [0, 1).
/// Implementations are immutable after construction; evaluation is pure.
class Curve {
 public:
  virtual ~Curve() = default;
  virtual CurveKind kind() const = 0;
  virtual Symmetry symmetry() const = 0;
  /// Point on the curve; periodic, position(u + 1) = position(u).
  virtual Vec2 position(double u) const = 0;
  /// d/du or d^2/du^2 of position.
  virtual Vec2 derivative(double u, int order) const = 0;
  /// Full perimeter, computed once at construction.
  virtual double total_length() const = 0;
  virtual std::string describe() const = 0;
};

inline Vec2 position(const Curve& c, double u) { return c.position(u); }
inline Vec2 derivative(const Curve& c, double u, int order) {
  return c.derivative(u, order);
}

/// Arc length between parameters by adaptive quadrature of |dq/du|.
inline double arc_length(const Curve& c, double u0, double u1,
                         double abstol = 1e-10) {
  if (u0 > u1) {
    raise(ErrorCode::DomainViolation, "arc_length requires u0 <= u1");
  }
  return integrate_adaptive(
      [&](double u) { return c.derivative(u, 1).norm(); }, u0, u1, abstol);
}

// ---------------------------------------------------------------------------
// Ellipse
// ---------------------------------------------------------------------------

class EllipseCurve final : public Curve {
 public:
  EllipseCurve(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0) || !(b > 0.0)) {
      raise(ErrorCode::DomainViolation, "ellipse needs a > 0 and b > 0");
    }
    length_ = integrate_adaptive(
        [&](double u) { return derivative(u, 1).norm(); }, 0.0, 1.0, 1e-12);
  }

  CurveKind kind() const override { return CurveKind::Ellipse; }
  Symmetry symmetry() const override { return Symmetry::PointSymmetric; }
  double semi_major() const { return a_; }
  double semi_minor() const { return b_; }

  Vec2 position(double u) const override {
    const double t = 2.0 * M_PI * u;
    return {a_ * std::cos(t), b_ * std::sin(t)};
  }

  Vec2 derivative(double u, int order) const override {
    const double t = 2.0 * M_PI * u;
    const double w = 2.0 * M_PI;
    if (order == 1) return {-a_ * w * std::sin(t), b_ * w * std::cos(t)};
    if (order == 2) return {-a_ * w * w * std::cos(t), -b_ * w * w * std::sin(t)};
    raise(ErrorCode::DomainViolation, "derivative order must be 1 or 2");
  }

  double total_length() const override { return length_; }

  std::string describe() const override {
    return "ellipse(a=" + std::to_string(a_) + ",b=" + std::to_string(b_) + ")";
  }

 private:
  double a_, b_, length_;
};

// ---------------------------------------------------------------------------
// Eight-shaped curves from a first-quadrant profile
// ---------------------------------------------------------------------------

/// First-quadrant graph y = f(x) on [0, 1] with its first three derivatives.
/// The closed eight is generated from it by the x- and y-inversions.
struct EightProfile {
  std::function<double(double)> f;
  std::function<double(double)> f1;
  std::function<double(double)> f2;
  std::function<double(double)> f3;
};

namespace detail {
inline void require_profile_domain(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12) {
    raise(ErrorCode::EvaluationOutsideDomain,
          "profile abscissa outside [0, 1]");
  }
}
}  // namespace detail

/// Closed-form lobe of the lemniscate of Bernoulli (x^2+y^2)^2 = x^2 - y^2:
/// f(x) = sqrt((-1 + sqrt(1+8x^2))/2 - x^2), derivatives by analytic
/// differentiation. A short series takes over near x = 0 where the direct
/// expressions lose to cancellation.
inline EightProfile lemniscate_profile() {
  constexpr double series_cut = 3e-3;
  auto S = [](double x) { return std::sqrt(1.0 + 8.0 * x * x); };
  auto W = [S](double x) {
    return (S(x) - 1.0) / 2.0 - x * x;
  };
  auto Wp = [S](double x) {
    const double s = S(x);
    return 2.0 * x * (2.0 - s) / s;
  };
  auto Wpp = [S](double x) {
    const double s = S(x);
    return 4.0 / s - 32.0 * x * x / (s * s * s) - 2.0;
  };
  auto Wppp = [S](double x) {
    const double s = S(x);
    const double s3 = s * s * s;
    return -96.0 * x / s3 + 768.0 * x * x * x / (s3 * s * s);
  };

  EightProfile p;
  p.f = [=](double x) {
    detail::require_profile_domain(x);
    x = std::clamp(x, 0.0, 1.0);
    if (x < series_cut) {
      const double x2 = x * x;
      return x * (1.0 - 2.0 * x2 + 6.0 * x2 * x2);
    }
    return std::sqrt(std::fmax(W(x), 0.0));
  };
  p.f1 = [=](double x) {
    detail::require_profile_domain(x);
    x = std::clamp(x, 0.0, 1.0);
    if (x < series_cut) {
      const double x2 = x * x;
      return 1.0 - 6.0 * x2 + 30.0 * x2 * x2;
    }
    const double w = W(x);
    if (w <= 0.0) return -std::numeric_limits<double>::infinity();
    return Wp(x) / (2.0 * std::sqrt(w));
  };
  p.f2 = [=](double x) {
    detail::require_profile_domain(x);
    x = std::clamp(x, 0.0, 1.0);
    if (x < series_cut) {
      const double x2 = x * x;
      return x * (-12.0 + 120.0 * x2 + 504.0 * x2 * x2);
    }
    const double w = W(x);
    if (w <= 0.0) return -std::numeric_limits<double>::infinity();
    const double sw = std::sqrt(w);
    const double wp = Wp(x);
    return Wpp(x) / (2.0 * sw) - wp * wp / (4.0 * w * sw);
  };
  p.f3 = [=](double x) {
    detail::require_profile_domain(x);
    x = std::clamp(x, 0.0, 1.0);
    if (x < series_cut) {
      const double x2 = x * x;
      return -12.0 + 360.0 * x2 + 2520.0 * x2 * x2;
    }
    const double w = W(x);
    if (w <= 0.0) return -std::numeric_limits<double>::infinity();
    const double sw = std::sqrt(w);
    const double wp = Wp(x), wpp = Wpp(x);
    return Wppp(x) / (2.0 * sw) - 3.0 * wp * wpp / (4.0 * w * sw) +
           3.0 * wp * wp * wp / (8.0 * w * w * sw);
  };
  return p;
}

/// Unique abscissa a0 in (0, 1) with f'(a0) = -f'(0). Conditions (IV)-(V)
/// make f' strictly decreasing, so the root is simple and bracketed.
inline double critical_a0(const EightProfile& p, double tol = 1e-14) {
  const double slope0 = p.f1(0.0);
  if (!std::isfinite(slope0) || slope0 <= 0.0) {
    raise(ErrorCode::ConditionViolated, "profile has no positive finite f'(0)");
  }
  double prev = slope0;
  for (int i = 1; i <= 100; ++i) {
    const double x = static_cast<double>(i) / 101.0;
    const double v = p.f1(x);
    if (v >= prev) {
      raise(ErrorCode::ConditionViolated,
            "f' is not strictly decreasing on the sampled grid");
    }
    prev = v;
  }
  auto h = [&](double a) { return p.f1(a) + slope0; };
  const double hi = 1.0 - 1e-12;
  if (!(h(hi) < 0.0)) {
    raise(ErrorCode::ConditionViolated, "f'(1-) does not drop below -f'(0)");
  }
  return brent(h, 1e-12, hi, tol);
}

/// Per-condition verdicts for the eight-curve hypotheses (I)-(VI).
struct ConditionReport {
  struct Check {
    std::string name;
    bool pass = true;
    double witness = 0.0;  // first violating abscissa, when !pass
    std::string note;
  };
  std::vector<Check> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.pass; });
  }
  const Check& operator[](const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    raise(ErrorCode::DomainViolation, "no such condition: " + name);
  }
};

/// Evaluate conditions (I)-(VI) on an interior grid (>= 100 points).
/// Conditions (V)/(VI) also polish the grid maximum of f''/f''' so a
/// tangency to zero between grid points is still reported.
inline ConditionReport check_conditions(const EightProfile& p,
                                        int grid_points = 256) {
  if (grid_points < 100) {
    raise(ErrorCode::DomainViolation, "condition grid needs >= 100 points");
  }
  ConditionReport rep;
  auto grid_x = [&](int i) {
    return (static_cast<double>(i) + 1.0) / (grid_points + 1.0);
  };

  rep.checks.push_back({"I", true, 0.0, "symmetry holds by construction of the profile curve"});

  {
    ConditionReport::Check c{"II", true, 0.0, "f(0) = f(1) = 0"};
    if (std::abs(p.f(0.0)) > 1e-9) { c.pass = false; c.witness = 0.0; }
    if (std::abs(p.f(1.0)) > 1e-9) { c.pass = false; c.witness = 1.0; }
    rep.checks.push_back(c);
  }
  {
    ConditionReport::Check c{"III", true, 0.0, "f > 0 on (0,1)"};
    for (int i = 0; i < grid_points; ++i) {
      const double x = grid_x(i);
      if (!(p.f(x) > 0.0)) { c.pass = false; c.witness = x; break; }
    }
    rep.checks.push_back(c);
  }
  {
    ConditionReport::Check c{"IV", true, 0.0,
                             "f'(0) positive finite; f'(x) -> -inf as x -> 1"};
    const double s0 = p.f1(0.0);
    if (!std::isfinite(s0) || !(s0 > 0.0)) { c.pass = false; c.witness = 0.0; }
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      // Divergence at the sqrt rate: f'(1-eps) ~ -C/sqrt(eps) with C > 0.
      if (!(p.f1(1.0 - eps) < -0.25 / std::sqrt(eps))) {
        c.pass = false;
        c.witness = 1.0 - eps;
      }
    }
    rep.checks.push_back(c);
  }

  auto negative_on_grid = [&](const std::function<double(double)>& d,
                              const char* name, const char* note) {
    ConditionReport::Check c{name, true, 0.0, note};
    double best = -std::numeric_limits<double>::infinity();
    double best_x = 0.5;
    for (int i = 0; i < grid_points; ++i) {
      const double x = grid_x(i);
      const double v = d(x);
      if (v > best) { best = v; best_x = x; }
      if (!(v < 0.0)) { c.pass = false; c.witness = x; }
    }
    if (c.pass) {
      // Polish the grid maximum: a derivative tangent to zero between grid
      // points still violates strict negativity.
      const double h = 1.0 / (grid_points + 1.0);
      const double lo = std::fmax(best_x - h, 1e-9);
      const double hi = std::fmin(best_x + h, 1.0 - 1e-9);
      const double xm = golden_min([&](double x) { return -d(x); }, lo, hi, 1e-12);
      if (d(xm) >= -1e-12) {
        c.pass = false;
        c.witness = xm;
      }
    }
    return c;
  };
  rep.checks.push_back(
      negative_on_grid(p.f2, "V", "negative curvature: f'' < 0 on (0,1)"));
  rep.checks.push_back(
      negative_on_grid(p.f3, "VI", "f''' < 0 on (0,1)"));
  return rep;
}

/// Closed eight-shaped curve generated from a profile. The parameter u is
/// arc-length proportional (|dq/du| equals the perimeter everywhere), which
/// keeps the parameterization smooth through the origin and through the
/// vertical-tangent lobe tips. Traversal: origin -> right lobe upper branch
/// -> (1,0) -> right lower -> origin -> left upper -> (-1,0) -> left lower.
class EightCurve final : public Curve {
 public:
  // Quadrant arcs of the traversal, in order.
  enum Branch { RightUpper = 0, RightLower = 1, LeftUpper = 2, LeftLower = 3 };

  struct BranchPoint {
    Branch branch;
    double x;  // abscissa of the first-quadrant representative, in [0, 1]
  };

  explicit EightCurve(EightProfile profile,
                      CurveKind kind = CurveKind::EightFromProfile)
      : profile_(std::move(profile)), kind_(kind) {
    build_tables();
    a0_ = critical_a0(profile_);
  }

  CurveKind kind() const override { return kind_; }
  Symmetry symmetry() const override { return Symmetry::PointSymmetric; }
  const EightProfile& profile() const { return profile_; }
  double critical_abscissa() const { return a0_; }
  double quarter_length() const { return quarter_; }
  double total_length() const override { return 4.0 * quarter_; }

  /// Arc length from the origin along one lobe's half-branch to abscissa x.
  double arc_from_origin(double x) const {
    detail::require_profile_domain(x);
    x = std::clamp(x, 0.0, 1.0);
    if (x <= x_swap_) return sigma_x_.eval(x);
    return quarter_ - tau_y_.eval(profile_.f(x));
  }

  /// Inverse of arc_from_origin on [0, quarter_length()].
  double abscissa_of_arc(double s) const {
    s = std::clamp(s, 0.0, quarter_);
    if (s <= sigma_swap_) return sigma_x_.invert(s);
    const double y = tau_y_.invert(quarter_ - s);
    return abscissa_of_height(y);
  }

  /// Decompose a global parameter into (branch, abscissa).
  BranchPoint locate(double u) const {
    double s = wrap_arc(u * total_length());
    const double L = total_length();
    Branch br;
    double sq;
    if (s < quarter_) { br = RightUpper; sq = s; }
    else if (s < 2.0 * quarter_) { br = RightLower; sq = L / 2.0 - s; }
    else if (s < 3.0 * quarter_) { br = LeftUpper; sq = s - L / 2.0; }
    else { br = LeftLower; sq = L - s; }
    return {br, abscissa_of_arc(sq)};
  }

  Vec2 point_of(BranchPoint bp) const {
    const double y = profile_.f(bp.x);
    switch (bp.branch) {
      case RightUpper: return {bp.x, y};
      case RightLower: return {bp.x, -y};
      case LeftUpper: return {-bp.x, y};
      case LeftLower: return {-bp.x, -y};
    }
    raise(ErrorCode::DomainViolation, "bad branch");
  }

  /// Global arc coordinate in [0, L) of a branch point.
  double arc_of_branch_point(BranchPoint bp) const {
    const double sq = arc_from_origin(bp.x);
    const double L = total_length();
    switch (bp.branch) {
      case RightUpper: return sq;
      case RightLower: return wrap_arc(L / 2.0 - sq);
      case LeftUpper: return L / 2.0 + sq;
      case LeftLower: return wrap_arc(L - sq);
    }
    raise(ErrorCode::DomainViolation, "bad branch");
  }

  Vec2 position(double u) const override { return point_of(locate(u)); }

  /// Unit tangent along the traversal at a branch point.
  Vec2 unit_tangent(BranchPoint bp) const {
    Vec2 t = representative_tangent(bp.x);
    return map_vector(bp.branch, t, /*reversal_flips=*/true);
  }

  Vec2 derivative(double u, int order) const override {
    const BranchPoint bp = locate(u);
    const double L = total_length();
    if (order == 1) return L * unit_tangent(bp);
    if (order == 2) {
      Vec2 d2 = representative_curvature_vector(bp.x);
      return (L * L) * map_vector(bp.branch, d2, /*reversal_flips=*/false);
    }
    raise(ErrorCode::DomainViolation, "derivative order must be 1 or 2");
  }

  std::string describe() const override {
    return kind_ == CurveKind::LemniscateBernoulli ? "lemniscate"
                                                   : "eight-profile";
  }

 private:
  double wrap_arc(double s) const {
    const double L = total_length();
    s = std::fmod(s, L);
    return s < 0.0 ? s + L : s;
  }

  // Abscissa from height on the falling segment [x_swap, 1] (f decreasing).
  double abscissa_of_height(double y) const {
    double x = x_of_y_.eval(y);
    x = std::clamp(x, x_swap_, 1.0);
    // One safeguarded Newton polish against the exact profile.
    for (int i = 0; i < 3; ++i) {
      const double r = profile_.f(x) - y;
      const double d = profile_.f1(x);
      if (!std::isfinite(d) || d == 0.0) break;
      const double xn = std::clamp(x - r / d, x_swap_, 1.0);
      if (std::abs(xn - x) < 1e-16) { x = xn; break; }
      x = xn;
    }
    return x;
  }

  // Tangent of the right-upper representative (traversal direction).
  Vec2 representative_tangent(double x) const {
    const double s1 = profile_.f1(x);
    if (std::abs(s1) <= kSwapSlope) {
      const double sp = std::hypot(1.0, s1);
      return {1.0 / sp, s1 / sp};
    }
    const double hp = 1.0 / s1;  // dx/dy on the falling segment
    const double j = std::hypot(1.0, hp);
    return {-hp / j, -1.0 / j};
  }

  // d^2 q / ds^2 of the right-upper representative (s = arc length).
  Vec2 representative_curvature_vector(double x) const {
    const double s1 = profile_.f1(x);
    if (std::abs(s1) <= kSwapSlope) {
      const double f2 = profile_.f2(x);
      const double sp2 = 1.0 + s1 * s1;
      const double c = f2 / (sp2 * sp2);
      return {-c * s1, c};
    }
    const double hp = 1.0 / s1;
    const double hpp = -profile_.f2(x) / (s1 * s1 * s1);
    const double j2 = 1.0 + hp * hp;
    const double c = hpp / (j2 * j2);
    return {c, -c * hp};
  }

  // Reflection signs per branch. First derivatives also flip under the
  // traversal reversal of the image arcs; second derivatives do not.
  static Vec2 map_vector(Branch br, Vec2 v, bool reversal_flips) {
    switch (br) {
      case RightUpper: return v;
      case RightLower: return reversal_flips ? Vec2{-v.x, v.y} : Vec2{v.x, -v.y};
      case LeftUpper: return {-v.x, v.y};
      case LeftLower: return reversal_flips ? v : Vec2{-v.x, -v.y};
    }
    raise(ErrorCode::DomainViolation, "bad branch");
  }

  void build_tables() {
    // Chart switch where the slope magnitude reaches kSwapSlope; beyond it
    // the lobe is handled as x(y) so the vertical tangent stays regular.
    const double slope0 = profile_.f1(0.0);
    if (!std::isfinite(slope0) || slope0 <= 0.0) {
      raise(ErrorCode::ConditionViolated, "profile needs positive finite f'(0)");
    }
    x_swap_ = brent([&](double x) { return profile_.f1(x) + kSwapSlope; },
                    1e-9, 1.0 - 1e-13, 1e-15);
    y_swap_ = profile_.f(x_swap_);

    // sigma(x) on [0, x_swap]: cumulative Gauss-Kronrod per cell,
    // Hermite-interpolated with the exact speed as slope.
    {
      const int n = 2048;
      std::vector<double> xs(n + 1), sig(n + 1), slope(n + 1);
      double acc = 0.0;
      for (int i = 0; i <= n; ++i) {
        xs[i] = x_swap_ * static_cast<double>(i) / n;
        slope[i] = std::hypot(1.0, profile_.f1(xs[i]));
        if (i > 0) {
          acc += integrate_adaptive(
              [&](double x) { return std::hypot(1.0, profile_.f1(x)); },
              xs[i - 1], xs[i], 1e-13, 40);
        }
        sig[i] = acc;
      }
      sigma_x_ = HermiteTable(xs, sig, slope);
      sigma_swap_ = acc;
    }

    // x(y) on the falling segment, then tau(y): arc measured from the tip.
    {
      const int n = 1024;
      std::vector<double> ys(n + 1), xv(n + 1), dxdy(n + 1);
      for (int i = 0; i <= n; ++i) {
        ys[i] = y_swap_ * static_cast<double>(i) / n;
        if (i == 0) {
          xv[i] = 1.0;
        } else {
          xv[i] = brent(
              [&](double x) { return profile_.f(x) - ys[i]; },
              x_swap_ - 1e-12, 1.0, 1e-15);
        }
        const double s1 = profile_.f1(xv[i]);
        dxdy[i] = std::isfinite(s1) ? 1.0 / s1 : 0.0;
      }
      x_of_y_ = HermiteTable(ys, xv, dxdy);

      std::vector<double> tau(n + 1), tslope(n + 1);
      double acc = 0.0;
      auto integrand = [&](double y) {
        const double s1 = profile_.f1(x_of_y_.eval(y));
        const double hp = std::isfinite(s1) ? 1.0 / s1 : 0.0;
        return std::hypot(1.0, hp);
      };
      for (int i = 0; i <= n; ++i) {
        tslope[i] = integrand(ys[i]);
        if (i > 0) {
          acc += integrate_adaptive(integrand, ys[i - 1], ys[i], 1e-13, 40);
        }
        tau[i] = acc;
      }
      tau_y_ = HermiteTable(ys, tau, tslope);
      quarter_ = sigma_swap_ + acc;
    }
  }

  static constexpr double kSwapSlope = 8.0;

  EightProfile profile_;
  CurveKind kind_;
  double a0_ = 0.0;
  double x_swap_ = 0.0, y_swap_ = 0.0;
  double sigma_swap_ = 0.0, quarter_ = 0.0;
  HermiteTable sigma_x_, tau_y_, x_of_y_;
};

inline std::shared_ptr<EightCurve> make_lemniscate() {
  return std::make_shared<EightCurve>(lemniscate_profile(),
                                      CurveKind::LemniscateBernoulli);
}

// ---------------------------------------------------------------------------
// General parametric curves from samples
// ---------------------------------------------------------------------------

/// Closed curve cubic-interpolated through samples with periodic end
/// conditions. Coincident consecutive samples would produce a corner and are
/// rejected.
class GeneralParametricCurve final : public Curve {
 public:
  GeneralParametricCurve(const std::vector<Vec2>& samples,
                         Symmetry sym = Symmetry::None)
      : symmetry_(sym) {
    if (samples.size() < 4) {
      raise(ErrorCode::DomainViolation, "general curve needs >= 4 samples");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!samples[i].finite()) {
        raise(ErrorCode::DomainViolation, "non-finite curve sample");
      }
      const Vec2 next = samples[(i + 1) % samples.size()];
      if ((next - samples[i]).norm() == 0.0) {
        raise(ErrorCode::NonDifferentiable,
              "coincident consecutive samples form a corner");
      }
    }
    std::vector<double> xs(samples.size()), ys(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      xs[i] = samples[i].x;
      ys[i] = samples[i].y;
    }
    sx_ = PeriodicCubicSpline(std::move(xs));
    sy_ = PeriodicCubicSpline(std::move(ys));
    n_samples_ = samples.size();
    length_ = integrate_adaptive(
        [&](double u) { return derivative(u, 1).norm(); }, 0.0, 1.0, 1e-11);
  }

  CurveKind kind() const override { return CurveKind::GeneralParametric; }
  Symmetry symmetry() const override { return symmetry_; }

  Vec2 position(double u) const override { return {sx_.eval(u), sy_.eval(u)}; }

  Vec2 derivative(double u, int order) const override {
    if (order == 1) {
      const Vec2 d{sx_.deriv1(u), sy_.deriv1(u)};
      if (d.norm() < 1e-12) {
        raise(ErrorCode::NonDifferentiable, "stationary point in parameterization");
      }
      return d;
    }
    if (order == 2) return {sx_.deriv2(u), sy_.deriv2(u)};
    raise(ErrorCode::DomainViolation, "derivative order must be 1 or 2");
  }

  double total_length() const override { return length_; }

  std::string describe() const override {
    return "general(n=" + std::to_string(n_samples_) + ")";
  }

 private:
  PeriodicCubicSpline sx_, sy_;
  Symmetry symmetry_;
  std::size_t n_samples_ = 0;
  double length_ = 0.0;
};

}  // namespace choreo
