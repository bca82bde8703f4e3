#ifndef DEADZONE_COUPLING_HPP
#define DEADZONE_COUPLING_HPP

#include <span>
#include <vector>

#include "deadzone/angle.hpp"

namespace deadzone {

/// Closed arc [start, start + width] on the circle.
struct CircleArc {
  double start = 0.0;  ///< in [0, 2π)
  double width = 0.0;  ///< in (0, 2π)

  CircleArc() = default;
  /// Normalizes `start` into [0, 2π); throws PreconditionError for a width outside (0, 2π).
  CircleArc(double start, double width);

  double end() const { return start + width; }
  double midpoint() const { return wrap_angle(start + 0.5 * width); }
  /// Offset of ψ from the arc start, in [0, 2π).
  double offset(double psi) const { return wrap_angle(psi - start); }
  bool contains(double psi) const { return offset(psi) <= width; }
  bool contains_interior(double psi) const {
    double u = offset(psi);
    return u > 0.0 && u < width;
  }
  /// Distance from ψ to the nearer endpoint.
  double distance_to_boundary(double psi) const {
    return std::min(circular_distance(psi, start), circular_distance(psi, end()));
  }
  /// Image under ψ ↦ −ψ.
  CircleArc reflected() const { return {-end(), width}; }
};

/// Finite set of pairwise disjoint closed arcs, sorted by start.
class DeadZoneSet {
 public:
  DeadZoneSet() = default;
  explicit DeadZoneSet(std::vector<CircleArc> arcs);

  std::span<const CircleArc> arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }

  bool contains(double psi) const;
  /// Distance from ψ to the nearest arc endpoint (infinity for the empty set).
  double distance_to_boundary(double psi) const;
  DeadZoneSet reflected() const;
  /// Components of the complement, as arcs whose endpoints are excluded.
  std::vector<CircleArc> live_zones() const;

  /// Set equality on the circle, endpoints compared to within `tol`.
  bool same_as(const DeadZoneSet& other, double tol = 1e-12) const;

 private:
  std::vector<CircleArc> arcs_;
};

/// C∞ window on a support arc: 1 on a plateau around `center`, vanishing
/// with all derivatives at the support ends. The plateau covers the inner
/// third on each side of the center (the middle third for a centered center).
/// The profile itself is (value + slope·(ψ − center))·window(ψ).
class BumpProfile {
 public:
  BumpProfile(double center, CircleArc support, double value, double slope);

  double center() const { return center_; }
  const CircleArc& support() const { return support_; }
  double value_at_center() const { return value_; }
  double slope_at_center() const { return slope_; }

  double eval(double psi) const;
  double deriv(double psi) const;

  /// Evaluation given the offset u = ψ − support.start already reduced to [0, 2π).
  double eval_offset(double u) const;
  double deriv_offset(double u) const;

 private:
  double center_;
  CircleArc support_;
  double value_;
  double slope_;
  double left_;   // center offset from support start
  double right_;  // support end offset from center
};

/// make_bump_profile with the precondition check of the constructor.
BumpProfile make_bump_profile(double center, CircleArc support, double value, double slope);

/// Smooth step from 1 at s ≤ 0 to 0 at s ≥ 1, built from exp(-1/t).
double smooth_step_down(double s);
double smooth_step_down_deriv(double s);

struct KuramotoSakaguchiParams {
  double a = 0.0;      ///< dead-zone center
  double b = 0.0;      ///< dead-zone half-width; 0 means no dead zone
  double eps = 5e-3;   ///< steepness
  double alpha = 1.3;  ///< phase lag
};

enum class CouplingKind { ExactPiecewise, AnalyticKS };

/// 2π-periodic coupling function with explicit dead zones. Immutable.
class CouplingFunction {
 public:
  struct Sample {
    double value;
    bool live;
  };

  /// Live-zone profiles with pairwise disjoint supports; zero elsewhere.
  static CouplingFunction piecewise(std::vector<BumpProfile> profiles);
  /// g(ψ) = −sin(ψ+α)·h(ψ), h(ψ) = ½(tanh((cos b − cos(a−ψ))/ε) + 1).
  static CouplingFunction kuramoto_sakaguchi(const KuramotoSakaguchiParams& p);

  CouplingKind kind() const { return kind_; }
  const DeadZoneSet& dead_zones() const { return dead_zones_; }
  std::span<const BumpProfile> profiles() const { return profiles_; }
  const KuramotoSakaguchiParams& ks_params() const { return ks_; }
  std::size_t dead_zone_count() const { return dead_zones_.size(); }

  double eval(double psi) const { return sample(psi).value; }
  double deriv(double psi) const;
  bool in_dead_zone(double psi) const;
  /// Value and live-zone membership in one lookup.
  Sample sample(double psi) const;
  /// sample() that first tries the live or dead zone recorded in `hint` and
  /// updates it. Start with hint = 0; for successive nearby arguments this
  /// skips the search.
  Sample sample_hinted(double psi, int& hint) const;
  double distance_to_dead_zone_boundary(double psi) const {
    return dead_zones_.distance_to_boundary(psi);
  }

 private:
  CouplingFunction() = default;
  // Index of the profile whose support interior holds u ∈ [0, 2π), or -1.
  int find_profile(double u) const;
  Sample sample_hinted_slow(double u, int& hint) const;

  CouplingKind kind_ = CouplingKind::ExactPiecewise;
  DeadZoneSet dead_zones_;
  std::vector<BumpProfile> profiles_;
  std::vector<double> starts_;
  std::vector<CircleArc> gaps_;  // gaps_[i] follows profiles_[i]
  KuramotoSakaguchiParams ks_;
};

inline double BumpProfile::eval_offset(double u) const {
  if (u <= 0.0 || u >= support_.width) return 0.0;
  const double x = u - left_;
  double w = 1.0;
  if (x < 0.0) {
    const double d = -x - left_ / 3.0;
    if (d > 0.0) w = smooth_step_down(d / (2.0 * left_ / 3.0));
  } else {
    const double d = x - right_ / 3.0;
    if (d > 0.0) w = smooth_step_down(d / (2.0 * right_ / 3.0));
  }
  return (value_ + slope_ * x) * w;
}

inline CouplingFunction::Sample CouplingFunction::sample_hinted(double psi, int& hint) const {
  if (kind_ != CouplingKind::ExactPiecewise) return sample(psi);
  const double u = wrap_angle(psi);
  if (hint >= 0) {
    const BumpProfile& p = profiles_[static_cast<std::size_t>(hint)];
    const double off = p.support().offset(u);
    if (off > 0.0 && off < p.support().width) return {p.eval_offset(off), true};
  } else if (gaps_[static_cast<std::size_t>(-hint - 1)].contains(u)) {
    return {0.0, false};
  }
  return sample_hinted_slow(u, hint);
}

/// True iff −DZ(g) = DZ(g) modulo 2π.
bool is_dead_zone_symmetric(const CouplingFunction& g);

}  // namespace deadzone

#endif  // DEADZONE_COUPLING_HPP
