#include "deadzone/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "deadzone/errors.hpp"

namespace deadzone {

CircleArc::CircleArc(double s, double w) : start(wrap_angle(s)), width(w) {
  if (!(w > 0.0 && w < kTwoPi)) {
    throw PreconditionError("arc width must lie in (0, 2pi), got " + std::to_string(w));
  }
}

// ---------------------------------------------------------------------------
// DeadZoneSet

DeadZoneSet::DeadZoneSet(std::vector<CircleArc> arcs) : arcs_(std::move(arcs)) {
  std::sort(arcs_.begin(), arcs_.end(),
            [](const CircleArc& l, const CircleArc& r) { return l.start < r.start; });
  double total = 0.0;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    total += arcs_[i].width;
    if (arcs_.size() > 1) {
      const CircleArc& next = arcs_[(i + 1) % arcs_.size()];
      if (arcs_[i].offset(next.start) <= arcs_[i].width) {
        throw PreconditionError("dead-zone arcs must be pairwise disjoint");
      }
    }
  }
  if (total >= kTwoPi) throw PreconditionError("dead zones cover the whole circle");
}

bool DeadZoneSet::contains(double psi) const {
  if (arcs_.empty()) return false;
  const double u = wrap_angle(psi);
  auto it = std::upper_bound(arcs_.begin(), arcs_.end(), u,
                             [](double x, const CircleArc& a) { return x < a.start; });
  const CircleArc& cand = (it == arcs_.begin()) ? arcs_.back() : *(it - 1);
  return cand.contains(u);
}

double DeadZoneSet::distance_to_boundary(double psi) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : arcs_) best = std::min(best, a.distance_to_boundary(psi));
  return best;
}

DeadZoneSet DeadZoneSet::reflected() const {
  std::vector<CircleArc> out;
  out.reserve(arcs_.size());
  for (const auto& a : arcs_) out.push_back(a.reflected());
  return DeadZoneSet(std::move(out));
}

std::vector<CircleArc> DeadZoneSet::live_zones() const {
  if (arcs_.empty()) return {};
  std::vector<CircleArc> out;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const CircleArc& a = arcs_[i];
    const CircleArc& next = arcs_[(i + 1) % arcs_.size()];
    double gap = (arcs_.size() == 1) ? kTwoPi - a.width : a.offset(next.start) - a.width;
    out.emplace_back(a.end(), gap);
  }
  return out;
}

bool DeadZoneSet::same_as(const DeadZoneSet& other, double tol) const {
  if (arcs_.size() != other.arcs_.size()) return false;
  for (const auto& a : arcs_) {
    bool found = std::any_of(other.arcs_.begin(), other.arcs_.end(), [&](const CircleArc& b) {
      return circular_distance(a.start, b.start) <= tol && std::abs(a.width - b.width) <= tol;
    });
    if (!found) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Bump profiles

namespace {

double exp_inv(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double exp_inv_deriv(double t) {
  if (t <= 0.0) return 0.0;
  return std::exp(-1.0 / t) / (t * t);
}

}  // namespace

double smooth_step_down(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  const double f1 = exp_inv(1.0 - s);
  const double f2 = exp_inv(s);
  return f1 / (f1 + f2);
}

double smooth_step_down_deriv(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double f1 = exp_inv(1.0 - s);
  const double f2 = exp_inv(s);
  const double d1 = -exp_inv_deriv(1.0 - s);
  const double d2 = exp_inv_deriv(s);
  const double den = f1 + f2;
  return (d1 * f2 - f1 * d2) / (den * den);
}

BumpProfile::BumpProfile(double center, CircleArc support, double value, double slope)
    : center_(wrap_angle(center)), support_(support), value_(value), slope_(slope) {
  left_ = support_.offset(center_);
  if (!(left_ > 0.0 && left_ < support_.width)) {
    throw PreconditionError("profile center must lie in the interior of its support");
  }
  right_ = support_.width - left_;
}

BumpProfile make_bump_profile(double center, CircleArc support, double value, double slope) {
  return BumpProfile(center, support, value, slope);
}

double BumpProfile::deriv_offset(double u) const {
  if (u <= 0.0 || u >= support_.width) return 0.0;
  const double x = u - left_;
  double w = 1.0;
  double dw = 0.0;
  if (x < 0.0) {
    const double d = -x - left_ / 3.0;
    if (d > 0.0) {
      const double scale = 2.0 * left_ / 3.0;
      w = smooth_step_down(d / scale);
      dw = -smooth_step_down_deriv(d / scale) / scale;
    }
  } else {
    const double d = x - right_ / 3.0;
    if (d > 0.0) {
      const double scale = 2.0 * right_ / 3.0;
      w = smooth_step_down(d / scale);
      dw = smooth_step_down_deriv(d / scale) / scale;
    }
  }
  return slope_ * w + (value_ + slope_ * x) * dw;
}

double BumpProfile::eval(double psi) const { return eval_offset(support_.offset(psi)); }
double BumpProfile::deriv(double psi) const { return deriv_offset(support_.offset(psi)); }

// ---------------------------------------------------------------------------
// CouplingFunction

CouplingFunction CouplingFunction::piecewise(std::vector<BumpProfile> profiles) {
  if (profiles.empty()) {
    throw PreconditionError("a piecewise coupling function needs at least one live zone");
  }
  for (const auto& p : profiles) {
    if (p.slope_at_center() == 0.0) {
      // Zero slope leaves the plateau locally constant, i.e. not a simple dead zone.
      throw PreconditionError("live-zone profiles must have nonzero slope at their center");
    }
  }
  std::sort(profiles.begin(), profiles.end(), [](const BumpProfile& l, const BumpProfile& r) {
    return l.support().start < r.support().start;
  });
  const std::size_t n = profiles.size();
  std::vector<CircleArc> dead;
  dead.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CircleArc& s = profiles[i].support();
    double gap = 0.0;
    if (n == 1) {
      gap = kTwoPi - s.width;
    } else {
      const CircleArc& next = profiles[(i + 1) % n].support();
      gap = s.offset(next.start) - s.width;
      // offset() wraps: an overlapping successor shows up as a huge positive gap
      // only when it starts inside this support, so check that case explicitly.
      if (s.offset(next.start) < s.width) gap = -1.0;
    }
    if (!(gap > 0.0)) {
      throw PreconditionError("live-zone supports must be pairwise disjoint with a gap");
    }
    dead.emplace_back(s.end(), gap);
  }
  std::vector<CircleArc> gaps = dead;

  CouplingFunction g;
  g.kind_ = CouplingKind::ExactPiecewise;
  g.dead_zones_ = DeadZoneSet(std::move(dead));
  g.starts_.reserve(n);
  for (const auto& p : profiles) g.starts_.push_back(p.support().start);
  g.gaps_ = std::move(gaps);
  g.profiles_ = std::move(profiles);
  return g;
}

CouplingFunction CouplingFunction::kuramoto_sakaguchi(const KuramotoSakaguchiParams& p) {
  if (!(p.eps > 0.0)) throw PreconditionError("steepness eps must be positive");
  if (!(p.b >= 0.0 && p.b < kPi)) throw PreconditionError("half-width b must lie in [0, pi)");
  CouplingFunction g;
  g.kind_ = CouplingKind::AnalyticKS;
  g.ks_ = p;
  g.ks_.a = wrap_angle(p.a);
  g.ks_.alpha = p.alpha;
  if (p.b > 0.0) g.dead_zones_ = DeadZoneSet({CircleArc(p.a - p.b, 2.0 * p.b)});
  return g;
}

int CouplingFunction::find_profile(double u) const {
  auto it = std::upper_bound(starts_.begin(), starts_.end(), u);
  const std::size_t idx = (it == starts_.begin()) ? starts_.size() - 1
                                                  : static_cast<std::size_t>(it - starts_.begin()) - 1;
  return profiles_[idx].support().contains_interior(u) ? static_cast<int>(idx) : -1;
}

CouplingFunction::Sample CouplingFunction::sample(double psi) const {
  const double u = wrap_angle(psi);
  if (kind_ == CouplingKind::ExactPiecewise) {
    const int i = find_profile(u);
    if (i < 0) return {0.0, false};
    const BumpProfile& p = profiles_[static_cast<std::size_t>(i)];
    return {p.eval_offset(p.support().offset(u)), true};
  }
  const double z = (std::cos(ks_.b) - std::cos(ks_.a - u)) / ks_.eps;
  const double h = 1.0 / (1.0 + std::exp(-2.0 * z));
  return {-std::sin(u + ks_.alpha) * h, !dead_zones_.contains(u)};
}

CouplingFunction::Sample CouplingFunction::sample_hinted_slow(double u, int& hint) const {
  const int i = find_profile(u);
  if (i >= 0) {
    hint = i;
    const BumpProfile& p = profiles_[static_cast<std::size_t>(i)];
    return {p.eval_offset(p.support().offset(u)), true};
  }
  // the gap holding u follows the last profile starting at or before u
  auto it = std::upper_bound(starts_.begin(), starts_.end(), u);
  const std::size_t g = (it == starts_.begin()) ? starts_.size() - 1
                                                : static_cast<std::size_t>(it - starts_.begin()) - 1;
  hint = -static_cast<int>(g) - 1;
  return {0.0, false};
}

double CouplingFunction::deriv(double psi) const {
  const double u = wrap_angle(psi);
  if (kind_ == CouplingKind::ExactPiecewise) {
    const int i = find_profile(u);
    if (i < 0) return 0.0;
    const BumpProfile& p = profiles_[static_cast<std::size_t>(i)];
    return p.deriv_offset(p.support().offset(u));
  }
  const double z = (std::cos(ks_.b) - std::cos(ks_.a - u)) / ks_.eps;
  const double h = 1.0 / (1.0 + std::exp(-2.0 * z));
  const double dz = -std::sin(ks_.a - u) / ks_.eps;
  const double dh = 2.0 * h * (1.0 - h) * dz;
  return -std::cos(u + ks_.alpha) * h - std::sin(u + ks_.alpha) * dh;
}

bool CouplingFunction::in_dead_zone(double psi) const {
  if (kind_ == CouplingKind::ExactPiecewise) return find_profile(wrap_angle(psi)) < 0;
  return dead_zones_.contains(psi);
}

bool is_dead_zone_symmetric(const CouplingFunction& g) {
  const DeadZoneSet& dz = g.dead_zones();
  if (dz.empty()) return true;
  return dz.same_as(dz.reflected(), 1e-12);
}

}  // namespace deadzone
