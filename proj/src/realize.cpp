#include "deadzone/realize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "deadzone/effective.hpp"
#include "deadzone/errors.hpp"

namespace deadzone {

namespace {

constexpr double kMaxZoneWidth = 0.1;
constexpr double kGenericityFloor = 1e-9;

BumpProfile centred_profile(double center, double width) {
  return BumpProfile(center, CircleArc(center - 0.5 * width, width), 0.0, 1.0);
}

// Largest circular gap between sorted values in [0, 2π): (start, length).
std::pair<double, double> largest_gap(std::vector<double> values) {
  if (values.empty()) return {0.0, kTwoPi};
  std::sort(values.begin(), values.end());
  double best_start = values.back();
  double best_len = values.front() + kTwoPi - values.back();
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double len = values[i + 1] - values[i];
    if (len > best_len) {
      best_len = len;
      best_start = values[i];
    }
  }
  return {best_start, best_len};
}

BumpProfile profile_in_largest_gap(const std::vector<double>& values) {
  const auto [start, len] = largest_gap(values);
  return centred_profile(start + 0.5 * len, std::min(0.5 * len, kMaxZoneWidth));
}

void check_point(const DirectedGraph& h, const Eigen::VectorXd& theta) {
  if (h.order() < 2) throw PreconditionError("target graph needs at least 2 vertices");
  if (theta.size() != h.order()) throw PreconditionError("point size does not match the target graph");
}

}  // namespace

RealizationCertificate::RealizationCertificate(StructuralNetwork network, Eigen::VectorXd theta,
                                               DirectedGraph target,
                                               std::optional<double> collective_frequency)
    : network_(std::move(network)),
      theta_(wrap_phases(theta)),
      target_(std::move(target)),
      collective_frequency_(collective_frequency) {
  if (effective_graph(network_, theta_) != target_) {
    throw std::logic_error("realization does not reproduce its target graph");
  }
}

double equilibrium_residual(const StructuralNetwork& net, const RelativeEquilibrium& eq) {
  return (eval_field(net, eq.theta).array() - eq.frequency).abs().maxCoeff();
}

std::vector<double> ordered_differences(const Eigen::VectorXd& theta) {
  const int n = static_cast<int>(theta.size());
  std::vector<double> d(static_cast<std::size_t>(n) * (n - 1));
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      d[DirectedGraph::edge_index(j, k)] = wrap_angle(theta(j) - theta(k));
      d[DirectedGraph::edge_index(k, j)] = wrap_angle(theta(k) - theta(j));
    }
  }
  return d;
}

double min_circular_separation(std::vector<double> values) {
  if (values.size() < 2) return kTwoPi;
  std::sort(values.begin(), values.end());
  double s = values.front() + kTwoPi - values.back();
  for (std::size_t i = 0; i + 1 < values.size(); ++i) s = std::min(s, values[i + 1] - values[i]);
  return s;
}

RealizationCertificate realize_generic(const DirectedGraph& h, const Eigen::VectorXd& theta) {
  check_point(h, theta);
  const std::vector<double> diffs = ordered_differences(theta);
  const double s = min_circular_separation(diffs);
  if (s < kGenericityFloor) throw GenericityError("phase differences are not pairwise distinct");
  const double width = std::min(0.5 * s, kMaxZoneWidth);

  std::vector<BumpProfile> profiles;
  for (const auto& [j, k] : h.edges()) {
    profiles.push_back(centred_profile(diffs[DirectedGraph::edge_index(j, k)], width));
  }
  if (profiles.empty()) profiles.push_back(profile_in_largest_gap(diffs));
  const int n = h.order();
  return RealizationCertificate(all_to_all(n, CouplingFunction::piecewise(std::move(profiles))),
                                theta, h);
}

// ---------------------------------------------------------------------------
// One coupling function for many graphs

namespace {

struct LabelledDifference {
  double value;
  bool live;
};

// Live zones covering each maximal run of cyclically consecutive live
// differences, padded by half a width on either side.
std::vector<BumpProfile> run_profiles(std::vector<LabelledDifference> diffs, double width) {
  std::sort(diffs.begin(), diffs.end(),
            [](const auto& l, const auto& r) { return l.value < r.value; });
  const std::size_t m = diffs.size();
  const auto live_count =
      static_cast<std::size_t>(std::count_if(diffs.begin(), diffs.end(), [](auto& d) { return d.live; }));
  std::vector<double> values(m);
  std::transform(diffs.begin(), diffs.end(), values.begin(), [](auto& d) { return d.value; });
  if (live_count == 0) return {profile_in_largest_gap(values)};

  // Start scanning right after a break: a dead difference, or the largest gap
  // when every difference is live.
  std::size_t first = 0;
  if (live_count == m) {
    // diffs is sorted, so the scan starts at the upper end of the widest gap
    double widest = diffs.front().value + kTwoPi - diffs.back().value;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      if (diffs[i + 1].value - diffs[i].value > widest) {
        widest = diffs[i + 1].value - diffs[i].value;
        first = i + 1;
      }
    }
  } else {
    while (diffs[first].live) ++first;
  }

  std::vector<BumpProfile> out;
  std::size_t i = 0;
  while (i < m) {
    const auto& d = diffs[(first + i) % m];
    if (!d.live) {
      ++i;
      continue;
    }
    const double run_start = d.value;
    double run_span = 0.0;
    std::size_t jdx = i + 1;
    while (jdx < m && diffs[(first + jdx) % m].live) {
      run_span = wrap_angle(diffs[(first + jdx) % m].value - run_start);
      ++jdx;
    }
    const double support_width = run_span + width;
    const double center = run_start + 0.5 * run_span;
    out.emplace_back(center, CircleArc(run_start - 0.5 * width, support_width), 0.0, 1.0);
    i = jdx;
  }
  return out;
}

// Generalised golden ratio: the positive root of x^{d+1} = x + 1.
double kronecker_base(int d) {
  double x = 2.0;
  for (int it = 0; it < 64; ++it) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

}  // namespace

SharedRealization realize_all_one_g(std::span<const DirectedGraph> graphs) {
  if (graphs.empty()) throw PreconditionError("need at least one target graph");
  const int n = graphs.front().order();
  if (n < 2) throw PreconditionError("target graph needs at least 2 vertices");
  for (const auto& h : graphs) {
    if (h.order() != n) throw PreconditionError("all target graphs must have the same order");
  }
  const int dims = n - 1;
  const double base = kronecker_base(dims);
  Eigen::VectorXd alpha(dims);
  for (int d = 0; d < dims; ++d) alpha(d) = std::pow(base, -(d + 1));

  constexpr int kMaxAttempts = 64;
  constexpr double kMinSeparation = 1e-7;
  const std::size_t count = graphs.size();
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::size_t offset = 1 + static_cast<std::size_t>(attempt) * count;
    std::vector<Eigen::VectorXd> points(count);
    std::vector<LabelledDifference> diffs;
    diffs.reserve(count * n * (n - 1));
    std::vector<double> values;
    values.reserve(count * n * (n - 1));
    for (std::size_t p = 0; p < count; ++p) {
      Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
      for (int d = 0; d < dims; ++d) {
        const double x = static_cast<double>(offset + p) * alpha(d);
        theta(d + 1) = kTwoPi * (x - std::floor(x));
      }
      const std::vector<double> od = ordered_differences(theta);
      for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
          if (j == k) continue;
          const double v = od[DirectedGraph::edge_index(j, k)];
          diffs.push_back({v, graphs[p].has_edge(j, k)});
          values.push_back(v);
        }
      }
      points[p] = std::move(theta);
    }
    const double s = min_circular_separation(values);
    if (s < kMinSeparation) continue;

    const double width = std::min(0.5 * s, kMaxZoneWidth);
    CouplingFunction g = CouplingFunction::piecewise(run_profiles(std::move(diffs), width));
    SharedRealization out{g, {}};
    out.certificates.reserve(count);
    for (std::size_t p = 0; p < count; ++p) {
      out.certificates.emplace_back(all_to_all(n, g), points[p], graphs[p]);
    }
    return out;
  }
  throw CapacityError("no collision-free batch of points found");
}

RealizationCertificate realize_delta(const DirectedGraph& h, double a, double delta) {
  const int n = h.order();
  if (n < 2) throw PreconditionError("target graph needs at least 2 vertices");
  const double a_max = kPi / std::ldexp(1.0, n - 1);
  if (!(a > 0.0 && a < a_max)) throw PreconditionError("spacing must satisfy 0 < a < π/2^(N−1)");
  if (!(delta > 0.0 && delta < a)) throw PreconditionError("live-zone width must satisfy 0 < δ < a");

  Eigen::VectorXd theta(n);
  for (int i = 0; i < n; ++i) theta(i) = (std::ldexp(1.0, i) - 1.0) * a;

  std::vector<BumpProfile> profiles;
  for (const auto& [j, k] : h.edges()) profiles.push_back(centred_profile(theta(j) - theta(k), delta));
  // Every difference lies within π − a of 0, so π sits in a gap of width ≥ 2a.
  if (profiles.empty()) profiles.push_back(centred_profile(kPi, delta));
  return RealizationCertificate(all_to_all(n, CouplingFunction::piecewise(std::move(profiles))),
                                theta, h);
}

// ---------------------------------------------------------------------------
// Stable realization

StabilityReport stability_report(const StructuralNetwork& net, const Eigen::VectorXd& theta,
                                 const DirectedGraph& h) {
  const int n = net.size();
  StabilityReport rep;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [j, k] : h.edges()) {
    if (net.structure.has_edge(j, k)) t(j, k) = net.coupling.deriv(theta(j) - theta(k));
  }
  for (int k = 0; k < n; ++k) t(k, k) = -t.col(k).sum();
  rep.linearization = t;

  rep.discs_in_closed_left_half_plane = true;
  for (int k = 0; k < n; ++k) {
    double radius = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != k) radius += std::abs(t(j, k));
    }
    rep.discs.push_back({t(k, k), radius});
    if (t(k, k) + radius > 1e-12 * std::max(1.0, radius)) rep.discs_in_closed_left_half_plane = false;
  }
  rep.zero_multiplicity = zero_eigenvalue_multiplicity(-t);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(t, false);
  rep.eigenvalues = solver.eigenvalues();
  Eigen::Index nearest = 0;
  rep.eigenvalues.cwiseAbs().minCoeff(&nearest);
  rep.max_nonzero_real_part = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) {
    if (i != nearest) rep.max_nonzero_real_part = std::max(rep.max_nonzero_real_part, rep.eigenvalues(i).real());
  }
  rep.stable = rep.zero_multiplicity == 1 && rep.discs_in_closed_left_half_plane &&
               rep.max_nonzero_real_part < -1e-9;
  return rep;
}

namespace {

// Residues {0 = s_0 < s_1 < ... } of size n with pairwise distinct differences
// mod m, by depth-first search; empty when none exists.
std::vector<int> modular_sidon_set(int n, int m) {
  std::vector<int> set{0};
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  auto dfs = [&](auto&& self, int next) -> bool {
    if (static_cast<int>(set.size()) == n) return true;
    for (int c = next; c < m; ++c) {
      std::vector<int> added;
      bool ok = true;
      for (int s : set) {
        const int d1 = (c - s) % m;
        const int d2 = (m - d1) % m;
        if (used[d1] || used[d2] || d1 == d2) {
          ok = false;
          break;
        }
        used[d1] = used[d2] = 1;
        added.push_back(d1);
        added.push_back(d2);
      }
      if (ok) {
        set.push_back(c);
        if (self(self, c + 1)) return true;
        set.pop_back();
      }
      for (int d : added) used[d] = 0;
    }
    return false;
  };
  return dfs(dfs, 1) ? set : std::vector<int>{};
}

}  // namespace

Eigen::VectorXd generic_point(int n, std::uint64_t seed) {
  if (n < 2) throw PreconditionError("phase points need at least 2 oscillators");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd theta(n);

  if (n <= 8) {
    std::vector<int> sidon;
    int m = n * (n - 1) + 1;
    while ((sidon = modular_sidon_set(n, m)).empty()) ++m;
    std::shuffle(sidon.begin(), sidon.end(), rng);
    const double offset = unit(rng) * m;
    for (int k = 0; k < n; ++k) {
      const double jitter = 0.1 * (unit(rng) - 0.5);
      theta(k) = wrap_angle(kTwoPi * (sidon[k] + offset + jitter) / m);
    }
    return theta;
  }
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (int k = 0; k < n; ++k) theta(k) = kTwoPi * unit(rng);
    if (min_circular_separation(ordered_differences(theta)) >= 1e-3) return theta;
  }
  throw CapacityError("no generic point found");
}

StableRealization realize_stable(const DirectedGraph& h, const DirectedGraph& a, double omega,
                                 std::uint64_t seed) {
  if (h.order() != a.order()) throw PreconditionError("target and structural graphs differ in size");
  if (h.order() < 2) throw PreconditionError("target graph needs at least 2 vertices");
  if (!h.is_subgraph_of(a)) throw ContainmentError("target graph is not contained in the structural graph");
  if (!has_spanning_diverging_tree(h)) {
    throw StructuralError("target graph has no spanning diverging tree, so it cannot be realised stably");
  }
  const int n = h.order();
  const Eigen::VectorXd theta = generic_point(n, seed);
  const std::vector<double> diffs = ordered_differences(theta);
  const double width = std::min(0.5 * min_circular_separation(diffs), kMaxZoneWidth);
  std::vector<BumpProfile> profiles;
  for (const auto& [j, k] : h.edges()) {
    profiles.push_back(centred_profile(diffs[DirectedGraph::edge_index(j, k)], width));
  }
  StructuralNetwork net{a, omega, CouplingFunction::piecewise(std::move(profiles))};
  // Every live centre carries value 0, so each incoming sum vanishes and Ω = ω.
  RelativeEquilibrium eq{wrap_phases(theta), omega};
  StabilityReport report = stability_report(net, eq.theta, h);
  RealizationCertificate cert(std::move(net), theta, h, omega);
  return StableRealization{std::move(cert), std::move(eq), std::move(report)};
}

}  // namespace deadzone
