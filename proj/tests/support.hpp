// Test-only generators and oracles. Nothing here calls the code under test
// for the value it is meant to check.
#ifndef DEADZONE_TESTS_SUPPORT_HPP
#define DEADZONE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "deadzone/coupling.hpp"
#include "deadzone/graph.hpp"
#include "deadzone/network.hpp"

namespace testing {

using deadzone::kPi;
using deadzone::kTwoPi;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Eigen::VectorXd random_theta(Rng& rng, int n) {
  Eigen::VectorXd t(n);
  for (int k = 0; k < n; ++k) t(k) = uniform(rng, 0.0, kTwoPi);
  return t;
}

/// Piecewise coupling with 1..max_zones live zones at random positions.
/// Boundaries are at least `min_gap` apart.
inline deadzone::CouplingFunction random_piecewise(Rng& rng, int max_zones = 3, double min_gap = 0.05) {
  const int m = uniform_int(rng, 1, max_zones);
  std::vector<double> cuts;
  while (true) {
    cuts.clear();
    for (int i = 0; i < 2 * m; ++i) cuts.push_back(uniform(rng, 0.0, kTwoPi));
    std::sort(cuts.begin(), cuts.end());
    bool ok = cuts.front() + kTwoPi - cuts.back() >= min_gap;
    for (int i = 0; i + 1 < 2 * m; ++i) ok = ok && cuts[i + 1] - cuts[i] >= min_gap;
    if (ok) break;
  }
  const int shift = uniform_int(rng, 0, 1);  // which alternate arcs are live
  std::vector<deadzone::BumpProfile> profiles;
  for (int i = 0; i < m; ++i) {
    const double start = cuts[(2 * i + shift) % (2 * m)];
    double end = cuts[(2 * i + shift + 1) % (2 * m)];
    if (end <= start) end += kTwoPi;
    const double center = start + uniform(rng, 0.3, 0.7) * (end - start);
    double slope = uniform(rng, 0.2, 2.0) * (uniform_int(rng, 0, 1) ? 1.0 : -1.0);
    profiles.emplace_back(center, deadzone::CircleArc(start, end - start), uniform(rng, -1.0, 1.0), slope);
  }
  return deadzone::CouplingFunction::piecewise(std::move(profiles));
}

/// Each ordered pair present with probability p.
inline deadzone::DirectedGraph random_graph(Rng& rng, int n, double p = 0.5) {
  deadzone::DirectedGraph h(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j != k && uniform(rng, 0.0, 1.0) < p) h.add_edge(j, k);
    }
  }
  return h;
}

/// Transitive closure by Floyd–Warshall: reach(j,k) iff a directed path j→k exists.
inline std::vector<std::vector<bool>> reachability(const deadzone::DirectedGraph& h) {
  const int n = h.order();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int j = 0; j < n; ++j) {
    r[j][j] = true;
    for (int k = 0; k < n; ++k) r[j][k] = r[j][k] || h.has_edge(j, k);
  }
  for (int m = 0; m < n; ++m) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) r[j][k] = r[j][k] || (r[j][m] && r[m][k]);
    }
  }
  return r;
}

inline bool oracle_has_root(const deadzone::DirectedGraph& h) {
  const auto r = reachability(h);
  for (const auto& row : r) {
    if (std::all_of(row.begin(), row.end(), [](bool b) { return b; })) return true;
  }
  return false;
}

/// Random graph with a spanning diverging tree: a random tree plus extra edges.
inline deadzone::DirectedGraph random_rooted_graph(Rng& rng, int n, double extra = 0.3) {
  std::vector<int> order(n);
  for (int k = 0; k < n; ++k) order[k] = k;
  std::shuffle(order.begin(), order.end(), rng);
  deadzone::DirectedGraph h(n);
  for (int i = 1; i < n; ++i) h.add_edge(order[uniform_int(rng, 0, i - 1)], order[i]);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j != k && uniform(rng, 0.0, 1.0) < extra) h.add_edge(j, k);
    }
  }
  return h;
}

/// h plus each missing ordered pair with probability p.
inline deadzone::DirectedGraph random_supergraph(Rng& rng, const deadzone::DirectedGraph& h, double p = 0.5) {
  deadzone::DirectedGraph a = h;
  for (int j = 0; j < h.order(); ++j) {
    for (int k = 0; k < h.order(); ++k) {
      if (j != k && uniform(rng, 0.0, 1.0) < p) a.add_edge(j, k);
    }
  }
  return a;
}

/// Live test straight from the profile supports, with remainder() instead of
/// the library's wrapping and search.
inline bool oracle_live(const deadzone::CouplingFunction& g, double psi) {
  if (g.kind() == deadzone::CouplingKind::AnalyticKS) {
    const auto& p = g.ks_params();
    if (p.b == 0.0) return true;
    return std::abs(std::remainder(psi - p.a, kTwoPi)) > p.b;
  }
  for (const auto& prof : g.profiles()) {
    double u = std::remainder(psi - prof.support().start, kTwoPi);
    if (u < 0.0) u += kTwoPi;
    if (u > 0.0 && u < prof.support().width) return true;
  }
  return false;
}

inline deadzone::DirectedGraph oracle_effective(const deadzone::StructuralNetwork& net,
                                                const Eigen::VectorXd& theta) {
  deadzone::DirectedGraph h(net.size());
  for (int j = 0; j < net.size(); ++j) {
    for (int k = 0; k < net.size(); ++k) {
      if (j != k && net.structure.has_edge(j, k) && oracle_live(net.coupling, theta(j) - theta(k))) {
        h.add_edge(j, k);
      }
    }
  }
  return h;
}

/// Smallest distance from ψ to any live-zone boundary (profile support ends).
inline double oracle_boundary_distance(const deadzone::CouplingFunction& g, double psi) {
  double best = kTwoPi;
  auto dist = [](double a, double b) { return std::abs(std::remainder(a - b, kTwoPi)); };
  if (g.kind() == deadzone::CouplingKind::AnalyticKS) {
    const auto& p = g.ks_params();
    return std::min(dist(psi, p.a - p.b), dist(psi, p.a + p.b));
  }
  for (const auto& prof : g.profiles()) {
    best = std::min({best, dist(psi, prof.support().start), dist(psi, prof.support().start + prof.support().width)});
  }
  return best;
}

/// Kuramoto–Sakaguchi coupling in the tanh form, written independently.
inline double oracle_ks(double a, double b, double eps, double alpha, double psi) {
  const double h = 0.5 * (std::tanh((std::cos(b) - std::cos(a - psi)) / eps) + 1.0);
  return -std::sin(psi + alpha) * h;
}

inline deadzone::CouplingFunction ks(double a, double b) {
  return deadzone::CouplingFunction::kuramoto_sakaguchi({a, b, 5e-3, 1.3});
}

/// Piecewise coupling with one live zone on the closed-complement of [lo, hi].
inline deadzone::CouplingFunction single_dead_zone(double lo, double hi) {
  const double width = kTwoPi - (hi - lo);
  const double start = hi;
  return deadzone::CouplingFunction::piecewise(
      {deadzone::BumpProfile(start + 0.5 * width, deadzone::CircleArc(start, width), 0.0, 1.0)});
}

}  // namespace testing

#endif  // DEADZONE_TESTS_SUPPORT_HPP
