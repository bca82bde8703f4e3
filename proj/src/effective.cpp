#include "deadzone/effective.hpp"

#include <numeric>
#include <random>

#include "deadzone/errors.hpp"
#include "deadzone/parallel.hpp"

namespace deadzone {

Eigen::VectorXd sync_point(int n, double phi) {
  if (n < 2) throw PreconditionError("phase points need at least 2 oscillators");
  return Eigen::VectorXd::Constant(n, wrap_angle(phi));
}

Eigen::VectorXd splay_point(int n) {
  if (n < 2) throw PreconditionError("phase points need at least 2 oscillators");
  Eigen::VectorXd theta(n);
  for (int k = 0; k < n; ++k) theta(k) = kTwoPi * k / n;
  return theta;
}

Eigen::VectorXd permute_point(const Permutation& gamma, const Eigen::VectorXd& theta) {
  if (gamma.size() != theta.size()) throw PreconditionError("permutation size does not match point");
  Eigen::VectorXd out(theta.size());
  for (int k = 0; k < gamma.size(); ++k) out(gamma(k)) = theta(k);
  return out;
}

DirectedGraph effective_graph(const StructuralNetwork& net, const Eigen::VectorXd& theta) {
  const int n = net.size();
  if (theta.size() != n) throw PreconditionError("phase vector size does not match the network");
  const DirectedGraph& a = net.structure;
  const CouplingFunction& g = net.coupling;
  DirectedGraph h(n);
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      const double d = theta(j) - theta(k);
      if (a.has_edge(j, k) && !g.in_dead_zone(d)) h.set_bit(DirectedGraph::edge_index(j, k));
      if (a.has_edge(k, j) && !g.in_dead_zone(-d)) h.set_bit(DirectedGraph::edge_index(k, j));
    }
  }
  return h;
}

std::vector<DirectedGraph> predict_splay_cycles(const CouplingFunction& g, int n) {
  if (n < 2) throw PreconditionError("splay cycles need at least 2 oscillators");
  std::vector<DirectedGraph> cycles;
  for (int step = 1; step < n; ++step) {
    // edge (k, k+step) carries θ_k − θ_{k+step} = −2π·step/n
    if (g.in_dead_zone(-kTwoPi * step / n)) continue;
    const int blocks = std::gcd(step, n);
    const int length = n / blocks;
    for (int r = 0; r < blocks; ++r) {
      DirectedGraph c(n);
      int v = r;
      for (int i = 0; i < length; ++i) {
        const int w = (v + step) % n;
        c.add_edge(v, w);
        v = w;
      }
      cycles.push_back(std::move(c));
    }
  }
  return cycles;
}

const char* to_string(CutStructure c) {
  switch (c) {
    case CutStructure::SkewV1ToV2: return "skew_v1_to_v2";
    case CutStructure::SkewV2ToV1: return "skew_v2_to_v1";
    case CutStructure::Product: return "product";
    case CutStructure::Coupled: return "coupled";
  }
  return "?";
}

SkewProductReport skew_product_check(const StructuralNetwork& net, const Eigen::VectorXd& theta,
                                     const std::vector<int>& v1, const std::vector<int>& v2,
                                     double boundary_tol, double absent_tol, double fd_step) {
  const int n = net.size();
  if (theta.size() != n) throw PreconditionError("phase vector size does not match the network");
  std::vector<int> side(static_cast<std::size_t>(n), 0);
  for (int v : v1) {
    if (v < 0 || v >= n || side[v] != 0) throw PreconditionError("invalid vertex partition");
    side[v] = 1;
  }
  for (int v : v2) {
    if (v < 0 || v >= n || side[v] != 0) throw PreconditionError("invalid vertex partition");
    side[v] = 2;
  }
  if (std::find(side.begin(), side.end(), 0) != side.end())
    throw PreconditionError("partition does not cover every vertex");

  for (const auto& [j, k] : net.structure.edges()) {
    if (net.coupling.distance_to_dead_zone_boundary(theta(j) - theta(k)) < boundary_tol)
      throw BoundaryError("phase difference within tolerance of a dead-zone endpoint");
  }

  SkewProductReport rep;
  rep.graph = effective_graph(net, theta);
  bool forward = false, backward = false;
  for (const auto& [j, k] : rep.graph.edges()) {
    if (side[j] == 1 && side[k] == 2) forward = true;
    if (side[j] == 2 && side[k] == 1) backward = true;
  }
  if (forward && backward) rep.structure = CutStructure::Coupled;
  else if (forward) rep.structure = CutStructure::SkewV1ToV2;
  else if (backward) rep.structure = CutStructure::SkewV2ToV1;
  else rep.structure = CutStructure::Product;

  rep.jacobian = finite_difference_jacobian(net, theta, fd_step);
  rep.max_absent_entry = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k || rep.graph.has_edge(j, k)) continue;
      rep.max_absent_entry = std::max(rep.max_absent_entry, std::abs(rep.jacobian(k, j)));
    }
  }
  rep.consistent = rep.max_absent_entry < absent_tol;
  return rep;
}

RasterGrid raster_cir(const StructuralNetwork& net, int resolution) {
  if (net.size() != 3) throw PreconditionError("raster requires 3 oscillators");
  if (resolution < 2) throw PreconditionError("raster resolution must be at least 2");
  RasterGrid grid;
  grid.resolution = resolution;
  grid.nu.assign(static_cast<std::size_t>(resolution) * resolution, 0);
  parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t i) {
    Eigen::VectorXd theta(3);
    const double phi1 = grid.phi(static_cast<int>(i));
    for (int j = 0; j < resolution; ++j) {
      theta << 0.0, phi1, phi1 + grid.phi(j);
      grid.nu[i * resolution + j] = static_cast<std::uint8_t>(graph_number(effective_graph(net, theta)));
    }
  });
  return grid;
}

namespace {

std::set<DirectedGraph> catalog_grid(const StructuralNetwork& net, int resolution) {
  if (resolution < 1) throw PreconditionError("grid resolution must be positive");
  const int n = net.size();
  const int dims = n - 1;
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) {
    if (total > (std::size_t{1} << 40) / resolution) throw CapacityError("catalog grid too large");
    total *= resolution;
  }
  // Outer index over the first difference; each worker walks the rest.
  const std::size_t inner = total / resolution;
  std::vector<std::set<DirectedGraph>> found(static_cast<std::size_t>(resolution));
  parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t i0) {
    Eigen::VectorXd theta(n);
    std::vector<int> idx(static_cast<std::size_t>(dims), 0);
    idx[0] = static_cast<int>(i0);
    for (std::size_t m = 0; m < inner; ++m) {
      std::size_t rest = m;
      for (int d = dims - 1; d >= 1; --d) {
        idx[d] = static_cast<int>(rest % resolution);
        rest /= resolution;
      }
      theta(0) = 0.0;
      for (int d = 0; d < dims; ++d) theta(d + 1) = theta(d) + (idx[d] + 0.5) * kTwoPi / resolution;
      found[i0].insert(effective_graph(net, theta));
    }
  });
  std::set<DirectedGraph> out;
  for (auto& s : found) out.merge(s);
  return out;
}

std::set<DirectedGraph> catalog_random(const StructuralNetwork& net, std::size_t count,
                                       std::uint64_t seed) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<std::set<DirectedGraph>> found(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, kTwoPi);
    Eigen::VectorXd theta(net.size());
    const std::size_t end = std::min(count, (b + 1) * kBlock);
    for (std::size_t s = b * kBlock; s < end; ++s) {
      theta(0) = 0.0;
      for (int k = 1; k < net.size(); ++k) theta(k) = unit(rng);
      found[b].insert(effective_graph(net, theta));
    }
  });
  std::set<DirectedGraph> out;
  for (auto& s : found) out.merge(s);
  return out;
}

}  // namespace

std::set<DirectedGraph> catalog_realised(const StructuralNetwork& net, const Sampler& sampler) {
  if (const auto* g = std::get_if<GridSampler>(&sampler)) return catalog_grid(net, g->resolution);
  const auto& r = std::get<RandomSampler>(sampler);
  return catalog_random(net, r.count, r.seed);
}

std::uint64_t catalog_mask(const std::set<DirectedGraph>& catalog) {
  std::uint64_t mask = 0;
  for (const auto& h : catalog) mask |= std::uint64_t{1} << graph_number(h);
  return mask;
}

}  // namespace deadzone
