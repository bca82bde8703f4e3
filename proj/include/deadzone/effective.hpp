#ifndef DEADZONE_EFFECTIVE_HPP
#define DEADZONE_EFFECTIVE_HPP

#include <cstdint>
#include <set>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "deadzone/network.hpp"

namespace deadzone {

/// (φ, …, φ).
Eigen::VectorXd sync_point(int n, double phi = 0.0);
/// (0, 2π/n, …, (n−1)2π/n).
Eigen::VectorXd splay_point(int n);

/// Permutation action on phases: (γθ)_{γ(k)} = θ_k. With this action the
/// effective graph is equivariant, G(γθ) = γ·G(θ) for γ ∈ Γ(A).
Eigen::VectorXd permute_point(const Permutation& gamma, const Eigen::VectorXd& theta);

/// Edge (j,k) iff A(j,k) = 1 and θ_j − θ_k lies outside the dead zones.
DirectedGraph effective_graph(const StructuralNetwork& net, const Eigen::VectorXd& theta);

inline bool region_membership(const StructuralNetwork& net, const Eigen::VectorXd& theta,
                              const DirectedGraph& h) {
  return effective_graph(net, theta) == h;
}

/// Directed cycles guaranteed inside the effective graph of the all-to-all
/// network at the splay point. For each step n in 1..N−1 with −2nπ/N live,
/// every edge (k, k+n) is present; the edges close into one cycle through all
/// vertices when gcd(n, N) = 1 and into n cycles of length N/n when n | N.
std::vector<DirectedGraph> predict_splay_cycles(const CouplingFunction& g, int n);

enum class CutStructure { SkewV1ToV2, SkewV2ToV1, Product, Coupled };
const char* to_string(CutStructure c);

struct SkewProductReport {
  CutStructure structure;
  DirectedGraph graph;       ///< effective graph at θ
  Eigen::MatrixXd jacobian;  ///< J(k,j) = ∂F_k/∂θ_j, central differences
  /// Every entry J(k,j) for an absent edge (j,k) is below `absent_tol`.
  bool consistent;
  double max_absent_entry;
};

/// Classifies the cut {v1, v2} from the effective graph's cut-set and
/// cross-checks it against a finite-difference Jacobian. Throws BoundaryError
/// if a structural phase difference is within `boundary_tol` of a dead-zone
/// endpoint.
SkewProductReport skew_product_check(const StructuralNetwork& net, const Eigen::VectorXd& theta,
                                     const std::vector<int>& v1, const std::vector<int>& v2,
                                     double boundary_tol = 1e-6, double absent_tol = 1e-8,
                                     double fd_step = 1e-6);

/// Graph numbers over the torus in coordinates φ1 = θ2 − θ1, φ2 = θ3 − θ2,
/// sampled at cell centres; θ = (0, φ1, φ1 + φ2).
struct RasterGrid {
  int resolution = 0;
  std::vector<std::uint8_t> nu;  ///< row-major, index i·R + j, i along φ1

  double phi(int i) const { return (i + 0.5) * kTwoPi / resolution; }
  int at(int i, int j) const { return nu[static_cast<std::size_t>(i) * resolution + j]; }
};

RasterGrid raster_cir(const StructuralNetwork& net, int resolution);

struct GridSampler {
  int resolution = 0;
};
struct RandomSampler {
  std::size_t count = 0;
  std::uint64_t seed = 0;
};
using Sampler = std::variant<GridSampler, RandomSampler>;

/// Distinct effective graphs found over the sample. The grid sampler fixes
/// θ1 = 0 and walks cell centres of the remaining N−1 successive differences.
std::set<DirectedGraph> catalog_realised(const StructuralNetwork& net, const Sampler& sampler);

/// Bit ν set for each graph in a catalog of 3-vertex graphs.
std::uint64_t catalog_mask(const std::set<DirectedGraph>& catalog);

}  // namespace deadzone

#endif  // DEADZONE_EFFECTIVE_HPP
