#ifndef DEADZONE_REALIZE_HPP
#define DEADZONE_REALIZE_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "deadzone/network.hpp"

namespace deadzone {

/// A network and a point whose effective graph is `target`. The constructor
/// re-runs the effective-graph computation and throws std::logic_error on a
/// mismatch, so every instance is verified.
class RealizationCertificate {
 public:
  RealizationCertificate(StructuralNetwork network, Eigen::VectorXd theta, DirectedGraph target,
                         std::optional<double> collective_frequency = std::nullopt);

  const StructuralNetwork& network() const { return network_; }
  const CouplingFunction& coupling() const { return network_.coupling; }
  const Eigen::VectorXd& theta() const { return theta_; }
  const DirectedGraph& target() const { return target_; }
  std::size_t dead_zone_count() const { return network_.coupling.dead_zone_count(); }
  std::size_t live_zone_count() const { return network_.coupling.dead_zones().live_zones().size(); }
  std::optional<double> collective_frequency() const { return collective_frequency_; }

 private:
  StructuralNetwork network_;
  Eigen::VectorXd theta_;
  DirectedGraph target_;
  std::optional<double> collective_frequency_;
};

/// Rigid rotation Ωt·1 + θ°.
struct RelativeEquilibrium {
  Eigen::VectorXd theta;
  double frequency = 0.0;
};

/// max_k |F_k(θ°) − Ω|.
double equilibrium_residual(const StructuralNetwork& net, const RelativeEquilibrium& eq);

/// All ordered differences θ_j − θ_k (j ≠ k) reduced to [0, 2π), in edge-index order.
std::vector<double> ordered_differences(const Eigen::VectorXd& theta);

/// Smallest circular gap between distinct entries of `values` (0 on a repeat).
double min_circular_separation(std::vector<double> values);

/// Live zones of width min(s/2, 0.1) centred at the differences of the
/// edges of h, with value 0 and slope 1; s is the separation of all ordered
/// differences of θ. Throws GenericityError for s < 1e-9. For an empty h the
/// single live zone sits in the largest gap.
RealizationCertificate realize_generic(const DirectedGraph& h, const Eigen::VectorXd& theta);

struct SharedRealization {
  CouplingFunction coupling;
  std::vector<RealizationCertificate> certificates;  ///< one per input graph, same order
};

/// One coupling function realising every listed graph (all of the same order)
/// at its own point. Points come from a Kronecker sequence; throws
/// CapacityError when no collision-free batch is found.
SharedRealization realize_all_one_g(std::span<const DirectedGraph> graphs);

/// Geometric spacing θ_i = (2^{i−1} − 1)·a with one live zone of width δ per
/// edge. Requires 0 < a < π/2^{N−1} and 0 < δ < a.
RealizationCertificate realize_delta(const DirectedGraph& h, double a, double delta);

struct GershgorinDisc {
  double center;
  double radius;
};

struct StabilityReport {
  Eigen::MatrixXd linearization;  ///< T: T(j,k) = A(j,k)H(j,k)g'(θ_j − θ_k), columns sum to 0
  std::vector<GershgorinDisc> discs;  ///< column discs of T
  bool discs_in_closed_left_half_plane = false;
  int zero_multiplicity = 0;  ///< of −T, by characteristic polynomial
  Eigen::VectorXcd eigenvalues;  ///< oracle, general eigensolver
  double max_nonzero_real_part = 0.0;  ///< over all eigenvalues except the one nearest 0
  bool stable = false;
};

StabilityReport stability_report(const StructuralNetwork& net, const Eigen::VectorXd& theta,
                                 const DirectedGraph& h);

struct StableRealization {
  RealizationCertificate certificate;
  RelativeEquilibrium equilibrium;
  StabilityReport stability;
};

/// A point whose ordered differences are spread on a modular Sidon set, so
/// the separation is close to 2π/(N²). Deterministic in `seed`.
Eigen::VectorXd generic_point(int n, std::uint64_t seed);

/// Realises h ⊆ a at an attracting relative equilibrium with Ω = ω. Throws
/// ContainmentError when h ⊄ a and StructuralError when h has no spanning
/// diverging tree.
StableRealization realize_stable(const DirectedGraph& h, const DirectedGraph& a, double omega,
                                 std::uint64_t seed);

}  // namespace deadzone

#endif  // DEADZONE_REALIZE_HPP
