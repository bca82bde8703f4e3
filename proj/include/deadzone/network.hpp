#ifndef DEADZONE_NETWORK_HPP
#define DEADZONE_NETWORK_HPP

#include <vector>

#include <Eigen/Dense>

#include "deadzone/coupling.hpp"
#include "deadzone/graph.hpp"

namespace deadzone {

/// Identical phase oscillators θ̇_k = ω + Σ_j A(j,k) g(θ_j − θ_k).
struct StructuralNetwork {
  DirectedGraph structure;
  double omega = 1.0;
  CouplingFunction coupling;

  int size() const { return structure.order(); }
};

/// All-to-all network on n oscillators.
StructuralNetwork all_to_all(int n, CouplingFunction g, double omega = 1.0);

/// The vector field, component k = ω + Σ_j A(j,k) g(θ_j − θ_k).
Eigen::VectorXd eval_field(const StructuralNetwork& net, const Eigen::VectorXd& theta);

/// Central-difference Jacobian J(k,j) = ∂F_k/∂θ_j.
Eigen::MatrixXd finite_difference_jacobian(const StructuralNetwork& net,
                                           const Eigen::VectorXd& theta, double step = 1e-6);

/// Allocation-free field evaluation for the integrator. Walks the structural
/// edges once per call and can report the live edges as a graph bitset.
/// Keeps per-edge lookup hints, so one instance must not be shared between
/// threads.
class FieldKernel {
 public:
  explicit FieldKernel(const StructuralNetwork& net);

  /// out = F(theta); when `live` is non-null it receives the effective graph.
  void operator()(const Eigen::VectorXd& theta, Eigen::VectorXd& out,
                  DirectedGraph* live = nullptr) const;

  const StructuralNetwork& network() const { return *net_; }

 private:
  struct Pair {
    int j, k;
    bool forward;   // (j,k) structural
    bool backward;  // (k,j) structural
    mutable int hint_forward = 0;
    mutable int hint_backward = 0;
  };
  const StructuralNetwork* net_;
  std::vector<Pair> pairs_;
};

}  // namespace deadzone

#endif  // DEADZONE_NETWORK_HPP
