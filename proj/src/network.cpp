#include "deadzone/network.hpp"

#include "deadzone/errors.hpp"

namespace deadzone {

StructuralNetwork all_to_all(int n, CouplingFunction g, double omega) {
  return StructuralNetwork{DirectedGraph::complete(n), omega, std::move(g)};
}

Eigen::VectorXd eval_field(const StructuralNetwork& net, const Eigen::VectorXd& theta) {
  Eigen::VectorXd out(theta.size());
  const FieldKernel field(net);
  field(theta, out);
  return out;
}

Eigen::MatrixXd finite_difference_jacobian(const StructuralNetwork& net,
                                           const Eigen::VectorXd& theta, double step) {
  const Eigen::Index n = theta.size();
  const FieldKernel field(net);
  Eigen::MatrixXd jac(n, n);
  Eigen::VectorXd plus(n), minus(n), fp(n), fm(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    plus = theta;
    minus = theta;
    plus(j) += step;
    minus(j) -= step;
    field(plus, fp);
    field(minus, fm);
    jac.col(j) = (fp - fm) / (2.0 * step);
  }
  return jac;
}

FieldKernel::FieldKernel(const StructuralNetwork& net) : net_(&net) {
  const DirectedGraph& a = net.structure;
  for (int k = 1; k < a.order(); ++k) {
    for (int j = 0; j < k; ++j) {
      const bool f = a.has_edge(j, k);
      const bool b = a.has_edge(k, j);
      if (f || b) pairs_.push_back({j, k, f, b, 0, 0});
    }
  }
}

void FieldKernel::operator()(const Eigen::VectorXd& theta, Eigen::VectorXd& out,
                             DirectedGraph* live) const {
  const int n = net_->size();
  if (theta.size() != n) throw PreconditionError("phase vector size does not match the network");
  const CouplingFunction& g = net_->coupling;
  out.setConstant(n, net_->omega);
  if (live) live->clear_edges();
  for (const Pair& p : pairs_) {
    const double d = theta(p.j) - theta(p.k);
    if (p.forward) {
      // edge (j,k) feeds oscillator k with g(θ_j − θ_k)
      const auto s = g.sample_hinted(d, p.hint_forward);
      out(p.k) += s.value;
      if (live && s.live) live->set_bit(DirectedGraph::edge_index(p.j, p.k));
    }
    if (p.backward) {
      const auto s = g.sample_hinted(-d, p.hint_backward);
      out(p.j) += s.value;
      if (live && s.live) live->set_bit(DirectedGraph::edge_index(p.k, p.j));
    }
  }
}

}  // namespace deadzone
