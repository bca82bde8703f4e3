#ifndef DEADZONE_DYNAMICS_HPP
#define DEADZONE_DYNAMICS_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "deadzone/network.hpp"

namespace deadzone {

struct IntegrationOptions {
  double dt = 1e-3;
  int stride = 10;          ///< keep every stride-th step
  bool keep_samples = true;
};

struct GraphEvent {
  double time;
  DirectedGraph before;
  DirectedGraph after;
};

/// Samples are reduced to [0, 2π); `final_state` is the unreduced end point.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> samples;
  std::vector<GraphEvent> events;
  DirectedGraph initial_graph;
  DirectedGraph final_graph;
  Eigen::VectorXd initial_state;
  Eigen::VectorXd final_state;
  double t_end = 0.0;
  double dt = 0.0;
};

/// Classical RK4 with fixed step. A change of effective graph across a step
/// is localised by bisection on the step to within dt·1e-6; several changes
/// inside one step collapse to a single event.
Trajectory integrate(const StructuralNetwork& net, const Eigen::VectorXd& theta0, double t_end,
                     const IntegrationOptions& options = {});

/// Per sample, (θ_{i+1} − θ_1) mod 2π for i = 1..N−1.
std::vector<Eigen::VectorXd> phase_differences(const Trajectory& traj);

struct ItineraryEntry {
  DirectedGraph graph;
  double dwell;
};

/// Run-length encoding of the effective graph over [0, t_end].
std::vector<ItineraryEntry> graph_itinerary(const Trajectory& traj);

/// max_k |F_k(θ) − F_1(θ)|: speed of the phase differences.
double drift_rate(const StructuralNetwork& net, const Eigen::VectorXd& theta);

struct BasinProbe {
  Eigen::VectorXd center;
  double radius = 1e-2;
  int count = 20;
  std::uint64_t seed = 0;
  double t_end = 200.0;
  double dt = 1e-3;
};

struct ProbeRun {
  Eigen::VectorXd start;
  DirectedGraph terminal_graph;
  double last_event_time = 0.0;  ///< 0 when no event occurred
  std::size_t event_count = 0;
  double drift_rate = 0.0;
  Eigen::VectorXd terminal_state;
};

struct BasinReport {
  std::vector<ProbeRun> runs;
  bool stably_realised = false;
};

/// Integrates `count` starts drawn uniformly from the ∞-ball around the
/// centre. Stably realised when every run ends on h, its last event precedes
/// t_end/2 and its drift rate is below 1e-8.
BasinReport test_stable_realization(const StructuralNetwork& net, const DirectedGraph& h,
                                    const BasinProbe& probe);

}  // namespace deadzone

#endif  // DEADZONE_DYNAMICS_HPP
