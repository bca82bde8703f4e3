#include "deadzone/dynamics.hpp"

#include <cmath>
#include <random>

#include "deadzone/errors.hpp"
#include "deadzone/parallel.hpp"

namespace deadzone {

namespace {

class Rk4Stepper {
 public:
  explicit Rk4Stepper(const FieldKernel& field, Eigen::Index n)
      : field_(field), k2_(n), k3_(n), k4_(n), tmp_(n) {}

  /// y_out = y + RK4 increment of size h, given k1 = F(y).
  void step(const Eigen::VectorXd& y, const Eigen::VectorXd& k1, double h, Eigen::VectorXd& y_out) {
    tmp_.noalias() = y + (0.5 * h) * k1;
    field_(tmp_, k2_);
    tmp_.noalias() = y + (0.5 * h) * k2_;
    field_(tmp_, k3_);
    tmp_.noalias() = y + h * k3_;
    field_(tmp_, k4_);
    y_out.noalias() = y + (h / 6.0) * (k1 + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  const FieldKernel& field_;
  Eigen::VectorXd k2_, k3_, k4_, tmp_;
};

}  // namespace

Trajectory integrate(const StructuralNetwork& net, const Eigen::VectorXd& theta0, double t_end,
                     const IntegrationOptions& options) {
  const double dt = options.dt;
  if (!(dt > 0.0)) throw PreconditionError("time step must be positive");
  if (!(t_end > 0.0)) throw PreconditionError("end time must be positive");
  if (options.stride < 1) throw PreconditionError("sample stride must be at least 1");
  const Eigen::Index n = net.size();
  if (theta0.size() != n) throw PreconditionError("initial state size does not match the network");

  const FieldKernel field(net);
  Rk4Stepper rk(field, n);
  const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));

  Trajectory traj;
  traj.t_end = t_end;
  traj.dt = dt;
  traj.initial_state = theta0;

  Eigen::VectorXd y = theta0, y_next(n), k1(n), probe(n), probe_k1(n);
  DirectedGraph graph(static_cast<int>(n)), next_graph(static_cast<int>(n)), probe_graph(static_cast<int>(n));
  field(y, k1, &graph);
  traj.initial_graph = graph;
  if (options.keep_samples) {
    traj.times.push_back(0.0);
    traj.samples.push_back(wrap_phases(y));
  }

  for (long long s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) * dt;
    const double h = (s + 1 == steps) ? t_end - t : dt;
    rk.step(y, k1, h, y_next);
    field(y_next, k1, &next_graph);  // k1 for the next step
    if (next_graph != graph) {
      double lo = 0.0, hi = h;
      const double tol = dt * 1e-6;
      Eigen::VectorXd k1_start(n);
      field(y, k1_start);
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        rk.step(y, k1_start, mid, probe);
        field(probe, probe_k1, &probe_graph);
        if (probe_graph == graph) lo = mid; else hi = mid;
      }
      traj.events.push_back({t + hi, graph, next_graph});
      graph = next_graph;
    }
    y.swap(y_next);
    if (options.keep_samples && ((s + 1) % options.stride == 0 || s + 1 == steps)) {
      traj.times.push_back(s + 1 == steps ? t_end : static_cast<double>(s + 1) * dt);
      traj.samples.push_back(wrap_phases(y));
    }
  }
  traj.final_state = y;
  traj.final_graph = graph;
  return traj;
}

std::vector<Eigen::VectorXd> phase_differences(const Trajectory& traj) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(traj.samples.size());
  for (const auto& theta : traj.samples) {
    const Eigen::Index n = theta.size();
    out.push_back(wrap_phases((theta.tail(n - 1).array() - theta(0)).matrix()));
  }
  return out;
}

std::vector<ItineraryEntry> graph_itinerary(const Trajectory& traj) {
  std::vector<ItineraryEntry> out;
  double t = 0.0;
  DirectedGraph current = traj.initial_graph;
  for (const auto& e : traj.events) {
    out.push_back({current, e.time - t});
    t = e.time;
    current = e.after;
  }
  out.push_back({current, traj.t_end - t});
  return out;
}

double drift_rate(const StructuralNetwork& net, const Eigen::VectorXd& theta) {
  const Eigen::VectorXd f = eval_field(net, theta);
  return (f.array() - f(0)).abs().maxCoeff();
}

BasinReport test_stable_realization(const StructuralNetwork& net, const DirectedGraph& h,
                                    const BasinProbe& probe) {
  const Eigen::Index n = net.size();
  if (probe.center.size() != n) throw PreconditionError("probe centre size does not match the network");
  if (probe.count < 1) throw PreconditionError("probe count must be positive");

  // Starts are drawn up front so the report does not depend on scheduling.
  std::seed_seq seq{static_cast<std::uint32_t>(probe.seed), static_cast<std::uint32_t>(probe.seed >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  BasinReport rep;
  rep.runs.resize(static_cast<std::size_t>(probe.count));
  for (auto& run : rep.runs) {
    run.start = probe.center;
    for (Eigen::Index k = 0; k < n; ++k) run.start(k) += probe.radius * unit(rng);
  }

  IntegrationOptions opts;
  opts.dt = probe.dt;
  opts.keep_samples = false;
  parallel_for(rep.runs.size(), [&](std::size_t i) {
    ProbeRun& run = rep.runs[i];
    const Trajectory traj = integrate(net, run.start, probe.t_end, opts);
    run.terminal_graph = traj.final_graph;
    run.event_count = traj.events.size();
    run.last_event_time = traj.events.empty() ? 0.0 : traj.events.back().time;
    run.terminal_state = traj.final_state;
    run.drift_rate = drift_rate(net, traj.final_state);
  });

  rep.stably_realised = true;
  for (const auto& run : rep.runs) {
    if (run.terminal_graph != h || run.last_event_time >= 0.5 * probe.t_end || !(run.drift_rate < 1e-8)) {
      rep.stably_realised = false;
    }
  }
  return rep;
}

}  // namespace deadzone
