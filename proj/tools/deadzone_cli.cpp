// Command-line front end: effective, raster, simulate, realize, catalog.

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "deadzone/dynamics.hpp"
#include "deadzone/effective.hpp"
#include "deadzone/errors.hpp"
#include "deadzone/io.hpp"
#include "deadzone/parallel.hpp"
#include "deadzone/realize.hpp"

using namespace deadzone;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kPrecondition = 3, kIo = 4 };

// JSON config files: one object per subcommand whose keys are long option
// names without dashes, e.g. {"realize": {"target": "3;1>2", "stable": true}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return section(app, default_also).dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json j;
    try {
      input >> j;
    } catch (const Json::exception& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    collect(j, "", {}, items);
    return items;
  }

 private:
  static Json section(const CLI::App* app, bool default_also) {
    Json j = Json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string& name = opt->get_lnames()[0];
      if (opt->get_type_size() != 0) {
        if (opt->count() == 1) {
          j[name] = opt->results().at(0);
        } else if (opt->count() > 1) {
          j[name] = opt->results();
        } else if (default_also && !opt->get_default_str().empty()) {
          j[name] = opt->get_default_str();
        }
      } else if (opt->count() > 0) {
        j[name] = true;
      }
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
      if (sub->parsed()) j[sub->get_name()] = section(sub, default_also);
    }
    return j;
  }

  static std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("config values must be strings, numbers, booleans or arrays");
  }

  static void collect(const Json& j, const std::string& name, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& out) {
    if (j.is_object()) {
      if (!name.empty()) parents.push_back(name);
      for (auto it = j.begin(); it != j.end(); ++it) collect(*it, it.key(), parents, out);
      return;
    }
    if (name.empty()) throw CLI::ConversionError("config file must hold a JSON object");
    CLI::ConfigItem item;
    item.name = name;
    item.parents = std::move(parents);
    if (j.is_array()) {
      for (const Json& v : j) item.inputs.push_back(scalar(v));
    } else {
      item.inputs.push_back(scalar(j));
    }
    out.push_back(std::move(item));
  }
};

CouplingFunction load_coupling(const std::string& path) { return coupling_from_json(read_json_file(path)); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path));
  return out;
}

std::string itinerary_text(const std::vector<ItineraryEntry>& it) {
  std::string s;
  for (const auto& e : it) {
    if (!s.empty()) s += " -> ";
    s += e.graph.order() == 3 ? std::to_string(graph_number(e.graph)) : format_graph(e.graph);
  }
  return s;
}

// ---------------------------------------------------------------------------

struct EffectiveArgs {
  std::string coupling, structural, theta;
};

int run_effective(const EffectiveArgs& a) {
  const Eigen::VectorXd theta = parse_angles(a.theta);
  const int n = static_cast<int>(theta.size());
  if (n < 2) throw PreconditionError("need at least 2 phases");
  DirectedGraph structure = a.structural.empty() ? DirectedGraph::complete(n) : parse_graph(a.structural);
  if (structure.order() != n) throw PreconditionError("structural graph size does not match the phases");
  const StructuralNetwork net{structure, 1.0, load_coupling(a.coupling)};
  const DirectedGraph h = effective_graph(net, theta);
  fmt::print("graph: {}\n", format_graph(h));
  if (n == 3) fmt::print("nu: {}\n", graph_number(h));
  fmt::print("edges: {}\n", h.edge_count());
  fmt::print("connectivity: {}\n", to_string(connectivity_class(h)));
  if (n <= 8) {
    const auto group = automorphisms(structure);
    fmt::print("isotropy: point={} graph={} structural={}\n", point_isotropy(theta, group).size(),
               graph_isotropy(h, group).size(), group.size());
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct RasterArgs {
  std::string coupling, out;
  int resolution = 300;
};

int run_raster(const RasterArgs& a) {
  const StructuralNetwork net = all_to_all(3, load_coupling(a.coupling));
  const RasterGrid grid = raster_cir(net, a.resolution);
  {
    auto csv = open_out(a.out + ".csv");
    write_raster_csv(csv, grid);
  }
  write_text_file(a.out + ".svg", raster_svg(grid));
  std::uint64_t mask = 0;
  for (auto nu : grid.nu) mask |= std::uint64_t{1} << nu;
  fmt::print("wrote {0}.csv and {0}.svg ({1} distinct graphs)\n", a.out, std::popcount(mask));
  return kOk;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string coupling, certificate, theta0, structural, out;
  double t_end = 100.0, dt = 1e-3, omega = 1.0;
  int stride = 10, grid = 0, resolution = 200;
  bool svg = false;
};

int run_simulate(const SimulateArgs& a) {
  std::optional<StructuralNetwork> net;
  Eigen::VectorXd theta0;
  if (!a.certificate.empty()) {
    const RealizationCertificate cert = certificate_from_json(read_json_file(a.certificate));
    net = cert.network();
    theta0 = cert.theta();
    fmt::print("certificate verified: {}\n", format_graph(cert.target()));
  } else {
    if (a.coupling.empty()) throw CLI::ValidationError("simulate needs --coupling or --certificate");
    int n = 3;
    if (!a.theta0.empty()) {
      theta0 = parse_angles(a.theta0);
      n = static_cast<int>(theta0.size());
    }
    DirectedGraph structure = a.structural.empty() ? DirectedGraph::complete(n) : parse_graph(a.structural);
    net = StructuralNetwork{structure, a.omega, load_coupling(a.coupling)};
  }
  if (!a.theta0.empty()) theta0 = parse_angles(a.theta0);

  IntegrationOptions opts;
  opts.dt = a.dt;
  opts.stride = a.stride;

  std::vector<Trajectory> runs;
  if (a.grid > 0) {
    if (net->size() != 3) throw PreconditionError("grid starts need 3 oscillators");
    const auto g = static_cast<std::size_t>(a.grid);
    runs.resize(g * g);
    parallel_for(runs.size(), [&](std::size_t r) {
      const double p1 = (static_cast<double>(r / g) + 0.5) * kTwoPi / a.grid;
      const double p2 = (static_cast<double>(r % g) + 0.5) * kTwoPi / a.grid;
      Eigen::VectorXd start(3);
      start << 0.0, p1, p1 + p2;
      runs[r] = integrate(*net, start, a.t_end, opts);
    });
    auto csv = open_out(a.out + "_grid.csv");
    csv << "run,phi1,phi2,events,itinerary_length,itinerary\n";
    std::size_t multi = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto it = graph_itinerary(runs[r]);
      std::set<DirectedGraph> distinct;
      for (const auto& e : it) distinct.insert(e.graph);
      if (distinct.size() >= 2) ++multi;
      csv << r << ',' << format_real(runs[r].initial_state(1)) << ','
          << format_real(runs[r].initial_state(2) - runs[r].initial_state(1)) << ',' << runs[r].events.size()
          << ',' << it.size() << ",\"" << itinerary_text(it) << "\"\n";
    }
    fmt::print("{} runs, {} visit at least two graphs\n", runs.size(), multi);
  } else {
    if (theta0.size() == 0) throw CLI::ValidationError("simulate needs --theta0, --grid or --certificate");
    runs.push_back(integrate(*net, theta0, a.t_end, opts));
    {
      auto csv = open_out(a.out + "_trajectory.csv");
      write_trajectory_csv(csv, *net, runs.front());
    }
    {
      auto csv = open_out(a.out + "_events.csv");
      write_events_csv(csv, runs.front());
    }
    const auto it = graph_itinerary(runs.front());
    fmt::print("events: {}\nitinerary: {}\n", runs.front().events.size(), itinerary_text(it));
    fmt::print("drift rate: {:.3e}\n", drift_rate(*net, runs.front().final_state));
  }
  if (a.svg) {
    if (net->size() != 3) throw PreconditionError("SVG overlay needs 3 oscillators");
    write_text_file(a.out + ".svg", raster_svg(raster_cir(*net, a.resolution), runs));
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct RealizeArgs {
  std::string target, theta, structural, out;
  std::vector<std::string> delta;
  bool generic = false, stable = false;
  double omega = 1.0;
  std::uint64_t seed = 1;
};

int run_realize(const RealizeArgs& a) {
  const int modes = int(a.generic) + int(!a.delta.empty()) + int(a.stable);
  if (modes != 1) throw CLI::ValidationError("choose exactly one of --generic, --delta, --stable");
  const DirectedGraph h = parse_graph(a.target);

  auto finish = [&](const RealizationCertificate& cert) {
    const Json j = certificate_to_json(cert);
    if (!a.out.empty()) write_text_file(a.out, j.dump(2) + "\n");
    // the written document must rebuild into a verified certificate
    const RealizationCertificate again = certificate_from_json(j);
    fmt::print("target: {}\n", format_graph(cert.target()));
    fmt::print("verified: {}\n", effective_graph(again.network(), again.theta()) == h ? "yes" : "no");
    fmt::print("dead zones: {}\nlive zones: {}\n", cert.dead_zone_count(), cert.live_zone_count());
  };

  if (a.generic) {
    if (a.theta.empty()) throw CLI::ValidationError("--generic needs --theta");
    finish(realize_generic(h, parse_angles(a.theta)));
  } else if (!a.delta.empty()) {
    finish(realize_delta(h, parse_angle(a.delta.at(0)), parse_angle(a.delta.at(1))));
  } else {
    const DirectedGraph structure = a.structural.empty() ? DirectedGraph::complete(h.order()) : parse_graph(a.structural);
    const StableRealization sr = realize_stable(h, structure, a.omega, a.seed);
    finish(sr.certificate);
    const StabilityReport& s = sr.stability;
    fmt::print("collective frequency: {}\n", format_real(sr.equilibrium.frequency));
    fmt::print("equilibrium residual: {:.3e}\n", equilibrium_residual(sr.certificate.network(), sr.equilibrium));
    fmt::print("gershgorin discs in closed left half-plane: {}\n", s.discs_in_closed_left_half_plane ? "yes" : "no");
    fmt::print("zero eigenvalue multiplicity: {}\n", s.zero_multiplicity);
    fmt::print("largest nonzero real part: {:.6g}\n", s.max_nonzero_real_part);
    fmt::print("stable: {}\n", s.stable ? "yes" : "no");
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct CatalogArgs {
  std::string coupling, sampler = "grid:400", out;
};

Sampler parse_sampler(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  try {
    if (parts.size() == 2 && parts[0] == "grid") return GridSampler{std::stoi(parts[1])};
    if (parts.size() == 3 && parts[0] == "random")
      return RandomSampler{std::stoull(parts[1]), std::stoull(parts[2])};
  } catch (const std::exception&) {
  }
  throw ParseError(fmt::format("sampler must be grid:R or random:M:SEED, got '{}'", text));
}

int run_catalog(const CatalogArgs& a) {
  const StructuralNetwork net = all_to_all(3, load_coupling(a.coupling));
  const auto catalog = catalog_realised(net, parse_sampler(a.sampler));
  const std::uint64_t mask = catalog_mask(catalog);
  std::string list;
  for (const auto& h : catalog) list += (list.empty() ? "" : " ") + std::to_string(graph_number(h));
  fmt::print("mask: 0x{:016x}\ncount: {}\nnu: {}\n", mask, catalog.size(), list);
  if (!a.out.empty()) write_text_file(a.out, catalog_svg(mask));
  return kOk;
}

// A config file alone may pick the subcommand: when the command line names
// none, the single subcommand section of the file is inserted right after
// the --config option so later flags bind to it.
void select_subcommand_from_config(const CLI::App& app, std::vector<std::string>& args) {
  std::string path;
  std::size_t insert_at = 0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      insert_at = i + 2;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      insert_at = i + 1;
    }
  }
  if (path.empty()) return;
  for (const auto& a : args) {
    for (const CLI::App* sub : app.get_subcommands({})) {
      if (a == sub->get_name()) return;
    }
  }
  std::ifstream in(path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception&) {
    return;  // reported by the regular config parser
  }
  if (!j.is_object()) return;
  std::string chosen;
  for (const CLI::App* sub : app.get_subcommands({})) {
    if (j.contains(sub->get_name())) {
      if (!chosen.empty()) return;
      chosen = sub->get_name();
    }
  }
  if (!chosen.empty()) args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at), chosen);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase oscillator networks with dead-zone coupling"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file mirroring the flags; explicit flags win");
  bool print_config = false;
  app.add_flag("--print-config", print_config, "Print the resolved configuration as JSON and exit")
      ->configurable(false);

  EffectiveArgs eff;
  auto* c_eff = app.add_subcommand("effective", "Effective coupling graph at a point");
  c_eff->add_option("--coupling", eff.coupling, "Coupling JSON file")->required();
  c_eff->add_option("--structural", eff.structural, "Structural graph literal (default complete)");
  c_eff->add_option("--theta", eff.theta, "Phases, e.g. \"0,pi/8\"")->required();

  RasterArgs ras;
  auto* c_ras = app.add_subcommand("raster", "Partition of the 3-oscillator torus by effective graph");
  c_ras->add_option("--coupling", ras.coupling, "Coupling JSON file")->required();
  c_ras->add_option("--resolution", ras.resolution, "Cells per axis")->capture_default_str();
  c_ras->add_option("--out", ras.out, "Output prefix")->required();

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Integrate trajectories and report graph events");
  c_sim->add_option("--coupling", sim.coupling, "Coupling JSON file");
  c_sim->add_option("--certificate", sim.certificate, "Certificate JSON (network and start point)");
  c_sim->add_option("--theta0", sim.theta0, "Initial phases");
  c_sim->add_option("--structural", sim.structural, "Structural graph literal (default complete)");
  c_sim->add_option("--omega", sim.omega, "Intrinsic frequency")->capture_default_str();
  c_sim->add_option("--t-end", sim.t_end, "End time")->capture_default_str();
  c_sim->add_option("--dt", sim.dt, "Step size")->capture_default_str();
  c_sim->add_option("--stride", sim.stride, "Steps between samples")->capture_default_str();
  c_sim->add_option("--grid", sim.grid, "G: run G×G starts over the torus (3 oscillators)");
  c_sim->add_flag("--svg", sim.svg, "Also draw trajectories over the raster");
  c_sim->add_option("--resolution", sim.resolution, "Raster resolution for --svg")->capture_default_str();
  c_sim->add_option("--out", sim.out, "Output prefix")->required();

  RealizeArgs rea;
  auto* c_rea = app.add_subcommand("realize", "Build a coupling function realising a target graph");
  c_rea->add_option("--target", rea.target, "Target graph literal")->required();
  c_rea->add_flag("--generic", rea.generic, "Live zones at the differences of --theta");
  c_rea->add_option("--theta", rea.theta, "Generic point for --generic");
  c_rea->add_option("--delta", rea.delta, "Spacing a and live-zone width δ")->expected(2);
  c_rea->add_flag("--stable", rea.stable, "Attracting relative equilibrium");
  c_rea->add_option("--structural", rea.structural, "Structural graph for --stable (default complete)");
  c_rea->add_option("--omega", rea.omega, "Intrinsic frequency")->capture_default_str();
  c_rea->add_option("--seed", rea.seed, "Seed for the equilibrium point")->capture_default_str();
  c_rea->add_option("--out", rea.out, "Certificate JSON output");

  CatalogArgs cat;
  auto* c_cat = app.add_subcommand("catalog", "Effective graphs realised over a sample of points");
  c_cat->add_option("--coupling", cat.coupling, "Coupling JSON file")->required();
  c_cat->add_option("--sampler", cat.sampler, "grid:R or random:M:SEED")->capture_default_str();
  c_cat->add_option("--out", cat.out, "Bar-strip SVG output");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    select_subcommand_from_config(app, args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes the vector from the back
    app.parse(args);
    if (print_config) {
      std::cout << app.config_to_str(false, false) << '\n';
      return kOk;
    }
    if (c_eff->parsed()) return run_effective(eff);
    if (c_ras->parsed()) return run_raster(ras);
    if (c_sim->parsed()) return run_simulate(sim);
    if (c_rea->parsed()) return run_realize(rea);
    if (c_cat->parsed()) return run_catalog(cat);
  } catch (const CLI::FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kUsage;
  } catch (const deadzone::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  return kUsage;
}
