#ifndef DEADZONE_IO_HPP
#define DEADZONE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "deadzone/dynamics.hpp"
#include "deadzone/effective.hpp"
#include "deadzone/realize.hpp"

namespace deadzone {

using Json = nlohmann::json;

/// {"kind":"ks","a":…,"b":…,"eps":…,"alpha":…} or
/// {"kind":"piecewise","profiles":[{"center","support_start","support_width","value","slope"},…]}.
/// Angle fields also accept strings such as "5pi/6".
CouplingFunction coupling_from_json(const Json& j);
Json coupling_to_json(const CouplingFunction& g);

/// "N;j>k,j>k,…" with 1-based labels, or a bare graph number (N = 3).
DirectedGraph parse_graph(std::string_view text);
std::string format_graph(const DirectedGraph& h);

/// Comma- or whitespace-separated angles, each as accepted by parse_angle.
Eigen::VectorXd parse_angles(std::string_view text);

Json certificate_to_json(const RealizationCertificate& cert);
/// Rebuilds and thereby re-verifies a certificate.
RealizationCertificate certificate_from_json(const Json& j);

/// Shortest decimal that reads back to the same double.
std::string format_real(double x);

/// "t,theta_1..theta_N,nu" (graph literal instead of nu when N ≠ 3).
void write_trajectory_csv(std::ostream& out, const StructuralNetwork& net, const Trajectory& traj);
/// "t_event,before,after".
void write_events_csv(std::ostream& out, const Trajectory& traj);
/// "i,j,phi1,phi2,nu".
void write_raster_csv(std::ostream& out, const RasterGrid& grid);

/// Cells coloured by graph_color with equal-phase and antiphase lines, ● at
/// the synchronous point and ○ at the splay points. Trajectories are drawn as
/// polylines in the same (φ1, φ2) coordinates.
std::string raster_svg(const RasterGrid& grid, const std::vector<Trajectory>& overlays = {});

/// Strip of 64 bars, black where the graph number is present.
std::string catalog_svg(std::uint64_t mask);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace deadzone

#endif  // DEADZONE_IO_HPP
