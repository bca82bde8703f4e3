#include "deadzone/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "deadzone/errors.hpp"

namespace deadzone {

namespace {

double angle_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(fmt::format("missing field '{}'", key));
  const Json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_angle(v.get<std::string>());
  throw ParseError(fmt::format("field '{}' must be a number or angle string", key));
}

double angle_field_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? angle_field(j, key) : fallback;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(fmt::format("malformed graph literal '{}'", whole));
  }
  return v;
}

}  // namespace

CouplingFunction coupling_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ParseError("coupling must be a JSON object");
    const std::string kind = j.value("kind", "");
    if (kind == "ks") {
      KuramotoSakaguchiParams p;
      p.a = angle_field(j, "a");
      p.b = angle_field(j, "b");
      p.eps = angle_field_or(j, "eps", p.eps);
      p.alpha = angle_field_or(j, "alpha", p.alpha);
      return CouplingFunction::kuramoto_sakaguchi(p);
    }
    if (kind == "piecewise") {
      if (!j.contains("profiles") || !j.at("profiles").is_array())
        throw ParseError("piecewise coupling needs a 'profiles' array");
      std::vector<BumpProfile> profiles;
      for (const Json& p : j.at("profiles")) {
        profiles.emplace_back(angle_field(p, "center"),
                              CircleArc(angle_field(p, "support_start"), angle_field(p, "support_width")),
                              angle_field(p, "value"), angle_field(p, "slope"));
      }
      return CouplingFunction::piecewise(std::move(profiles));
    }
    throw ParseError(fmt::format("unknown coupling kind '{}'", kind));
  } catch (const Json::exception& e) {
    throw ParseError(fmt::format("malformed coupling: {}", e.what()));
  }
}

Json coupling_to_json(const CouplingFunction& g) {
  if (g.kind() == CouplingKind::AnalyticKS) {
    const auto& p = g.ks_params();
    return Json{{"kind", "ks"}, {"a", p.a}, {"b", p.b}, {"eps", p.eps}, {"alpha", p.alpha}};
  }
  Json profiles = Json::array();
  for (const auto& p : g.profiles()) {
    profiles.push_back({{"center", p.center()},
                        {"support_start", p.support().start},
                        {"support_width", p.support().width},
                        {"value", p.value_at_center()},
                        {"slope", p.slope_at_center()}});
  }
  return Json{{"kind", "piecewise"}, {"profiles", profiles}};
}

DirectedGraph parse_graph(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) {
    const int nu = parse_int(text, whole);
    if (nu < 0 || nu > 63) throw ParseError(fmt::format("graph number out of range in '{}'", whole));
    return graph_from_number(nu);
  }
  const int n = parse_int(text.substr(0, semi), whole);
  if (n < 2 || n > 64) throw ParseError(fmt::format("vertex count out of range in '{}'", whole));
  DirectedGraph h(n);
  std::string_view rest = trim(text.substr(semi + 1));
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    const auto gt = item.find('>');
    if (gt == std::string_view::npos) throw ParseError(fmt::format("malformed edge in '{}'", whole));
    const int j = parse_int(item.substr(0, gt), whole);
    const int k = parse_int(item.substr(gt + 1), whole);
    if (j < 1 || j > n || k < 1 || k > n || j == k)
      throw ParseError(fmt::format("invalid edge {}>{} in '{}'", j, k, whole));
    h.add_edge(j - 1, k - 1);
  }
  return h;
}

std::string format_graph(const DirectedGraph& h) {
  std::string out = fmt::format("{};", h.order());
  bool first = true;
  for (const auto& [j, k] : h.edges()) {
    out += fmt::format("{}{}>{}", first ? "" : ",", j + 1, k + 1);
    first = false;
  }
  return out;
}

Eigen::VectorXd parse_angles(std::string_view text) {
  std::vector<double> values;
  std::string_view rest = text;
  while (true) {
    const auto sep = rest.find_first_of(", \t\n");
    const std::string_view item = trim(rest.substr(0, sep));
    if (!item.empty()) values.push_back(parse_angle(item));
    if (sep == std::string_view::npos) break;
    rest = rest.substr(sep + 1);
  }
  if (values.empty()) throw ParseError("empty angle list");
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Json certificate_to_json(const RealizationCertificate& cert) {
  Json j{{"coupling", coupling_to_json(cert.coupling())},
         {"theta", std::vector<double>(cert.theta().data(), cert.theta().data() + cert.theta().size())},
         {"target", format_graph(cert.target())},
         {"structural", format_graph(cert.network().structure)},
         {"omega", cert.network().omega},
         {"dead_zone_count", cert.dead_zone_count()}};
  if (auto f = cert.collective_frequency()) j["collective_frequency"] = *f;
  return j;
}

RealizationCertificate certificate_from_json(const Json& j) {
  try {
    const std::vector<double> theta = j.at("theta").get<std::vector<double>>();
    StructuralNetwork net{parse_graph(j.at("structural").get<std::string>()), j.value("omega", 1.0),
                          coupling_from_json(j.at("coupling"))};
    std::optional<double> freq;
    if (j.contains("collective_frequency")) freq = j.at("collective_frequency").get<double>();
    return RealizationCertificate(
        std::move(net),
        Eigen::Map<const Eigen::VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size())),
        parse_graph(j.at("target").get<std::string>()), freq);
  } catch (const Json::exception& e) {
    throw ParseError(fmt::format("malformed certificate: {}", e.what()));
  }
}

std::string format_real(double x) { return fmt::format("{}", x); }

void write_trajectory_csv(std::ostream& out, const StructuralNetwork& net, const Trajectory& traj) {
  const int n = net.size();
  out << 't';
  for (int k = 1; k <= n; ++k) out << ",theta_" << k;
  out << (n == 3 ? ",nu\n" : ",graph\n");
  for (std::size_t s = 0; s < traj.samples.size(); ++s) {
    const Eigen::VectorXd& theta = traj.samples[s];
    out << format_real(traj.times[s]);
    for (int k = 0; k < n; ++k) out << ',' << format_real(theta(k));
    const DirectedGraph h = effective_graph(net, theta);
    out << ',' << (n == 3 ? std::to_string(graph_number(h)) : format_graph(h)) << '\n';
  }
}

void write_events_csv(std::ostream& out, const Trajectory& traj) {
  out << "t_event,before,after\n";
  for (const auto& e : traj.events) {
    // literals contain commas, so they are quoted
    out << format_real(e.time) << ",\"" << format_graph(e.before) << "\",\"" << format_graph(e.after)
        << "\"\n";
  }
}

void write_raster_csv(std::ostream& out, const RasterGrid& grid) {
  out << "i,j,phi1,phi2,nu\n";
  for (int i = 0; i < grid.resolution; ++i) {
    for (int j = 0; j < grid.resolution; ++j) {
      out << i << ',' << j << ',' << format_real(grid.phi(i)) << ',' << format_real(grid.phi(j)) << ','
          << grid.at(i, j) << '\n';
    }
  }
}

namespace {

constexpr double kCanvas = 600.0;

std::string hex_color(const Rgb& c) {
  auto byte = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  return fmt::format("#{:02x}{:02x}{:02x}", byte(c.r), byte(c.g), byte(c.b));
}

double px_x(double phi) { return phi / kTwoPi * kCanvas; }
double px_y(double phi) { return kCanvas - phi / kTwoPi * kCanvas; }

void svg_line(std::string& s, double x1, double y1, double x2, double y2, bool dashed) {
  s += fmt::format(
      R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="black" stroke-width="1.5"{}/>)"
      "\n",
      px_x(x1), px_y(y1), px_x(x2), px_y(y2), dashed ? R"( stroke-dasharray="6,4")" : "");
}

}  // namespace

std::string raster_svg(const RasterGrid& grid, const std::vector<Trajectory>& overlays) {
  const int r = grid.resolution;
  const double cell = kCanvas / r;
  std::string s = fmt::format(
      R"(<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">)"
      "\n",
      kCanvas);
  std::array<std::string, 64> palette;
  for (int nu = 0; nu < 64; ++nu) palette[nu] = hex_color(graph_color(graph_from_number(nu)));
  // φ2 grows upwards; runs of equal cells along φ1 share one rectangle
  for (int j = 0; j < r; ++j) {
    int i = 0;
    while (i < r) {
      const int nu = grid.at(i, j);
      int end = i + 1;
      while (end < r && grid.at(end, j) == nu) ++end;
      s += fmt::format(R"(<rect x="{:.3f}" y="{:.3f}" width="{:.3f}" height="{:.3f}" fill="{}"/>)"
                       "\n",
                       i * cell, kCanvas - (j + 1) * cell, (end - i) * cell, cell, palette[nu]);
      i = end;
    }
  }
  // equal phases θ2 = θ1, θ3 = θ2, θ3 = θ1
  svg_line(s, 0, 0, 0, kTwoPi, false);
  svg_line(s, 0, 0, kTwoPi, 0, false);
  svg_line(s, 0, kTwoPi, kTwoPi, 0, false);
  // antiphase pairs
  svg_line(s, kPi, 0, kPi, kTwoPi, true);
  svg_line(s, 0, kPi, kTwoPi, kPi, true);
  svg_line(s, 0, kPi, kPi, 0, true);
  svg_line(s, kPi, kTwoPi, kTwoPi, kPi, true);

  for (const auto& traj : overlays) {
    std::string points;
    double last1 = 0.0, last2 = 0.0;
    auto flush = [&] {
      if (!points.empty()) {
        s += fmt::format(R"(<polyline points="{}" fill="none" stroke="#d01010" stroke-width="1"/>)"
                         "\n",
                         points);
      }
      points.clear();
    };
    for (const auto& theta : traj.samples) {
      if (theta.size() != 3) break;
      const double p1 = wrap_angle(theta(1) - theta(0));
      const double p2 = wrap_angle(theta(2) - theta(1));
      if (!points.empty() && (std::abs(p1 - last1) > kPi || std::abs(p2 - last2) > kPi)) flush();
      points += fmt::format("{:.2f},{:.2f} ", px_x(p1), px_y(p2));
      last1 = p1;
      last2 = p2;
    }
    flush();
  }

  for (double x : {0.0, kTwoPi}) {
    for (double y : {0.0, kTwoPi}) {
      s += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="6" fill="black"/>)"
                       "\n",
                       px_x(x), px_y(y));
    }
  }
  for (double p : {kTwoPi / 3.0, 2.0 * kTwoPi / 3.0}) {
    s += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="6" fill="white" stroke="black" stroke-width="2"/>)"
                     "\n",
                     px_x(p), px_y(p));
  }
  s += "</svg>\n";
  return s;
}

std::string catalog_svg(std::uint64_t mask) {
  constexpr int kBar = 10, kHeight = 40, kMargin = 10;
  const int width = 64 * kBar + 2 * kMargin;
  std::string s = fmt::format(
      R"(<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}">)"
      "\n",
      width, kHeight + 2 * kMargin + 14);
  for (int nu = 0; nu < 64; ++nu) {
    const bool present = (mask >> nu) & 1u;
    s += fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="{}" stroke="#888" stroke-width="0.5"/>)"
                     "\n",
                     kMargin + nu * kBar, kMargin, kBar, kHeight, present ? "black" : "white");
    if (nu % 8 == 0 || nu == 63) {
      s += fmt::format(R"(<text x="{}" y="{}" font-size="10" font-family="sans-serif">{}</text>)"
                       "\n",
                       kMargin + nu * kBar, kMargin + kHeight + 12, nu);
    }
  }
  s += "</svg>\n";
  return s;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace deadzone
