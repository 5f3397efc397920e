#include "pwcheck/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pwcheck {

namespace {

using ordered_json = nlohmann::ordered_json;

Complex complex_from(const nlohmann::json& j, const char* field) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument(std::string(field) + " must be a two-element array [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  ExperimentConfig cfg;
  if (j.contains("t")) cfg.t = complex_from(j["t"], "t");
  if (j.contains("z0")) cfg.z0 = complex_from(j["z0"], "z0");
  if (j.contains("R")) {
    const auto& r = j["R"];
    cfg.R_values = r.is_array() ? r.get<std::vector<double>>() : std::vector<double>{r.get<double>()};
  }
  if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
  if (j.contains("mu")) cfg.mu = j["mu"].get<std::string>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
  if (j.contains("degeneracy_floor")) cfg.degeneracy_floor = j["degeneracy_floor"].get<double>();
  if (j.contains("partition")) {
    cfg.partition.scheme = parse_partition_scheme(j["partition"].get<std::string>());
  }
  if (j.contains("near_threshold")) cfg.partition.near_threshold = j["near_threshold"].get<double>();
  if (j.contains("guard_band")) cfg.guard_band = j["guard_band"].get<double>();
  if (j.contains("vertex_threshold")) cfg.vertex_threshold = j["vertex_threshold"].get<double>();
  if (j.contains("width_resolution")) cfg.width_resolution = j["width_resolution"].get<double>();
  if (j.contains("refinement_cap")) cfg.refinement_cap = j["refinement_cap"].get<int>();
  if (j.contains("timing")) cfg.record_timing = j["timing"].get<bool>();
  if (j.contains("csv")) cfg.csv_path = j["csv"].get<std::string>();
  if (j.contains("svg")) cfg.svg_path = j["svg"].get<std::string>();
  if (j.contains("json")) cfg.json_path = j["json"].get<std::string>();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string report_to_json(const VerificationReport& report) {
  ordered_json runs = ordered_json::array();
  for (const auto& run : report.runs) {
    ordered_json j;
    j["t"] = {report.t.real(), report.t.imag()};
    j["R"] = run.R;
    j["winding"] = run.winding;
    j["critical_angles"] = {run.angles.phi_a, run.angles.phi_b, run.angles.phi_c};
    j["arc_edges"] = {to_string(run.arc_edges[0]), to_string(run.arc_edges[1]),
                      to_string(run.arc_edges[2])};
    j["min_margin"] = number_or_null(run.min_margin);
    j["transition_widths"] = {number_or_null(run.transition_widths[0]),
                              number_or_null(run.transition_widths[1]),
                              number_or_null(run.transition_widths[2])};
    j["elapsed_ms"] = run.elapsed_ms ? ordered_json(*run.elapsed_ms) : ordered_json(nullptr);
    runs.push_back(std::move(j));
  }
  return runs.dump(2) + "\n";
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "phi,l1,l2,l3,bary1,bary2,bary3,nerve_angle\n";
  for (const auto& s : traj.samples) {
    out << g17(s.phi) << ',' << g17(s.point.ell[1]) << ',' << g17(s.point.ell[2]) << ','
        << g17(s.point.ell[3]) << ',' << g17(s.nerve[0]) << ',' << g17(s.nerve[1]) << ','
        << g17(s.nerve[2]) << ',' << g17(s.angle) << '\n';
  }
}

void write_trajectory_svg(std::ostream& out, const Trajectory& traj) {
  constexpr double kSize = 480.0;
  constexpr double kCenter = kSize / 2.0;
  constexpr double kRadius = 190.0;
  constexpr double kPi = std::numbers::pi;
  // v1 at the top, v2 and v3 counterclockwise.
  std::array<std::array<double, 2>, 3> v{};
  for (int j = 0; j < 3; ++j) {
    const double a = kPi / 2.0 + j * 2.0 * kPi / 3.0;
    v[j] = {kCenter + kRadius * std::cos(a), kCenter - kRadius * std::sin(a)};
  }
  auto place = [&](const NervePoint& p) {
    std::array<double, 2> xy{0.0, 0.0};
    for (int j = 0; j < 3; ++j) {
      xy[0] += p[j] * v[j][0];
      xy[1] += p[j] * v[j][1];
    }
    return xy;
  };

  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" "
         "viewBox=\"0 0 480 480\">\n";
  out << "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<polygon points=\"%.3f,%.3f %.3f,%.3f %.3f,%.3f\" fill=\"none\" "
                "stroke=\"#bbbbbb\" stroke-width=\"6\"/>\n",
                v[0][0], v[0][1], v[1][0], v[1][1], v[2][0], v[2][1]);
  out << buf;
  const char* labels[3] = {"v1", "v2", "v3"};
  for (int j = 0; j < 3; ++j) {
    const double dx = (v[j][0] - kCenter) * 0.12;
    const double dy = (v[j][1] - kCenter) * 0.12;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.3f\" y=\"%.3f\" font-family=\"sans-serif\" font-size=\"16\" "
                  "text-anchor=\"middle\">%s</text>\n",
                  v[j][0] + dx, v[j][1] + dy + 5.0, labels[j]);
    out << buf;
  }
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    const auto a = place(traj.samples[k - 1].nerve);
    const auto b = place(traj.samples[k].nerve);
    const double hue = 360.0 * traj.samples[k].phi / (2.0 * kPi);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" "
                  "stroke=\"hsl(%.1f,80%%,45%%)\" stroke-width=\"3\"/>\n",
                  a[0], a[1], b[0], b[1], hue);
    out << buf;
  }
  out << "</svg>\n";
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace pwcheck
