// Command-line front end: periods, angles, trajectory, verify, widths.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pwcheck/errors.hpp"
#include "pwcheck/pipeline.hpp"
#include "pwcheck/report_io.hpp"

using namespace pwcheck;

namespace {

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw CLI::ValidationError("bad number '" + item + "'");
  }
  return out;
}

Complex parse_complex(const std::string& text) {
  const auto v = split_numbers(text);
  if (v.size() != 2) throw CLI::ValidationError("expected RE,IM but got '" + text + "'");
  return {v[0], v[1]};
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(Complex z) { return fmt(z.real()) + " " + fmt(z.imag()); }

struct Overrides {
  std::string config;
  std::string t, z0;
  double tol = -1.0;
  double R = -1.0;
  std::string R_list;
  int samples = -1;
  std::string mu;
  std::string partition;
  double guard = -2.0;
  double threshold = -1.0;
  bool timing = false;
  std::string out_csv, out_svg, out_json;

  ExperimentConfig build() const {
    ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : load_config(config);
    if (!t.empty()) cfg.t = parse_complex(t);
    if (!z0.empty()) cfg.z0 = parse_complex(z0);
    if (tol > 0.0) cfg.tol = tol;
    if (R > 0.0) cfg.R_values = {R};
    if (!R_list.empty()) cfg.R_values = split_numbers(R_list);
    if (samples > 0) cfg.samples = samples;
    if (!mu.empty()) cfg.mu = mu;
    if (!partition.empty()) cfg.partition.scheme = parse_partition_scheme(partition);
    if (guard > -2.0) cfg.guard_band = guard;
    if (threshold > 0.0) cfg.vertex_threshold = threshold;
    if (timing) cfg.record_timing = true;
    if (!out_csv.empty()) cfg.csv_path = out_csv;
    if (!out_svg.empty()) cfg.svg_path = out_svg;
    if (!out_json.empty()) cfg.json_path = out_json;
    cfg.validate();
    return cfg;
  }
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON experiment config");
  cmd->add_option("--t", o.t, "fourth branch point as RE,IM");
}

void add_run_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--mu", o.mu, "zero | const:MU0,MU1,MUT | random:SEED");
  cmd->add_option("--partition", o.partition, "tubular | log-ratio");
}

int cmd_periods(const Overrides& o) {
  const ExperimentConfig cfg = o.build();
  const Problem p = prepare_problem(cfg);
  std::cout << "t    " << fmt(cfg.t) << "\n"
            << "z0   " << fmt(p.periods.z0) << "\n"
            << "pi0  " << fmt(p.periods.pi0) << "\n"
            << "pi1  " << fmt(p.periods.pi1) << "\n"
            << "pit  " << fmt(p.periods.pit) << "\n"
            << "a    " << fmt(p.triangle.a) << "\n"
            << "b    " << fmt(p.triangle.b) << "\n"
            << "c    " << fmt(p.triangle.c) << "\n";
  return 0;
}

int cmd_angles(const Overrides& o) {
  const ExperimentConfig cfg = o.build();
  const Problem p = prepare_problem(cfg);
  std::cout << "phi_a " << fmt(p.angles.phi_a) << "\n"
            << "phi_b " << fmt(p.angles.phi_b) << "\n"
            << "phi_c " << fmt(p.angles.phi_c) << "\n";
  for (int k = 0; k < 3; ++k) {
    std::cout << "I" << k + 1 << "    [" << fmt(p.arcs[k].start) << ", " << fmt(p.arcs[k].end)
              << "] -> " << to_string(NerveComplex::edge_opposite(k)) << "\n";
  }
  return 0;
}

int cmd_trajectory(const Overrides& o) {
  const ExperimentConfig cfg = o.build();
  const Problem p = prepare_problem(cfg);
  const double R = cfg.R_values.front();
  const Trajectory traj = run_trajectory(p, cfg, R);
  if (!cfg.csv_path.empty()) {
    std::ostringstream os;
    write_trajectory_csv(os, traj);
    write_text_file(cfg.csv_path, os.str());
  } else {
    write_trajectory_csv(std::cout, traj);
  }
  if (!cfg.svg_path.empty()) {
    std::ostringstream os;
    write_trajectory_svg(os, traj);
    write_text_file(cfg.svg_path, os.str());
  }
  std::cerr << "samples " << traj.samples.size() << ", winding " << winding_number(traj) << "\n";
  return 0;
}

int cmd_verify(const Overrides& o) {
  const ExperimentConfig cfg = o.build();
  const VerificationReport report = run_verification(cfg);
  const std::string json = report_to_json(report);
  if (!cfg.json_path.empty()) {
    write_text_file(cfg.json_path, json);
  } else {
    std::cout << json;
  }
  for (const auto& run : report.runs) {
    std::cerr << "R = " << fmt(run.R) << ": winding " << run.winding << ", "
              << run.guarded_samples << " guarded samples, " << run.mismatches
              << " off-edge\n";
  }
  if (const auto r = report.smallest_passing_R()) {
    std::cerr << "smallest passing R: " << fmt(*r) << "\n";
  }
  assert_theorem(report);
  return 0;
}

int cmd_widths(const Overrides& o) {
  const ExperimentConfig cfg = o.build();
  const auto widths = transition_widths(cfg, cfg.R_values.front(), cfg.vertex_threshold);
  std::cout << "width_a " << fmt(widths[0]) << "\n"
            << "width_b " << fmt(widths[1]) << "\n"
            << "width_c " << fmt(widths[2]) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abelianization check of the P=W loop for Painleve VI"};
  app.require_subcommand(1);
  Overrides o;

  auto* periods = app.add_subcommand("periods", "half-period integrals and the period triangle");
  add_common(periods, o);
  periods->add_option("--z0", o.z0, "basepoint as RE,IM");
  periods->add_option("--tol", o.tol, "absolute quadrature tolerance");

  auto* angles = app.add_subcommand("angles", "critical angles and arc decomposition");
  add_common(angles, o);

  auto* trajectory = app.add_subcommand("trajectory", "sample the loop in the nerve");
  add_common(trajectory, o);
  add_run_options(trajectory, o);
  trajectory->add_option("--R", o.R, "radius in the Hitchin base");
  trajectory->add_option("--samples", o.samples, "initial phi-grid size");
  trajectory->add_option("--out", o.out_csv, "CSV output (stdout when omitted)");
  trajectory->add_option("--svg", o.out_svg, "SVG figure output");

  auto* verify = app.add_subcommand("verify", "winding and arc-edge certification");
  add_common(verify, o);
  add_run_options(verify, o);
  verify->add_option("--R-list", o.R_list, "comma-separated radii");
  verify->add_option("--samples", o.samples, "initial phi-grid size");
  verify->add_option("--guard-band", o.guard, "guard half-width in radians (negative: auto)");
  verify->add_option("--threshold", o.threshold, "vertex threshold for transition widths");
  verify->add_option("--json", o.out_json, "JSON report output (stdout when omitted)");
  verify->add_flag("--timing", o.timing, "record wall-clock time per R");

  auto* widths = app.add_subcommand("widths", "transition widths around the critical angles");
  add_common(widths, o);
  add_run_options(widths, o);
  widths->add_option("--R", o.R, "radius in the Hitchin base");
  widths->add_option("--threshold", o.threshold, "vertex threshold in (0, 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*periods) return cmd_periods(o);
    if (*angles) return cmd_angles(o);
    if (*trajectory) return cmd_trajectory(o);
    if (*verify) return cmd_verify(o);
    if (*widths) return cmd_widths(o);
  } catch (const pwcheck::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
