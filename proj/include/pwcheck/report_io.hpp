#pragma once

#include <iosfwd>
#include <string>

#include "pwcheck/pipeline.hpp"

namespace pwcheck {

/// Reads an ExperimentConfig from a JSON object. Complex numbers are
/// [re, im] arrays; every field is optional and defaults as documented in
/// the README.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// One JSON object per R, fields in the order
/// t, R, winding, critical_angles, arc_edges, min_margin, transition_widths,
/// elapsed_ms. Output is byte-stable for identical reports.
std::string report_to_json(const VerificationReport& report);

/// Columns phi,l1,l2,l3,bary1,bary2,bary3,nerve_angle at 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Static figure: the nerve triangle with the sampled loop coloured by phi.
void write_trajectory_svg(std::ostream& out, const Trajectory& traj);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace pwcheck
