#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pwcheck/nerve.hpp"
#include "pwcheck/rotation.hpp"

namespace pwcheck {

struct ExperimentConfig {
  Complex t{2.0, 0.5};
  Complex z0 = kDefaultBasepoint;
  std::vector<double> R_values{1e2, 1e4, 1e6};
  int samples = 360;
  /// "zero", "const:MU0,MU1,MUT", "random:SEED" or bare "random" (uses `seed`).
  std::string mu = "zero";
  std::uint64_t seed = 1;
  double tol = 1e-10;
  double degeneracy_floor = kDefaultDegeneracyFloor;
  PartitionOptions partition;
  /// Half-width (radians) excluded around every critical angle in the
  /// arc-edge check; negative selects the automatic band.
  double guard_band = -1.0;
  double vertex_threshold = 0.75;
  double width_resolution = 1e-6;
  int refinement_cap = 12;
  bool record_timing = false;
  std::string csv_path;
  std::string svg_path;
  std::string json_path;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  MuProfile mu_profile() const;
};

/// Everything that depends on t alone: periods, triangle, critical angles.
struct Problem {
  PunctureConfig punctures;
  HalfPeriods periods;
  PeriodTriangle triangle;
  CriticalAngles angles;
  ArcDecomposition arcs;
};

Problem prepare_problem(const ExperimentConfig& cfg);

/// One point of the loop phi -> nerve for the Hitchin section det = -R e^{i phi}.
TrajectorySample sample_trajectory(const Problem& problem, const MuProfile& mu, double R,
                                   double phi, const PartitionOptions& partition);

/// Uniform closed grid on [0, 2pi], bisected wherever consecutive nerve angles
/// jump by pi/6 or more, up to `refinement_cap` levels.
Trajectory run_trajectory(const ExperimentConfig& cfg, double R);
Trajectory run_trajectory(const Problem& problem, const ExperimentConfig& cfg, double R);

/// Length of the phi-interval around each critical angle on which the nerve
/// point stays within `threshold` of the matching vertex (component L_j).
std::array<double, 3> transition_widths(const ExperimentConfig& cfg, double R,
                                        double threshold);
std::array<double, 3> transition_widths(const Problem& problem, const ExperimentConfig& cfg,
                                        double R, double threshold);

/// Per-critical-angle guard half-widths: ten times the phi-scale on which the
/// two tied traces separate by one e-fold at the smallest R, capped at a
/// quarter of the adjacent arcs.
std::array<double, 3> guard_bands(const Problem& problem, const ExperimentConfig& cfg);

struct ArcEdgeCheck {
  int guarded_samples = 0;
  int mismatches = 0;
  /// Smallest log-magnitude lead of the dominant trace over the runner-up.
  double min_gap = 0.0;
};

/// Checks Int(I1) -> [v2v3], Int(I2) -> [v3v1], Int(I3) -> [v1v2] on the
/// guarded samples of `traj`; the gap is taken on the uniform base grid.
ArcEdgeCheck check_arc_edges(const Problem& problem, const ExperimentConfig& cfg, double R,
                             const Trajectory& traj, const std::array<double, 3>& guards);

struct RunReport {
  double R = 0.0;
  int winding = 0;
  CriticalAngles angles;
  ArcDecomposition arcs;
  std::array<NerveEdge, 3> arc_edges{NerveEdge::kV2V3, NerveEdge::kV3V1, NerveEdge::kV1V2};
  double min_margin = 0.0;
  int guarded_samples = 0;
  int mismatches = 0;
  int trajectory_samples = 0;
  std::array<double, 3> transition_widths{};
  std::optional<double> elapsed_ms;
};

struct VerificationReport {
  Complex t;
  std::array<double, 3> guard_bands{};
  std::vector<RunReport> runs;

  /// Smallest R whose run passed every check, if any.
  std::optional<double> smallest_passing_R() const;
};

/// Runs every R of the config and records the outcome without judging it.
VerificationReport run_verification(const ExperimentConfig& cfg);

/// Throws TheoremViolationError for arc-edge mismatches outside the guard
/// bands (non-fatal when the band is zero), a winding other than +-1, or
/// windings that differ between runs.
void assert_theorem(const VerificationReport& report);

VerificationReport verify_theorem(const ExperimentConfig& cfg);

}  // namespace pwcheck
