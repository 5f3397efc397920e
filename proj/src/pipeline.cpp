#include "pwcheck/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pwcheck/errors.hpp"

namespace pwcheck {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Bisect a grid step once the nerve angle moves this much across it.
constexpr double kRefineStep = kPi / 6.0;
constexpr double kCertifiableStep = kPi / 2.0;

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

double circular_distance(double x, double y) {
  const double d = ccw_distance(x, y);
  return std::min(d, kTwoPi - d);
}

void refine_between(const Problem& problem, const MuProfile& mu, double R,
                    const PartitionOptions& partition, const TrajectorySample& lo,
                    const TrajectorySample& hi, int depth, int cap,
                    std::vector<TrajectorySample>& out) {
  const double step = wrap_pi(hi.angle - lo.angle);
  if (std::abs(step) < kRefineStep) return;
  if (depth >= cap) {
    if (std::abs(step) < kCertifiableStep) return;
    std::ostringstream os;
    os.precision(12);
    os << "nerve angle still jumps by " << step << " rad inside phi-window [" << lo.phi << ", "
       << hi.phi << "] after " << cap << " bisection levels (R = " << R << ")";
    throw UndersampledError(os.str());
  }
  const TrajectorySample mid =
      sample_trajectory(problem, mu, R, 0.5 * (lo.phi + hi.phi), partition);
  refine_between(problem, mu, R, partition, lo, mid, depth + 1, cap, out);
  out.push_back(mid);
  refine_between(problem, mu, R, partition, mid, hi, depth + 1, cap, out);
}

// phi-distance from a critical angle beyond which the point has left the
// neighbourhood of vertex j; doubling search followed by bisection.
double zone_extent(const Problem& problem, const MuProfile& mu, double R,
                   const PartitionOptions& partition, int vertex, double direction,
                   double threshold, double resolution) {
  const double center = problem.angles[vertex];
  auto inside = [&](double offset) {
    const auto s = sample_trajectory(problem, mu, R, center + direction * offset, partition);
    return s.nerve[vertex] >= threshold;
  };
  double lo = 0.0;
  double hi = resolution;
  while (inside(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kPi) {
      throw NotNearInfinityError("vertex zone around a critical angle spans the whole circle");
    }
  }
  while (hi - lo > 0.125 * resolution) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

// ---------------------------------------------------------------------------
// ExperimentConfig

void ExperimentConfig::validate() const {
  if (samples < 36) throw std::invalid_argument("samples must be at least 36");
  if (R_values.empty()) throw std::invalid_argument("need at least one R value");
  for (double R : R_values) {
    if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("R values must be positive");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(vertex_threshold > 0.0 && vertex_threshold < 1.0)) {
    throw std::invalid_argument("vertex threshold must lie in (0, 1)");
  }
  if (!(width_resolution > 0.0)) throw std::invalid_argument("width resolution must be positive");
  if (refinement_cap < 0) throw std::invalid_argument("refinement cap must be non-negative");
  if (!(partition.near_threshold > 1.0)) {
    throw std::invalid_argument("near-infinity threshold must exceed 1");
  }
  (void)mu_profile();
}

MuProfile ExperimentConfig::mu_profile() const {
  if (mu == "random") return MuProfile::smooth_random(seed);
  return MuProfile::parse(mu);
}

// ---------------------------------------------------------------------------
// Problem setup

Problem prepare_problem(const ExperimentConfig& cfg) {
  PunctureConfig punctures(cfg.t);
  HalfPeriods hp = half_periods(punctures, cfg.z0, cfg.tol);
  try {
    PeriodTriangle tri = period_triangle(hp, cfg.degeneracy_floor);
    auto [angles, arcs] = arc_decomposition(tri);
    return Problem{punctures, hp, tri, angles, arcs};
  } catch (const DegenerateTriangleError& e) {
    throw DegenerateTriangleError(std::string(e.what()) + " (t = " + describe(cfg.t) + ")");
  }
}

TrajectorySample sample_trajectory(const Problem& problem, const MuProfile& mu, double R,
                                   double phi, const PartitionOptions& partition) {
  TrajectorySample s;
  s.phi = phi;
  s.point = projective_normalize(trace_coordinates(R, phi, problem.triangle, mu));
  try {
    s.nerve = partition_of_unity(s.point, partition);
  } catch (const NotNearInfinityError& e) {
    std::ostringstream os;
    os.precision(12);
    os << e.what() << " (R = " << R << ", phi = " << phi << ")";
    throw NotNearInfinityError(os.str());
  }
  s.angle = nerve_angle(s.nerve);
  return s;
}

Trajectory run_trajectory(const ExperimentConfig& cfg, double R) {
  cfg.validate();
  return run_trajectory(prepare_problem(cfg), cfg, R);
}

Trajectory run_trajectory(const Problem& problem, const ExperimentConfig& cfg, double R) {
  const MuProfile mu = cfg.mu_profile();
  const int n = cfg.samples;
  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(n) + 1);

  TrajectorySample prev = sample_trajectory(problem, mu, R, 0.0, cfg.partition);
  traj.samples.push_back(prev);
  for (int k = 1; k <= n; ++k) {
    const double phi = (k == n) ? kTwoPi : kTwoPi * k / n;
    TrajectorySample next = sample_trajectory(problem, mu, R, phi, cfg.partition);
    refine_between(problem, mu, R, cfg.partition, prev, next, 0, cfg.refinement_cap,
                   traj.samples);
    traj.samples.push_back(next);
    prev = std::move(next);
  }
  const double mismatch =
      std::abs(wrap_pi(traj.samples.back().angle - traj.samples.front().angle));
  traj.closed = mismatch < 1e-9;
  return traj;
}

std::array<double, 3> transition_widths(const ExperimentConfig& cfg, double R,
                                        double threshold) {
  cfg.validate();
  return transition_widths(prepare_problem(cfg), cfg, R, threshold);
}

std::array<double, 3> transition_widths(const Problem& problem, const ExperimentConfig& cfg,
                                        double R, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("vertex threshold must lie in (0, 1)");
  }
  const MuProfile mu = cfg.mu_profile();
  std::array<double, 3> widths{};
  for (int j = 0; j < 3; ++j) {
    const auto at_center = sample_trajectory(problem, mu, R, problem.angles[j], cfg.partition);
    if (at_center.nerve[j] < threshold) {
      throw NotNearInfinityError("no vertex zone around critical angle " + std::to_string(j + 1) +
                                 " at R = " + std::to_string(R));
    }
    const double right = zone_extent(problem, mu, R, cfg.partition, j, +1.0, threshold,
                                     cfg.width_resolution);
    const double left = zone_extent(problem, mu, R, cfg.partition, j, -1.0, threshold,
                                    cfg.width_resolution);
    widths[j] = left + right;
  }
  return widths;
}

std::array<double, 3> guard_bands(const Problem& problem, const ExperimentConfig& cfg) {
  std::array<double, 3> guards{};
  if (cfg.guard_band >= 0.0) {
    guards.fill(cfg.guard_band);
    return guards;
  }
  const double r_min = *std::min_element(cfg.R_values.begin(), cfg.R_values.end());
  for (int j = 0; j < 3; ++j) {
    // Near phi_j the two other traces differ in log-magnitude by about
    // sqrt(R) |side_j| |phi - phi_j|.
    const double estimate = 1.0 / (std::sqrt(r_min) * std::abs(problem.triangle.side(j)));
    // Arcs I_{j+1} and I_{j+2} both end at phi_j.
    const double shortest = std::min(problem.arcs[(j + 1) % 3].length(),
                                     problem.arcs[(j + 2) % 3].length());
    guards[j] = std::min(10.0 * estimate, 0.25 * shortest);
  }
  return guards;
}

ArcEdgeCheck check_arc_edges(const Problem& problem, const ExperimentConfig& cfg, double R,
                             const Trajectory& traj, const std::array<double, 3>& guards) {
  auto guarded = [&](double phi) {
    for (int j = 0; j < 3; ++j) {
      if (circular_distance(phi, problem.angles[j]) <= guards[j]) return false;
    }
    return true;
  };

  ArcEdgeCheck check;
  for (const auto& s : traj.samples) {
    if (!guarded(s.phi)) continue;
    const int arc = problem.arcs.arc_index(s.phi);
    if (arc < 0) continue;
    ++check.guarded_samples;
    if (!s.nerve.on_edge(NerveComplex::edge_opposite(arc))) ++check.mismatches;
  }

  const MuProfile mu = cfg.mu_profile();
  check.min_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.samples; ++k) {
    const double phi = kTwoPi * k / cfg.samples;
    if (!guarded(phi) || problem.arcs.arc_index(phi) < 0) continue;
    const auto p = projective_normalize(trace_coordinates(R, phi, problem.triangle, mu));
    std::array<double, 3> ell{p.ell[1], p.ell[2], p.ell[3]};
    std::sort(ell.begin(), ell.end());
    check.min_gap = std::min(check.min_gap, ell[2] - ell[1]);
  }
  return check;
}

// ---------------------------------------------------------------------------
// Verification

std::optional<double> VerificationReport::smallest_passing_R() const {
  std::optional<double> best;
  for (const auto& run : runs) {
    if (run.mismatches == 0 && std::abs(run.winding) == 1) {
      if (!best || run.R < *best) best = run.R;
    }
  }
  return best;
}

VerificationReport run_verification(const ExperimentConfig& cfg) {
  cfg.validate();
  const Problem problem = prepare_problem(cfg);

  VerificationReport report;
  report.t = cfg.t;
  report.guard_bands = guard_bands(problem, cfg);

  for (double R : cfg.R_values) {
    const auto started = std::chrono::steady_clock::now();
    RunReport run;
    run.R = R;
    run.angles = problem.angles;
    run.arcs = problem.arcs;

    const Trajectory traj = run_trajectory(problem, cfg, R);
    run.trajectory_samples = static_cast<int>(traj.samples.size());
    run.winding = winding_number(traj);

    const ArcEdgeCheck check = check_arc_edges(problem, cfg, R, traj, report.guard_bands);
    run.guarded_samples = check.guarded_samples;
    run.mismatches = check.mismatches;
    run.min_margin = check.min_gap;

    try {
      run.transition_widths = transition_widths(problem, cfg, R, cfg.vertex_threshold);
    } catch (const NotNearInfinityError&) {
      run.transition_widths.fill(std::numeric_limits<double>::quiet_NaN());
    }

    if (cfg.record_timing) {
      run.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - started)
                           .count();
    }
    report.runs.push_back(run);
  }
  return report;
}

void assert_theorem(const VerificationReport& report) {
  const bool banded = std::any_of(report.guard_bands.begin(), report.guard_bands.end(),
                                  [](double g) { return g > 0.0; });
  std::ostringstream problems;
  for (const auto& run : report.runs) {
    if (run.mismatches > 0 && banded) {
      problems << "R = " << run.R << ": " << run.mismatches
               << " guarded samples off their predicted nerve edge; ";
    }
    if (std::abs(run.winding) != 1) {
      problems << "R = " << run.R << ": winding " << run.winding << " is not a generator; ";
    }
    if (run.winding != report.runs.front().winding) {
      problems << "R = " << run.R << ": winding differs from R = " << report.runs.front().R
               << "; ";
    }
  }
  const std::string msg = problems.str();
  if (!msg.empty()) throw TheoremViolationError(msg);
}

VerificationReport verify_theorem(const ExperimentConfig& cfg) {
  VerificationReport report = run_verification(cfg);
  assert_theorem(report);
  return report;
}

}  // namespace pwcheck
